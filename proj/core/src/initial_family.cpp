#include "threebody/initial_family.hpp"

#include "threebody/format.hpp"

namespace threebody {

std::string describe(const ThetaSolution<double>& sol) {
    struct Visitor {
        std::string operator()(theta_solution::All) const { return "all"; }
        std::string operator()(theta_solution::None) const { return "none"; }
        std::string operator()(theta_solution::CosThetaZero) const { return "cos(theta)=0"; }
        std::string operator()(const theta_solution::Cos2Theta<double>& c) const {
            return "cos(2theta)=" + format_real(c.value);
        }
    };
    return std::visit(Visitor{}, sol);
}

}  // namespace threebody

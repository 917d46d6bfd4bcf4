#include "threebody/jet.hpp"

#include <span>

#include <json.hpp>

#include "threebody/consistency_tables.hpp"
#include "threebody/format.hpp"

namespace threebody {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

HighPrec homogeneous(std::span<const std::int64_t> c, const HighPrec& a, const HighPrec& b) {
    const std::size_t deg = c.size() - 1;
    HighPrec acc(0);
    for (std::size_t k = 0; k <= deg; ++k) {
        acc += HighPrec(c[k]) * pow(a, static_cast<int>(deg - k)) * pow(b, static_cast<int>(k));
    }
    return acc;
}

HighPrec univariate(std::span<const std::int64_t> c, const HighPrec& x) {
    HighPrec acc(0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + HighPrec(c[k]);
    return acc;
}

}  // namespace

HighPrec f4_poly(const HighPrec& x, const HighPrec& y) {
    HighPrec acc(0);
    for (const auto& t : tables::kF4) acc += HighPrec(t.coeff) * pow(x, t.x_deg) * pow(y, t.y_deg);
    return acc;
}

HighPrec f6_poly(const HighPrec& x, const HighPrec& y) {
    HighPrec acc(0);
    for (const auto& row : tables::kF6) {
        acc += HighPrec(row.factor) * pow(x, row.x_deg) * univariate(row.y, y);
    }
    return acc;
}

HighPrec f4_closed(const HighPrec& alpha) {
    if (alpha == 2) throw AlphaTwoSingular();
    const HighPrec y = pow(HighPrec(2), alpha);
    return (y + 2) * f4_poly(alpha, y) / (8 * (alpha - 2));
}

HighPrec f6_closed(const HighPrec& alpha) {
    if (alpha == 2) throw AlphaTwoSingular();
    const HighPrec y = pow(HighPrec(2), alpha);
    return (y + 2) * f6_poly(alpha, y) / (32 * (alpha - 2) * (alpha - 2));
}

HighPrec d2_equal_mass_closed(const HighPrec& alpha, const HighPrec& theta) {
    const HighPrec y = pow(HighPrec(2), alpha);
    return (2 + y) * (3 * (alpha - 2) * cos(2 * theta) - (2 + y - 3 * alpha)) / 2;
}

HighPrec newtonian_p0(const HighPrec& m1, const HighPrec& m2) {
    return homogeneous(tables::kP0, m1, m2);
}
HighPrec newtonian_p1(const HighPrec& m1, const HighPrec& m2) {
    return homogeneous(tables::kP1, m1, m2);
}
HighPrec newtonian_omega(const HighPrec& m1, const HighPrec& m2) {
    return homogeneous(tables::kOmega, m1, m2);
}
HighPrec newtonian_q(const HighPrec& m1, const HighPrec& m2) {
    const HighPrec d = m1 - m2;
    const HighPrec tri = m1 * m1 + m1 * m2 + m2 * m2;
    const HighPrec prod = m1 * m2;
    const HighPrec root = sqrt(prod * newtonian_omega(m1, m2));
    return 128 * pow(d, 4) * pow(tri, 3) * prod * prod *
           (homogeneous(tables::kQuartic, m1, m2) * prod + root);
}

std::map<int, HighPrec> newtonian_closed(const NewtonianBranch& branch) {
    std::map<int, HighPrec> out;
    if (const auto* ep = std::get_if<EqualPair>(&branch)) {
        const auto& m = ep->m;
        const auto& mu = ep->mu;
        out[2] = -pow(m, 3) * (1 + 4 * mu) * (5 + 6 * mu + 6 * (2 + mu) * ep->cos2theta) / 8;
        out[4] = -pow(m, 4) * (1 + 4 * mu) * univariate(tables::kEqualPairD4, mu) / (384 * mu);
        out[6] = -pow(m, 5) / (6144 * mu * mu) * univariate(tables::kEqualPairD6, mu);
    } else {
        const auto& up = std::get<UnequalPair>(branch);
        const auto q = newtonian_m3_quadratic(up.m1, up.m2);
        const HighPrec s = up.m1 + up.m2;
        out[2] = -s * (q.c2 * up.m3 * up.m3 - q.c1 * up.m3 - q.c0) /
                 (16 * pow(up.m1, 3) * pow(up.m2, 3));
        const HighPrec root = sqrt(up.m1 * up.m2 * newtonian_omega(up.m1, up.m2));
        out[4] = -3 * s * s *
                 (newtonian_p0(up.m1, up.m2) + newtonian_p1(up.m1, up.m2) * root) /
                 newtonian_q(up.m1, up.m2);
    }
    return out;
}

HighPrec newtonian_d1_closed(const Masses<HighPrec>& m, const HighPrec& theta) {
    const auto& m1 = m.m1();
    const auto& m2 = m.m2();
    const HighPrec u = newtonian_u(m);
    return -(pow(m1, 3) - pow(m2, 3)) * (m1 + m2) * (m1 + m2) * m.total() * u * cos(theta) /
           (4 * m1 * m1 * m2 * m2);
}

InitialFamily<HighPrec> newtonian_family(const NewtonianBranch& branch) {
    const auto law = PotentialLaw::power(-1.0);
    if (const auto* ep = std::get_if<EqualPair>(&branch)) {
        return build(Masses<HighPrec>(ep->m, ep->m, ep->mu * ep->m), law,
                     theta_from_cos2(ep->cos2theta));
    }
    const auto& up = std::get<UnequalPair>(branch);
    return build(Masses<HighPrec>(up.m1, up.m2, up.m3), law, pi_v<HighPrec>() / 2);
}

CrossCheckVerdict cross_check(const DerivativeReport<HighPrec>& report,
                              const std::map<int, HighPrec>& closed, double tol) {
    CrossCheckVerdict verdict;
    const HighPrec scale = report.scale();
    for (const auto& [order, value] : closed) {
        if (order < 0 || static_cast<std::size_t>(order) >= report.values.size()) {
            throw InvalidArgument("closed form order " + std::to_string(order) +
                                  " exceeds report order");
        }
        const HighPrec& jet = report.values[static_cast<std::size_t>(order)];
        HighPrec denom = scale;
        if (abs(jet) > denom) denom = abs(jet);
        if (abs(value) > denom) denom = abs(value);
        const HighPrec rel = abs(jet - value) / denom;
        verdict.entries.push_back({order, jet, value, rel});
        if (!(rel < HighPrec(tol))) verdict.pass = false;
    }
    return verdict;
}

std::string law_name(const PotentialLaw& law) { return law.is_log() ? "log" : "power"; }

std::string to_json(const DerivativeReport<HighPrec>& report, int indent) {
    nlohmann::ordered_json j;
    j["law"] = law_name(report.law);
    j["alpha"] = format_real(report.law.alpha());
    j["masses"] = {format_real(report.masses[0]), format_real(report.masses[1]),
                   format_real(report.masses[2])};
    j["theta"] = report.theta ? nlohmann::ordered_json(format_real(*report.theta))
                              : nlohmann::ordered_json(nullptr);
    j["order"] = report.order;
    auto values = nlohmann::ordered_json::array();
    auto flags = nlohmann::ordered_json::array();
    const auto zf = report.zero_flags();
    for (std::size_t n = 0; n < report.values.size(); ++n) {
        values.push_back(format_real(report.values[n]));
        flags.push_back(static_cast<bool>(zf[n]));
    }
    j["values"] = values;
    j["zero_flags"] = flags;
    return j.dump(indent) + "\n";
}

}  // namespace threebody

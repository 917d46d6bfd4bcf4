#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "threebody/integrator.hpp"

namespace threebody::cli {

enum class Command {
    Simulate,
    Jets,
    Theta,
    ClosedForm,
    AppendixVerify,
    ChoreoScan,
    ChoreoRefine,
    RepulsiveCheck
};

std::string to_string(Command c);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int usage = 2;
inline constexpr int validation = 3;
inline constexpr int numeric = 4;
}  // namespace exit_code

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunSpec {
    Command command = Command::Simulate;
    double alpha = -1;
    std::optional<double> theta;
    std::array<double, 3> masses{1, 1, 1};
    int order = 6;
    double t_end = 10;
    std::optional<std::string> out;
    std::optional<std::string> trajectory_out;  // choreo-refine: one-period CSV
    bool compare = false;
    bool timing = false;
    int digits = 40;
    IntegratorConfig integrator;
    // choreography search
    double theta_lo = 0;
    double theta_hi = 1.5707963267948966;
    std::size_t steps = 200;
    std::optional<double> period;
    // repulsive-check
    std::size_t samples = 100;
    std::uint64_t seed = 1;

    PotentialLaw law() const { return PotentialLaw::from_alpha(alpha); }
    bool equal_masses() const { return masses[0] == masses[1] && masses[1] == masses[2]; }
};

/// Throws UsageError for malformed input and InvalidArgument for inconsistent parameters.
/// args excludes the program name.
RunSpec parse_args(const std::vector<std::string>& args);

/// Executes a validated spec; returns the process exit code.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse_args + run with errors mapped to exit codes.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace threebody::cli

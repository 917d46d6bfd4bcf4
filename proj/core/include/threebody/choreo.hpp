#pragma once

// Shooting search for choreographies in the equal-mass family: a state at
// T/3 that is a cyclic relabelling of the initial state.

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "threebody/integrator.hpp"

namespace threebody::choreo {

inline constexpr double kSentinel = std::numeric_limits<double>::infinity();
/// Residuals below this are indistinguishable from integration error.
inline constexpr double kNoiseFloor = 1e-10;

/// sigma with r_i(T/3) = r_sigma(i)(0).
using Permutation = std::array<int, 3>;
inline constexpr std::array<Permutation, 2> kCyclic{{{1, 2, 0}, {2, 0, 1}}};

struct Config {
    PotentialLaw law = PotentialLaw::power(-2);
    IntegratorConfig integrator{};
    double horizon = 5.0;            // integration span used to bracket the period
    double return_sample = 1e-3;     // grid for locating near-returns
    double window = 0.25;            // relative half-width of the period window
    std::size_t period_grid = 48;
};

/// Norm of the position and velocity mismatch; kSentinel if the run fails.
double residual(double theta, double T, const Permutation& sigma, const Config& cfg);

struct Residual {
    double value = kSentinel;
    Permutation sigma = kCyclic[0];
};
/// Minimum over both cyclic permutations.
Residual residual(double theta, double T, const Config& cfg);
/// Same, read from an existing trajectory's dense output.
Residual residual(const Trajectory& traj, double T);

/// Candidate periods from the first two near-returns of any body to the origin.
std::vector<double> period_candidates(const Trajectory& traj, const Config& cfg);

struct ScanPoint {
    double theta;
    double period;    // NaN when no candidate was found
    double residual;  // kSentinel on failure
};

struct ThetaScan {
    std::vector<ScanPoint> points;  // ascending in theta
    /// Indices of local minima with finite residual, best first.
    std::vector<std::size_t> minima() const;
    std::string to_csv() const;
};

/// steps points on [lo, hi]; an empty range (hi < lo) yields an empty scan.
ThetaScan scan(double lo, double hi, std::size_t steps, const Config& cfg);
ScanPoint scan_point(double theta, const Config& cfg);

struct Refined {
    double theta;
    double period;
    double residual;
    double initial_residual;
    Permutation sigma;
    int iterations;
};

/// Nelder-Mead on (theta, T); stops when the simplex is smaller than 1e-12.
/// Throws NoProgress if the seed is infeasible, or cannot be improved and is above kNoiseFloor.
Refined refine(double theta0, double T0, const Config& cfg, int max_iterations = 2000);

/// {theta, -theta, pi - theta, pi + theta} reduced to [0, 2 pi).
std::array<double, 4> fourfold(double theta);

/// Maps the orbit of fourfold(theta)[k] back onto the orbit of theta.
Vec2<double> undo_symmetry(int k, const Vec2<double>& p);

/// Symmetric Hausdorff distance between two sampled closed curves, point to polyline.
double hausdorff(const std::vector<Vec2<double>>& a, const std::vector<Vec2<double>>& b);

std::string to_json(const Refined& r, const std::vector<Refined>& fourfold, int indent = 2);

}  // namespace threebody::choreo

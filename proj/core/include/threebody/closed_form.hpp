#pragma once

// Exact solutions of the equal-mass family for alpha = 2 (any theta) and
// alpha = 4 (theta = 0), and comparisons of integrated runs against them.

#include <optional>

#include "threebody/integrator.hpp"

namespace threebody {

PlanarState<double> closed_form_alpha2(double theta, double t);
PlanarState<double> closed_form_alpha4(double t);

/// Bodies 1 and 2 meet at t = pi / (2 sqrt 3).
double alpha2_collision_time();
/// Bodies 1 and 3 meet at t = pi / 18.
double alpha4_collision_time();

/// max_i | -(9/2) x_i sum_j x_j^2 - sum_j (x_j - x_i)^3 | along the alpha = 4 solution.
double alpha4_reduced_residual(double t);

struct ClosedFormComparison {
    Trajectory trajectory;
    double max_position_error = 0;  // over samples with t <= compare_until
    double max_velocity_error = 0;
    double max_inertia_dev = 0;     // |I - 1| over all samples
    double compare_until = 0;
    std::optional<CollisionEvent> collision;
};

/// Integrates the family at alpha = 2 and compares on [0, compare_until].
ClosedFormComparison compare_alpha2(double theta, const IntegratorConfig& cfg, double t_end,
                                    double compare_until);
/// Same for alpha = 4, theta = 0.
ClosedFormComparison compare_alpha4(const IntegratorConfig& cfg, double t_end,
                                    double compare_until);

}  // namespace threebody

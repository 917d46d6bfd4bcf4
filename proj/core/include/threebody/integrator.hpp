#pragma once

// Adaptive Dormand-Prince 5(4) integration of the planar three-body problem
// with dense output, collision location and per-step diagnostics.

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "threebody/dynamics.hpp"
#include "threebody/initial_family.hpp"
#include "threebody/types.hpp"

namespace threebody {

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = std::numeric_limits<double>::infinity();
    double collision_radius = 1e-8;
    double max_time = std::numeric_limits<double>::infinity();
    /// Steps are clipped so that every multiple of output_step is hit exactly.
    std::optional<double> output_step;
    /// Step in long double; samples and dense output are still stored as double.
    bool extended_precision = false;
    std::size_t max_steps = 50'000'000;

    /// Throws InvalidArgument on non-positive tolerances, radius or step bounds.
    void validate() const;
};

struct CollisionEvent {
    int first;   // 0-based body indices, first < second
    int second;
    double time;
    double min_distance;
};

enum class Termination { Completed, Collision, StepSizeUnderflow, MaxSteps };

std::string to_string(Termination t);

struct Sample {
    PlanarState<double> state;
    Diagnostics<double> diag;
};

/// Quartic interpolant of one accepted step: y(t0 + s h) for s in [0, 1].
struct DenseSegment {
    double t0;
    double h;
    std::array<std::array<double, 12>, 5> c;

    double t1() const { return t0 + h; }
    bool contains(double t) const;
    PlanarState<double> eval(double t) const;
};

struct Trajectory {
    Masses<double> masses;
    PotentialLaw law;
    std::vector<Sample> samples;
    std::vector<CollisionEvent> events;
    Termination termination = Termination::Completed;
    std::vector<DenseSegment> segments;

    double t_begin() const { return samples.front().state.t; }
    double t_final() const { return samples.back().state.t; }
    const PlanarState<double>& last_good() const { return samples.back().state; }
    /// Dense-output state; throws InvalidArgument outside the covered interval.
    PlanarState<double> at(double t) const;
};

Trajectory integrate(const PlanarState<double>& s0, const Masses<double>& m,
                     const PotentialLaw& law, const IntegratorConfig& cfg, double t_end);
Trajectory integrate(const InitialFamily<double>& family, const IntegratorConfig& cfg,
                     double t_end);

/// Pairwise-distance minima below the collision radius, refined on the dense output.
std::vector<CollisionEvent> detect_collisions(const Trajectory& traj, const IntegratorConfig& cfg);

struct InertiaVariation {
    double max_abs_dev = 0;
    double relative_dev = 0;
};
InertiaVariation inertia_variation(const Trajectory& traj);
/// Same, restricted to samples with t in [t0, t1].
InertiaVariation inertia_variation(const Trajectory& traj, double t0, double t1);

struct ConservationReport {
    double energy_drift = 0;      // max |E(t) - E(0)| / max(1, |E(0)|)
    double max_angular_momentum = 0;
};
ConservationReport conservation(const Trajectory& traj);

/// max over interior grid points of |(I(t+h) - 2I(t) + I(t-h))/h^2 - LJ(t)|.
/// Grid points that coincide with accepted samples use them; others use dense output.
double lj_residual(const Trajectory& traj, double h);

/// Trajectory CSV with an optional commented footer listing collision events.
std::string to_csv(const Trajectory& traj);

std::vector<Vec2<double>> orbit_trace(const Trajectory& traj, int body, double t0, double t1,
                                      std::size_t points);

}  // namespace threebody

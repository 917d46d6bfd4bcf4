#include "threebody/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace threebody {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

ClosedFormComparison compare(const InitialFamily<double>& fam, const IntegratorConfig& cfg,
                             double t_end, double compare_until, auto&& exact) {
    ClosedFormComparison out{integrate(fam, cfg, t_end), 0, 0, 0, compare_until, std::nullopt};
    for (const auto& s : out.trajectory.samples) {
        out.max_inertia_dev = std::max(out.max_inertia_dev, std::abs(s.diag.I - 1));
        if (s.state.t > compare_until) continue;
        const auto e = exact(s.state.t);
        for (int i = 0; i < 3; ++i) {
            out.max_position_error = std::max(out.max_position_error, norm(s.state.r[i] - e.r[i]));
            out.max_velocity_error = std::max(out.max_velocity_error, norm(s.state.v[i] - e.v[i]));
        }
    }
    if (!out.trajectory.events.empty()) out.collision = out.trajectory.events.front();
    return out;
}

}  // namespace

PlanarState<double> closed_form_alpha2(double theta, double t) {
    const double c = std::cos(kSqrt3 * t), s = std::sin(kSqrt3 * t);
    const Vec2<double> dir(std::cos(theta), std::sin(theta));
    const Vec2<double> r3 = (2 / kSqrt3 * s) * dir;
    const Vec2<double> v3 = (2 * c) * dir;
    PlanarState<double> st;
    st.t = t;
    st.r[0] = Vec2<double>(c, 0) - 0.5 * r3;
    st.r[1] = Vec2<double>(-c, 0) - 0.5 * r3;
    st.r[2] = r3;
    st.v[0] = Vec2<double>(-kSqrt3 * s, 0) - 0.5 * v3;
    st.v[1] = Vec2<double>(kSqrt3 * s, 0) - 0.5 * v3;
    st.v[2] = v3;
    return st;
}

PlanarState<double> closed_form_alpha4(double t) {
    constexpr double pi = std::numbers::pi;
    constexpr double phase[3] = {2 * pi / 3, -2 * pi / 3, 0};
    PlanarState<double> st;
    st.t = t;
    for (int i = 0; i < 3; ++i) {
        st.r[i] = Vec2<double>(2 / kSqrt3 * std::sin(3 * t + phase[i]), 0);
        st.v[i] = Vec2<double>(6 / kSqrt3 * std::cos(3 * t + phase[i]), 0);
    }
    return st;
}

double alpha2_collision_time() { return std::numbers::pi / (2 * kSqrt3); }
double alpha4_collision_time() { return std::numbers::pi / 18; }

double alpha4_reduced_residual(double t) {
    const auto s = closed_form_alpha4(t);
    double sq = 0;
    for (int j = 0; j < 3; ++j) sq += s.r[j].x * s.r[j].x;
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
        double cubes = 0;
        for (int j = 0; j < 3; ++j) {
            const double d = s.r[j].x - s.r[i].x;
            cubes += d * d * d;
        }
        worst = std::max(worst, std::abs(-4.5 * s.r[i].x * sq - cubes));
    }
    return worst;
}

ClosedFormComparison compare_alpha2(double theta, const IntegratorConfig& cfg, double t_end,
                                    double compare_until) {
    const auto fam = build(Masses<double>::equal(), PotentialLaw::power(2), theta);
    return compare(fam, cfg, t_end, compare_until,
                   [theta](double t) { return closed_form_alpha2(theta, t); });
}

ClosedFormComparison compare_alpha4(const IntegratorConfig& cfg, double t_end,
                                    double compare_until) {
    const auto fam = build(Masses<double>::equal(), PotentialLaw::power(4), 0.0);
    return compare(fam, cfg, t_end, compare_until, [](double t) { return closed_form_alpha4(t); });
}

}  // namespace threebody

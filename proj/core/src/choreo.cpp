#include "threebody/choreo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <json.hpp>

#include "threebody/format.hpp"

namespace threebody::choreo {

namespace {

double mismatch(const PlanarState<double>& s, const PlanarState<double>& s0, const Permutation& sigma) {
    double acc = 0;
    for (int i = 0; i < 3; ++i) {
        acc += norm2(s.r[i] - s0.r[sigma[i]]) + norm2(s.v[i] - s0.v[sigma[i]]);
    }
    return std::sqrt(acc);
}

InitialFamily<double> family(double theta, const Config& cfg) {
    return build(Masses<double>::equal(), cfg.law, theta);
}

double origin_distance(const PlanarState<double>& s) {
    return std::min({norm(s.r[0]), norm(s.r[1]), norm(s.r[2])});
}

}  // namespace

double residual(double theta, double T, const Permutation& sigma, const Config& cfg) {
    if (!(T > 0) || !std::isfinite(theta)) return kSentinel;
    const auto fam = family(theta, cfg);
    try {
        const auto traj = integrate(fam, cfg.integrator, T / 3);
        if (traj.termination != Termination::Completed) return kSentinel;
        const double r = mismatch(traj.last_good(), fam.state, sigma);
        return std::isfinite(r) ? r : kSentinel;
    } catch (const Error&) {
        return kSentinel;
    }
}

Residual residual(double theta, double T, const Config& cfg) {
    if (!(T > 0) || !std::isfinite(theta)) return {};
    const auto fam = family(theta, cfg);
    try {
        const auto traj = integrate(fam, cfg.integrator, T / 3);
        if (traj.termination != Termination::Completed) return {};
        Residual best;
        for (const auto& sigma : kCyclic) {
            const double r = mismatch(traj.last_good(), fam.state, sigma);
            if (std::isfinite(r) && r < best.value) best = {r, sigma};
        }
        return best;
    } catch (const Error&) {
        return {};
    }
}

Residual residual(const Trajectory& traj, double T) {
    Residual best;
    const double t = T / 3;
    if (!(T > 0) || t > traj.t_final()) return best;
    const auto s = traj.at(t);
    const auto& s0 = traj.samples.front().state;
    for (const auto& sigma : kCyclic) {
        const double r = mismatch(s, s0, sigma);
        if (std::isfinite(r) && r < best.value) best = {r, sigma};
    }
    return best;
}

std::vector<double> period_candidates(const Trajectory& traj, const Config& cfg) {
    std::vector<double> out;
    const double t_end = traj.t_final();
    const double dt = cfg.return_sample;
    std::vector<double> minima;
    double prev2 = origin_distance(traj.at(0.0));
    double prev1 = origin_distance(traj.at(std::min(dt, t_end)));
    for (double t = 2 * dt; t <= t_end && minima.size() < 2; t += dt) {
        const double cur = origin_distance(traj.at(t));
        if (prev1 < prev2 && prev1 <= cur) minima.push_back(t - dt);
        prev2 = prev1;
        prev1 = cur;
    }
    // some body crosses the origin every T/6
    if (!minima.empty()) out.push_back(6 * minima[0]);
    if (minima.size() > 1) out.push_back(3 * minima[1]);
    return out;
}

ScanPoint scan_point(double theta, const Config& cfg) {
    ScanPoint p{theta, std::numeric_limits<double>::quiet_NaN(), kSentinel};
    Trajectory traj = [&] {
        try {
            return integrate(family(theta, cfg), cfg.integrator, cfg.horizon);
        } catch (const Error&) {
            return Trajectory{Masses<double>::equal(), cfg.law, {}, {}, Termination::Collision, {}};
        }
    }();
    if (traj.segments.empty()) return p;

    for (double Tc : period_candidates(traj, cfg)) {
        const double lo = Tc * (1 - cfg.window), hi = Tc * (1 + cfg.window);
        const std::size_t n = std::max<std::size_t>(cfg.period_grid, 3);
        double best_T = 0, best_r = kSentinel;
        for (std::size_t k = 0; k < n; ++k) {
            const double T = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
            const double r = residual(traj, T).value;
            if (r < best_r) {
                best_r = r;
                best_T = T;
            }
        }
        if (!std::isfinite(best_r)) continue;
        const double step = (hi - lo) / static_cast<double>(n - 1);
        const double a = std::max(lo, best_T - step), b = std::min(hi, best_T + step);
        const auto [T, r] = boost::math::tools::brent_find_minima(
            [&](double x) { return residual(traj, x).value; }, a, b, 40);
        const double rr = std::min(r, best_r);
        if (rr < p.residual) {
            p.residual = rr;
            p.period = r <= best_r ? T : best_T;
        }
    }
    return p;
}

ThetaScan scan(double lo, double hi, std::size_t steps, const Config& cfg) {
    ThetaScan out;
    if (hi < lo) return out;
    if (steps < 2) throw InvalidArgument("scan needs at least two points");
    out.points.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double th = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
        out.points.push_back(scan_point(th, cfg));
    }
    return out;
}

std::vector<std::size_t> ThetaScan::minima() const {
    std::vector<std::size_t> idx;
    const std::size_t n = points.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double r = points[k].residual;
        if (!std::isfinite(r)) continue;
        const bool left = k == 0 || !(points[k - 1].residual < r);
        const bool right = k + 1 == n || !(points[k + 1].residual < r);
        if (left && right) idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return points[a].residual < points[b].residual; });
    return idx;
}

std::string ThetaScan::to_csv() const {
    std::ostringstream os;
    os << "theta,period,residual\n";
    for (const auto& p : points) {
        os << format_real(p.theta) << ',' << format_real(p.period) << ',' << format_real(p.residual) << '\n';
    }
    return os.str();
}

Refined refine(double theta0, double T0, const Config& cfg, int max_iterations) {
    struct Vertex {
        double th, T, f;
    };
    auto eval = [&](double th, double T) {
        const double r = residual(th, T, cfg).value;
        return std::isfinite(r) ? r * r : kSentinel;
    };
    const double f0 = eval(theta0, T0);
    if (!std::isfinite(f0)) throw NoProgress("refine seed is infeasible");

    std::array<Vertex, 3> s{{{theta0, T0, f0},
                             {theta0 + 2e-3, T0, eval(theta0 + 2e-3, T0)},
                             {theta0, T0 + 1e-2, eval(theta0, T0 + 1e-2)}}};
    int it = 0;
    for (; it < max_iterations; ++it) {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        double size = 0;
        for (int k = 1; k < 3; ++k) {
            size = std::max({size, std::abs(s[k].th - s[0].th), std::abs(s[k].T - s[0].T)});
        }
        if (size < 1e-12) break;

        const double cth = 0.5 * (s[0].th + s[1].th), cT = 0.5 * (s[0].T + s[1].T);
        auto point = [&](double a) {
            const double th = cth + a * (s[2].th - cth), T = cT + a * (s[2].T - cT);
            return Vertex{th, T, eval(th, T)};
        };
        const Vertex r = point(-1);
        if (r.f < s[0].f) {
            const Vertex e = point(-2);
            s[2] = e.f < r.f ? e : r;
        } else if (r.f < s[1].f) {
            s[2] = r;
        } else {
            const Vertex c = r.f < s[2].f ? point(-0.5) : point(0.5);
            if (c.f < std::min(r.f, s[2].f)) {
                s[2] = c;
            } else {
                for (int k = 1; k < 3; ++k) {
                    s[k].th = s[0].th + 0.5 * (s[k].th - s[0].th);
                    s[k].T = s[0].T + 0.5 * (s[k].T - s[0].T);
                    s[k].f = eval(s[k].th, s[k].T);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const auto best = residual(s[0].th, s[0].T, cfg);
    const double r0 = std::sqrt(f0);
    if (!(best.value < r0)) {
        // a seed already at the integration noise floor is returned as is
        if (!(r0 < kNoiseFloor)) throw NoProgress("refine could not reduce the residual");
        const auto seed = residual(theta0, T0, cfg);
        return Refined{theta0, T0, seed.value, r0, seed.sigma, it};
    }
    return Refined{s[0].th, s[0].T, best.value, r0, best.sigma, it};
}

std::array<double, 4> fourfold(double theta) {
    constexpr double pi = std::numbers::pi;
    auto wrap = [](double x) {
        double y = std::fmod(x, 2 * pi);
        if (y < 0) y += 2 * pi;
        return y;
    };
    return {wrap(theta), wrap(-theta), wrap(pi - theta), wrap(pi + theta)};
}

Vec2<double> undo_symmetry(int k, const Vec2<double>& p) {
    switch (k) {
        case 1: return {p.x, -p.y};
        case 2: return {-p.x, p.y};
        default: return p;  // pi + theta runs the same orbit backwards
    }
}

namespace {

double point_polyline(const Vec2<double>& p, const std::vector<Vec2<double>>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k) {
        const auto& a0 = b[k];
        const auto& a1 = b[(k + 1) % b.size()];
        const Vec2<double> d = a1 - a0;
        const double len2 = norm2(d);
        double s = len2 > 0 ? dot(p - a0, d) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        best = std::min(best, norm(p - (a0 + s * d)));
    }
    return best;
}

}  // namespace

double hausdorff(const std::vector<Vec2<double>>& a, const std::vector<Vec2<double>>& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("hausdorff needs non-empty point sets");
    double h = 0;
    for (const auto& p : a) h = std::max(h, point_polyline(p, b));
    for (const auto& p : b) h = std::max(h, point_polyline(p, a));
    return h;
}

namespace {

nlohmann::ordered_json refined_json(const Refined& r) {
    nlohmann::ordered_json j;
    j["theta"] = format_real(r.theta);
    j["period"] = format_real(r.period);
    j["residual"] = format_real(r.residual);
    j["permutation"] = {r.sigma[0] + 1, r.sigma[1] + 1, r.sigma[2] + 1};
    return j;
}

}  // namespace

std::string to_json(const Refined& r, const std::vector<Refined>& four, int indent) {
    auto j = refined_json(r);
    j["initial_residual"] = format_real(r.initial_residual);
    j["iterations"] = r.iterations;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : four) arr.push_back(refined_json(f));
    j["fourfold"] = arr;
    return j.dump(indent) + "\n";
}

}  // namespace threebody::choreo

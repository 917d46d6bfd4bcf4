#include "threebody/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "threebody/format.hpp"

namespace threebody {

namespace {

// Dormand-Prince 5(4) tableau, FSAL.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

template <class R>
using Vec = std::array<R, 12>;

template <class R>
PlanarState<R> unpack(R t, const Vec<R>& y) {
    PlanarState<R> s;
    s.t = t;
    for (int i = 0; i < 3; ++i) {
        s.r[i] = Vec2<R>(y[2 * i], y[2 * i + 1]);
        s.v[i] = Vec2<R>(y[6 + 2 * i], y[6 + 2 * i + 1]);
    }
    return s;
}

template <class R>
Vec<R> pack(const PlanarState<R>& s) {
    Vec<R> y{};
    for (int i = 0; i < 3; ++i) {
        y[2 * i] = s.r[i].x;
        y[2 * i + 1] = s.r[i].y;
        y[6 + 2 * i] = s.v[i].x;
        y[6 + 2 * i + 1] = s.v[i].y;
    }
    return y;
}

template <class R>
struct System {
    Masses<R> m;
    PotentialLaw law;

    Vec<R> operator()(const Vec<R>& y) const {
        const auto s = unpack(R(0), y);
        const auto f = forces(s, m, law);
        Vec<R> dy{};
        for (int i = 0; i < 3; ++i) {
            dy[2 * i] = y[6 + 2 * i];
            dy[2 * i + 1] = y[6 + 2 * i + 1];
            dy[6 + 2 * i] = f[i].x / m[i];
            dy[6 + 2 * i + 1] = f[i].y / m[i];
        }
        return dy;
    }
};

template <class R>
Vec<R> combine(const Vec<R>& y, R h, std::initializer_list<std::pair<double, const Vec<R>*>> terms) {
    Vec<R> out = y;
    for (const auto& [coef, k] : terms) {
        if (coef == 0) continue;
        for (int i = 0; i < 12; ++i) out[i] += h * R(coef) * (*k)[i];
    }
    return out;
}

template <class R>
R err_norm(const Vec<R>& y, const Vec<R>& yn, const Vec<R>& e, const IntegratorConfig& cfg) {
    using std::abs;
    using std::max;
    using std::sqrt;
    R acc(0);
    for (int i = 0; i < 12; ++i) {
        const R sc = R(cfg.abs_tol) + R(cfg.rel_tol) * max(abs(y[i]), abs(yn[i]));
        const R q = e[i] / sc;
        acc += q * q;
    }
    return sqrt(acc / 12);
}

template <class R>
Diagnostics<double> diag_double(const PlanarState<R>& s, const Masses<R>& m,
                                const PotentialLaw& law) {
    const auto d = diagnostics(s, m, law);
    return Diagnostics<double>{static_cast<double>(d.I), static_cast<double>(d.K),
                               static_cast<double>(d.V), static_cast<double>(d.E),
                               static_cast<double>(d.L)};
}

double pair_rate(const PlanarState<double>& s, int i, int j) {
    return dot(s.r[i] - s.r[j], s.v[i] - s.v[j]);
}

double pair_distance(const PlanarState<double>& s, int i, int j) {
    return norm(s.r[i] - s.r[j]);
}

/// Earliest event inside one step, if any.
std::optional<CollisionEvent> segment_event(const DenseSegment& seg, const IntegratorConfig& cfg) {
    const auto s0 = seg.eval(seg.t0);
    const auto s1 = seg.eval(seg.t1());
    std::optional<CollisionEvent> best;
    const double dir = seg.h > 0 ? 1.0 : -1.0;
    for (auto [i, j] : kPairs) {
        const double g0 = pair_rate(s0, i, j) * dir;
        const double g1 = pair_rate(s1, i, j) * dir;
        std::optional<CollisionEvent> ev;
        if (g0 < 0 && g1 >= 0) {
            // distance has an interior minimum; bisect the rate
            double lo = seg.t0, hi = seg.t1();
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                if (pair_rate(seg.eval(mid), i, j) * dir < 0) lo = mid;
                else hi = mid;
                if (std::abs(hi - lo) < 1e-14 * std::max(1.0, std::abs(hi))) break;
            }
            const double tm = 0.5 * (lo + hi);
            const double dm = pair_distance(seg.eval(tm), i, j);
            if (dm <= cfg.collision_radius) ev = CollisionEvent{i, j, tm, dm};
        }
        if (!ev) {
            const double d_end = pair_distance(s1, i, j);
            if (d_end <= cfg.collision_radius) ev = CollisionEvent{i, j, seg.t1(), d_end};
        }
        if (ev && (!best || (ev->time - best->time) * dir < 0)) best = ev;
    }
    return best;
}

template <class R>
Trajectory integrate_impl(const PlanarState<double>& s0, const Masses<double>& m,
                          const PotentialLaw& law, const IntegratorConfig& cfg, double t_end) {
    using std::abs;
    using std::max;
    using std::min;
    using std::pow;

    cfg.validate();
    Trajectory traj{m, law, {}, {}, Termination::Completed, {}};

    const Masses<R> mr(m);
    const System<R> f{mr, law};
    const PlanarState<R> sr(s0);
    const double t0 = s0.t;
    if (abs(t_end - t0) > cfg.max_time) t_end = t0 + (t_end > t0 ? cfg.max_time : -cfg.max_time);

    Vec<R> y = pack(sr);
    traj.samples.push_back({s0, diag_double(sr, mr, law)});
    if (t_end == t0) return traj;

    const double dir = t_end > t0 ? 1.0 : -1.0;
    R t(t0);
    Vec<R> k1 = f(y);

    // Starting step (Hairer-Norsett-Wanner).
    R h;
    {
        R dy0(0), df0(0);
        for (int i = 0; i < 12; ++i) {
            const R sc = R(cfg.abs_tol) + R(cfg.rel_tol) * abs(y[i]);
            dy0 += (y[i] / sc) * (y[i] / sc);
            df0 += (k1[i] / sc) * (k1[i] / sc);
        }
        using std::sqrt;
        dy0 = sqrt(dy0 / 12);
        df0 = sqrt(df0 / 12);
        R h0 = (dy0 < R(1e-5) || df0 < R(1e-5)) ? R(1e-6) : R(0.01) * dy0 / df0;
        h0 = min(h0, R(abs(t_end - t0)));
        Vec<R> y1 = y;
        for (int i = 0; i < 12; ++i) y1[i] += R(dir) * h0 * k1[i];
        const Vec<R> f1 = f(y1);
        R d2(0);
        for (int i = 0; i < 12; ++i) {
            const R sc = R(cfg.abs_tol) + R(cfg.rel_tol) * abs(y[i]);
            d2 += ((f1[i] - k1[i]) / sc) * ((f1[i] - k1[i]) / sc);
        }
        d2 = sqrt(d2 / 12) / h0;
        const R dm = max(df0, d2);
        const R h1 = dm <= R(1e-15) ? max(R(1e-6), h0 * R(1e-3)) : pow(R(0.01) / dm, R(0.2));
        h = min(R(100) * h0, h1);
    }

    bool rejected_last = false;
    std::size_t steps = 0;
    std::size_t grid_index = 0;
    for (;;) {
        if (++steps > cfg.max_steps) {
            traj.termination = Termination::MaxSteps;
            return traj;
        }
        const double tc = static_cast<double>(t);
        // distance to the next landing point
        double target = t_end;
        if (cfg.output_step) {
            const double dt = *cfg.output_step;
            while (static_cast<double>(grid_index + 1) * dt <= abs(tc - t0) * (1 + 1e-15)) {
                ++grid_index;
            }
            const double tg = t0 + dir * static_cast<double>(grid_index + 1) * dt;
            if ((tg - t_end) * dir < 0) target = tg;
        }
        const R room = abs(R(target) - t);
        R hmax = min(room, R(cfg.max_step));
        bool landing = false;
        if (h >= hmax) {
            h = hmax;
            landing = hmax == room;
        } else if (h > room * R(0.5) && room > h) {
            // avoid a sliver step before the landing point
            h = room * R(0.5);
        }
        const R hmin = R(16) * std::numeric_limits<R>::epsilon() * max(R(1), abs(t));
        if (h < hmin) {
            traj.termination = Termination::StepSizeUnderflow;
            return traj;
        }

        const R hs = R(dir) * h;
        Vec<R> k2, k3, k4, k5, k6, k7, yn;
        try {
            k2 = f(combine<R>(y, hs, {{a21, &k1}}));
            k3 = f(combine<R>(y, hs, {{a31, &k1}, {a32, &k2}}));
            k4 = f(combine<R>(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            k5 = f(combine<R>(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            k6 = f(combine<R>(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            yn = combine<R>(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            k7 = f(yn);
        } catch (const CollisionSingularity&) {
            // a stage landed exactly on a singular configuration
            h *= R(0.5);
            rejected_last = true;
            continue;
        }

        Vec<R> e{};
        for (int i = 0; i < 12; ++i) {
            e[i] = hs * (R(e1) * k1[i] + R(e3) * k3[i] + R(e4) * k4[i] + R(e5) * k5[i] +
                         R(e6) * k6[i] + R(e7) * k7[i]);
        }
        R err = err_norm(y, yn, e, cfg);
        using std::isfinite;
        if (!isfinite(static_cast<double>(err))) err = R(1e10);

        if (err <= R(1)) {
            DenseSegment seg;
            seg.t0 = tc;
            const R t_new = landing ? R(target) : t + hs;
            seg.h = static_cast<double>(t_new - t);
            for (int i = 0; i < 12; ++i) {
                const R ydiff = yn[i] - y[i];
                const R bspl = hs * k1[i] - ydiff;
                seg.c[0][i] = static_cast<double>(y[i]);
                seg.c[1][i] = static_cast<double>(ydiff);
                seg.c[2][i] = static_cast<double>(bspl);
                seg.c[3][i] = static_cast<double>(ydiff - hs * k7[i] - bspl);
                seg.c[4][i] = static_cast<double>(
                    hs * (R(d1) * k1[i] + R(d3) * k3[i] + R(d4) * k4[i] + R(d5) * k5[i] +
                          R(d6) * k6[i] + R(d7) * k7[i]));
            }
            traj.segments.push_back(seg);

            if (auto ev = segment_event(seg, cfg)) {
                traj.events.push_back(*ev);
                traj.termination = Termination::Collision;
                if (ev->time == seg.t1()) {
                    const auto sn = unpack(t_new, yn);
                    traj.samples.push_back({PlanarState<double>(sn), diag_double(sn, mr, law)});
                } else {
                    const auto se = seg.eval(ev->time);
                    Diagnostics<double> d;
                    try {
                        d = diagnostics(se, m, law);
                    } catch (const CollisionSingularity&) {
                        d = traj.samples.back().diag;
                    }
                    traj.samples.push_back({se, d});
                }
                return traj;
            }

            t = t_new;
            y = yn;
            k1 = k7;
            const auto sn = unpack(t, y);
            traj.samples.push_back({PlanarState<double>(sn), diag_double(sn, mr, law)});
            if (static_cast<double>(t) == t_end) return traj;
        }

        using std::pow;
        R fac = R(0.9) * pow(max(err, R(1e-10)), R(-0.2));
        fac = min(R(5), max(R(0.2), fac));
        if (err > R(1) || rejected_last) fac = min(fac, R(1));
        rejected_last = err > R(1);
        h *= fac;
    }
}

double sample_time_tolerance(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

}  // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw InvalidArgument("tolerances must be positive");
    if (!(collision_radius > 0)) throw InvalidArgument("collision_radius must be positive");
    if (!(max_step > 0)) throw InvalidArgument("max_step must be positive");
    if (!(max_time > 0)) throw InvalidArgument("max_time must be positive");
    if (output_step && !(*output_step > 0)) throw InvalidArgument("output_step must be positive");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::Collision: return "collision";
        case Termination::StepSizeUnderflow: return "step_size_underflow";
        case Termination::MaxSteps: return "max_steps";
    }
    return "unknown";
}

bool DenseSegment::contains(double t) const {
    const double s = (t - t0) / h;
    return s >= -1e-12 && s <= 1 + 1e-12;
}

PlanarState<double> DenseSegment::eval(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1 - s;
    Vec<double> y{};
    for (int i = 0; i < 12; ++i) {
        y[i] = c[0][i] + s * (c[1][i] + s1 * (c[2][i] + s * (c[3][i] + s1 * c[4][i])));
    }
    return unpack(t, y);
}

PlanarState<double> Trajectory::at(double t) const {
    if (segments.empty()) {
        if (!samples.empty() && t == samples.front().state.t) return samples.front().state;
        throw InvalidArgument("trajectory has no dense output");
    }
    const double dir = segments.front().h > 0 ? 1.0 : -1.0;
    // segments are ordered along the direction of integration
    auto it = std::lower_bound(segments.begin(), segments.end(), t,
                               [dir](const DenseSegment& s, double x) { return (s.t1() - x) * dir < 0; });
    if (it == segments.end()) {
        if (segments.back().contains(t)) return segments.back().eval(t);
        throw InvalidArgument("time outside the integrated interval");
    }
    if (!it->contains(t)) throw InvalidArgument("time outside the integrated interval");
    return it->eval(t);
}

Trajectory integrate(const PlanarState<double>& s0, const Masses<double>& m,
                     const PotentialLaw& law, const IntegratorConfig& cfg, double t_end) {
    if (cfg.extended_precision) return integrate_impl<long double>(s0, m, law, cfg, t_end);
    return integrate_impl<double>(s0, m, law, cfg, t_end);
}

Trajectory integrate(const InitialFamily<double>& family, const IntegratorConfig& cfg,
                     double t_end) {
    return integrate(family.state, family.masses, family.law, cfg, t_end);
}

std::vector<CollisionEvent> detect_collisions(const Trajectory& traj, const IntegratorConfig& cfg) {
    std::vector<CollisionEvent> out;
    for (const auto& seg : traj.segments) {
        if (auto ev = segment_event(seg, cfg)) out.push_back(*ev);
    }
    return out;
}

InertiaVariation inertia_variation(const Trajectory& traj) {
    return inertia_variation(traj, -std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity());
}

InertiaVariation inertia_variation(const Trajectory& traj, double t0, double t1) {
    InertiaVariation v;
    if (traj.samples.empty()) return v;
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    std::optional<double> ref;
    for (const auto& s : traj.samples) {
        if (s.state.t < lo || s.state.t > hi) continue;
        if (!ref) ref = s.diag.I;
        v.max_abs_dev = std::max(v.max_abs_dev, std::abs(s.diag.I - *ref));
    }
    if (ref && *ref != 0) v.relative_dev = v.max_abs_dev / std::abs(*ref);
    return v;
}

ConservationReport conservation(const Trajectory& traj) {
    ConservationReport r;
    if (traj.samples.empty()) return r;
    const double e0 = traj.samples.front().diag.E;
    for (const auto& s : traj.samples) {
        r.energy_drift = std::max(r.energy_drift, std::abs(s.diag.E - e0) / std::max(1.0, std::abs(e0)));
        r.max_angular_momentum = std::max(r.max_angular_momentum, std::abs(s.diag.L));
    }
    return r;
}

double lj_residual(const Trajectory& traj, double h) {
    if (!(h > 0)) throw InvalidArgument("lj_residual step must be positive");
    if (traj.samples.empty()) throw InvalidArgument("empty trajectory");
    const double t0 = traj.t_begin();
    const double span = std::abs(traj.t_final() - t0);
    const double dir = traj.t_final() >= t0 ? 1.0 : -1.0;
    const auto n = static_cast<std::size_t>(std::floor(span / h * (1 + 1e-12)));
    if (n + 1 < 5) throw InvalidArgument("lj_residual needs at least five grid points");

    // Accepted samples are used where they sit on the grid.
    auto state_at = [&](std::size_t k) {
        const double t = t0 + dir * static_cast<double>(k) * h;
        auto it = std::lower_bound(traj.samples.begin(), traj.samples.end(), t,
                                   [dir](const Sample& s, double x) { return (s.state.t - x) * dir < 0; });
        for (auto c : {it, it == traj.samples.begin() ? it : it - 1}) {
            if (c != traj.samples.end() && std::abs(c->state.t - t) <= sample_time_tolerance(t)) {
                return c->state;
            }
        }
        return traj.at(t);
    };

    std::vector<PlanarState<double>> grid;
    grid.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) grid.push_back(state_at(k));
    double worst = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const double im = moment_of_inertia(grid[k - 1], traj.masses);
        const double ic = moment_of_inertia(grid[k], traj.masses);
        const double ip = moment_of_inertia(grid[k + 1], traj.masses);
        const double fd = (ip - 2 * ic + im) / (h * h);
        const double rhs = lagrange_jacobi_rhs(grid[k], traj.masses, traj.law);
        worst = std::max(worst, std::abs(fd - rhs));
    }
    return worst;
}

std::string to_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,I,K,V,E,L\n";
    for (const auto& s : traj.samples) {
        const auto& st = s.state;
        os << format_real(st.t);
        for (int i = 0; i < 3; ++i) os << ',' << format_real(st.r[i].x) << ',' << format_real(st.r[i].y);
        for (int i = 0; i < 3; ++i) os << ',' << format_real(st.v[i].x) << ',' << format_real(st.v[i].y);
        os << ',' << format_real(s.diag.I) << ',' << format_real(s.diag.K) << ','
           << format_real(s.diag.V) << ',' << format_real(s.diag.E) << ',' << format_real(s.diag.L)
           << '\n';
    }
    for (const auto& e : traj.events) {
        os << "# collision pair=(" << e.first + 1 << ',' << e.second + 1
           << ") t=" << format_real(e.time) << '\n';
    }
    return os.str();
}

std::vector<Vec2<double>> orbit_trace(const Trajectory& traj, int body, double t0, double t1,
                                      std::size_t points) {
    std::vector<Vec2<double>> out;
    if (points == 0) return out;
    out.reserve(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double t =
            points == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(points - 1);
        out.push_back(traj.at(t).r[body]);
    }
    return out;
}

}  // namespace threebody

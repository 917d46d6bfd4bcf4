#pragma once

// Taylor-jet recursion on the three-body equations of motion. The jet of the
// positions is grown order by order from r'' = f / m; the jet of V(r(t)) then
// gives d^n V / dt^n (0) = n! [t^n] V for arbitrary real alpha.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "threebody/dynamics.hpp"
#include "threebody/initial_family.hpp"
#include "threebody/precision.hpp"

namespace threebody {

namespace series {

/// [t^k] (a * b)
template <class T>
T mul_coeff(const std::vector<T>& a, const std::vector<T>& b, std::size_t k) {
    T acc(0);
    for (std::size_t l = 0; l <= k; ++l) acc += a[l] * b[k - l];
    return acc;
}

/// Next coefficient k >= 1 of w = s^p, from k s0 w_k = sum_{j=1..k} (p j - (k - j)) s_j w_{k-j}.
template <class T>
T pow_next(const std::vector<T>& s, const std::vector<T>& w, const T& p, std::size_t k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) {
        acc += (p * T(j) - T(k - j)) * s[j] * w[k - j];
    }
    return acc / (T(k) * s[0]);
}

/// Coefficients 0..n of s^p.
template <class T>
std::vector<T> pow(const std::vector<T>& s, const T& p, std::size_t n) {
    using std::pow;
    std::vector<T> w;
    w.reserve(n + 1);
    w.push_back(pow(s[0], p));
    for (std::size_t k = 1; k <= n; ++k) w.push_back(pow_next(s, w, p, k));
    return w;
}

/// Coefficients 0..n of log s, from k s0 l_k = k s_k - sum_{j=1..k-1} j l_j s_{k-j}.
template <class T>
std::vector<T> log(const std::vector<T>& s, std::size_t n) {
    using std::log;
    std::vector<T> l;
    l.reserve(n + 1);
    l.push_back(log(s[0]));
    for (std::size_t k = 1; k <= n; ++k) {
        T acc = T(k) * s[k];
        for (std::size_t j = 1; j < k; ++j) acc -= T(j) * l[j] * s[k - j];
        l.push_back(acc / (T(k) * s[0]));
    }
    return l;
}

}  // namespace series

template <class T = HighPrec>
struct TrajectoryJet {
    int order = 0;  // highest Taylor coefficient kept; d^n V/dt^n is available for n <= order
    Masses<T> masses;
    PotentialLaw law;
    std::optional<T> theta;
    /// coeff[body][axis][k] is the t^k Taylor coefficient of that coordinate.
    std::array<std::array<std::vector<T>, 2>, 3> coeff;

    /// Truncated series for positions and velocities at time t.
    PlanarState<T> evaluate(const T& t) const {
        PlanarState<T> s;
        s.t = t;
        for (int i = 0; i < 3; ++i) {
            for (int a = 0; a < 2; ++a) {
                const auto& c = coeff[i][a];
                T p(0), dp(0);
                for (int k = order; k >= 0; --k) {
                    p = p * t + c[k];
                    if (k >= 1) dp = dp * t + T(k) * c[k];
                }
                (a == 0 ? s.r[i].x : s.r[i].y) = p;
                (a == 0 ? s.v[i].x : s.v[i].y) = dp;
            }
        }
        return s;
    }
};

template <class T>
TrajectoryJet<T> expand_jet(const PlanarState<T>& s0, const Masses<T>& m, const PotentialLaw& law,
                            int order) {
    if (order < 2) throw InvalidArgument("jet order must be >= 2");
    const auto n = static_cast<std::size_t>(order);
    TrajectoryJet<T> jet{order, m, law, std::nullopt, {}};
    for (int i = 0; i < 3; ++i) {
        jet.coeff[i][0] = {s0.r[i].x, s0.v[i].x};
        jet.coeff[i][1] = {s0.r[i].y, s0.v[i].y};
        jet.coeff[i][0].reserve(n + 1);
        jet.coeff[i][1].reserve(n + 1);
    }

    struct PairJet {
        std::array<std::vector<T>, 2> d;  // r_j - r_i
        std::vector<T> s;                 // |r_j - r_i|^2
        std::vector<T> w;                 // s^((alpha - 2)/2)
    };
    std::array<PairJet, 3> pairs;
    const T p = (T(law.alpha()) - 2) / 2;

    for (std::size_t k = 0; k + 2 <= n; ++k) {
        std::array<Vec2<T>, 3> acc{};
        for (std::size_t q = 0; q < 3; ++q) {
            const auto [i, j] = kPairs[q];
            auto& pj = pairs[q];
            for (int a = 0; a < 2; ++a) pj.d[a].push_back(jet.coeff[j][a][k] - jet.coeff[i][a][k]);
            pj.s.push_back(series::mul_coeff(pj.d[0], pj.d[0], k) +
                           series::mul_coeff(pj.d[1], pj.d[1], k));
            if (k == 0) {
                using std::pow;
                if (pj.s[0] == 0) throw CollisionSingularity(i, j);
                pj.w.push_back(pow(pj.s[0], p));
            } else {
                pj.w.push_back(series::pow_next(pj.s, pj.w, p, k));
            }
            const Vec2<T> term(series::mul_coeff(pj.d[0], pj.w, k),
                               series::mul_coeff(pj.d[1], pj.w, k));
            acc[i] += m[j] * term;
            acc[j] -= m[i] * term;
        }
        const T denom = T((k + 1) * (k + 2));
        for (int i = 0; i < 3; ++i) {
            jet.coeff[i][0].push_back(acc[i].x / denom);
            jet.coeff[i][1].push_back(acc[i].y / denom);
        }
    }
    return jet;
}

template <class T>
TrajectoryJet<T> expand_jet(const InitialFamily<T>& f, int order) {
    auto jet = expand_jet(f.state, f.masses, f.law, order);
    jet.theta = f.theta;
    return jet;
}

template <class T = HighPrec>
struct DerivativeReport {
    PotentialLaw law = PotentialLaw::log();
    Masses<T> masses = Masses<T>::equal();
    std::optional<T> theta;
    int order = 0;
    std::vector<T> values;  // values[n] = d^n V / dt^n (0)

    /// Scale for the zero test: max(1, |values[2]|, |values[4]|).
    T scale() const {
        using std::abs;
        T s(1);
        if (values.size() > 2 && abs(values[2]) > s) s = abs(values[2]);
        if (values.size() > 4 && abs(values[4]) > s) s = abs(values[4]);
        return s;
    }
    bool vanishes(std::size_t n, double rel = 1e-20) const {
        using std::abs;
        return abs(values.at(n)) < T(rel) * scale();
    }
    std::vector<bool> zero_flags(double rel = 1e-20) const {
        std::vector<bool> out;
        for (std::size_t n = 0; n < values.size(); ++n) out.push_back(vanishes(n, rel));
        return out;
    }
};

/// Taylor coefficients of V(r(t)) from the position jet, scaled by n!.
template <class T>
DerivativeReport<T> derivatives_of_V(const TrajectoryJet<T>& jet) {
    const auto n = static_cast<std::size_t>(jet.order);
    const auto& m = jet.masses;
    std::vector<T> v(n + 1, T(0));
    for (auto [i, j] : kPairs) {
        std::array<std::vector<T>, 2> d;
        for (int a = 0; a < 2; ++a) {
            for (std::size_t k = 0; k <= n; ++k) d[a].push_back(jet.coeff[j][a][k] - jet.coeff[i][a][k]);
        }
        std::vector<T> s;
        for (std::size_t k = 0; k <= n; ++k) {
            s.push_back(series::mul_coeff(d[0], d[0], k) + series::mul_coeff(d[1], d[1], k));
        }
        if (s[0] == 0) throw CollisionSingularity(i, j);
        std::vector<T> term;
        T weight = m[i] * m[j];
        if (jet.law.is_log()) {
            term = series::log(s, n);
            weight /= 2;
        } else {
            term = series::pow(s, T(jet.law.alpha()) / 2, n);
            weight /= T(jet.law.alpha());
        }
        for (std::size_t k = 0; k <= n; ++k) v[k] += weight * term[k];
    }
    T factorial(1);
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) factorial *= T(k);
        v[k] *= factorial;
    }
    return DerivativeReport<T>{jet.law, m, jet.theta, jet.order, std::move(v)};
}

// ---------------------------------------------------------------------------
// Closed forms (evaluated in 50-digit arithmetic).

HighPrec f4_poly(const HighPrec& x, const HighPrec& y);
HighPrec f6_poly(const HighPrec& x, const HighPrec& y);

/// (2^a + 2) f4(a, 2^a) / (8 (a - 2)); throws AlphaTwoSingular at a = 2.
HighPrec f4_closed(const HighPrec& alpha);
/// (2^a + 2) f6(a, 2^a) / (32 (a - 2)^2); throws AlphaTwoSingular at a = 2.
HighPrec f6_closed(const HighPrec& alpha);

/// Equal masses, arbitrary theta: (2 + 2^a)(3 (a - 2) cos 2theta - (2 + 2^a - 3a)) / 2.
HighPrec d2_equal_mass_closed(const HighPrec& alpha, const HighPrec& theta);

/// Newtonian m1 = m2 = m, m3 = mu m with cos(2 theta) as given.
struct EqualPair {
    HighPrec m;
    HighPrec mu;
    HighPrec cos2theta;
};
/// Newtonian m1 != m2 with cos(theta) = 0.
struct UnequalPair {
    HighPrec m1;
    HighPrec m2;
    HighPrec m3;
};
using NewtonianBranch = std::variant<EqualPair, UnequalPair>;

/// Closed-form derivative values keyed by order. EqualPair yields orders 2, 4, 6
/// (4 and 6 assume the angle that kills order 2); UnequalPair yields 2 and 4
/// (4 assumes m3 is the positive root of the m3 quadratic).
std::map<int, HighPrec> newtonian_closed(const NewtonianBranch& branch);

/// General-mass Newtonian dV/dt(0); vanishes iff m1 = m2 or cos(theta) = 0.
HighPrec newtonian_d1_closed(const Masses<HighPrec>& m, const HighPrec& theta);

HighPrec newtonian_p0(const HighPrec& m1, const HighPrec& m2);
HighPrec newtonian_p1(const HighPrec& m1, const HighPrec& m2);
HighPrec newtonian_omega(const HighPrec& m1, const HighPrec& m2);
HighPrec newtonian_q(const HighPrec& m1, const HighPrec& m2);

/// Family state for a Newtonian branch (alpha = -1).
InitialFamily<HighPrec> newtonian_family(const NewtonianBranch& branch);

struct CrossCheckEntry {
    int order;
    HighPrec jet;
    HighPrec closed;
    HighPrec rel_diff;  // |jet - closed| / max(|jet|, |closed|, report scale)
};
struct CrossCheckVerdict {
    std::vector<CrossCheckEntry> entries;
    bool pass = true;
};

CrossCheckVerdict cross_check(const DerivativeReport<HighPrec>& report,
                              const std::map<int, HighPrec>& closed, double tol);

template <class T>
struct RepulsiveCheck {
    T value;  // d^2 I/dt^2 under -V
    bool positive;
};

template <class T>
RepulsiveCheck<T> repulsive_positivity(const PlanarState<T>& s, const Masses<T>& m,
                                       const PotentialLaw& law) {
    const T value = repulsive_lagrange_jacobi_rhs(s, m, law);
    return {value, value > 0};
}

/// {law, alpha, masses, theta, order, values[], zero_flags[]}; reals as decimal strings.
std::string to_json(const DerivativeReport<HighPrec>& report, int indent = 2);

std::string law_name(const PotentialLaw& law);

}  // namespace threebody

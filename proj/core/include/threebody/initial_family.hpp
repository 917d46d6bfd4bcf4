#pragma once

// The one-parameter family of t = 0 configurations with body 3 at the centre
// of mass, zero angular momentum, dI/dt = 0 and d^2I/dt^2 = 0.

#include <cmath>
#include <string>
#include <variant>

#include "threebody/dynamics.hpp"
#include "threebody/types.hpp"

namespace threebody {

template <class T>
T pi_v() {
    using std::acos;
    return acos(T(-1));
}

template <class T = double>
struct InitialFamily {
    Masses<T> masses;
    PotentialLaw law;
    T theta;
    T u;
    PlanarState<T> state;
};

/// Solutions for the equal-mass second-derivative condition on theta.
namespace theta_solution {
struct All {};
struct None {};
template <class T>
struct Cos2Theta {
    T value;
};
struct CosThetaZero {};
}  // namespace theta_solution

template <class T = double>
using ThetaSolution = std::variant<theta_solution::All, theta_solution::None,
                                   theta_solution::Cos2Theta<T>, theta_solution::CosThetaZero>;

/// theta in [0, pi/2] from cos(2 theta) = c.
template <class T>
T theta_from_cos2(const T& c) {
    using std::acos;
    return acos(c) / 2;
}

/// Sum m1 m2 2^a + m2 m3 (2 m1/(m1+m2))^a + m3 m1 (2 m2/(m1+m2))^a, i.e. alpha V(0).
template <class T>
T weighted_distance_sum(const Masses<T>& m, double alpha) {
    using std::pow;
    const T a(alpha);
    const T s12 = m.m1() + m.m2();
    return m.m1() * m.m2() * pow(T(2), a) + m.m2() * m.m3() * pow(2 * m.m1() / s12, a) +
           m.m3() * m.m1() * pow(2 * m.m2() / s12, a);
}

/// Speed u fixed by K(0) = alpha V(0) / 2; alpha = 0 gives the Log case.
template <class T>
T speed_general(const Masses<T>& m, double alpha) {
    using std::sqrt;
    const T s12 = m.m1() + m.m2();
    return sqrt(m.m3() * weighted_distance_sum(m, alpha) / (s12 * m.total()));
}

template <class T>
T speed_equal_mass(double alpha) {
    using std::pow;
    using std::sqrt;
    return sqrt((pow(T(2), T(alpha)) + 2) / 6);
}

/// cos(2 theta) = (2 + 2^alpha - 3 alpha) / (3 (alpha - 2)) for equal masses.
template <class T>
ThetaSolution<T> theta_equal_mass(double alpha) {
    using std::pow;
    if (alpha == 2.0) return theta_solution::All{};
    const T a(alpha);
    const T c = (2 + pow(T(2), a) - 3 * a) / (3 * (a - 2));
    if (alpha == 4.0) return theta_solution::Cos2Theta<T>{T(1)};
    if (c > 1 || c < -1) return theta_solution::None{};
    return theta_solution::Cos2Theta<T>{c};
}

template <class T>
InitialFamily<T> build(const Masses<T>& m, const PotentialLaw& law, const T& theta) {
    using std::cos;
    using std::sin;
    const T s12 = m.m1() + m.m2();
    const T u = speed_general(m, law.alpha());
    const Vec2<T> dir(cos(theta), sin(theta));

    PlanarState<T> s;
    s.t = T(0);
    s.r[0] = Vec2<T>(2 * m.m2() / s12, T(0));
    s.r[1] = Vec2<T>(-2 * m.m1() / s12, T(0));
    s.r[2] = Vec2<T>(T(0), T(0));
    s.v[0] = (-u) * dir;
    s.v[1] = (-u) * dir;
    s.v[2] = (s12 / m.m3() * u) * dir;
    return InitialFamily<T>{m, law, theta, u, s};
}

/// Newtonian (alpha = -1) speed in closed form.
template <class T>
T newtonian_u(const Masses<T>& m) {
    using std::sqrt;
    const T& m1 = m.m1();
    const T& m2 = m.m2();
    const T& m3 = m.m3();
    const T num = m3 * (m1 * m1 * m2 * m2 +
                        (m1 * m1 * m1 + m1 * m1 * m2 + m1 * m2 * m2 + m2 * m2 * m2) * m3);
    const T den = 2 * m1 * m2 * (m1 + m2) * m.total();
    return sqrt(num / den);
}

/// Newtonian m1 = m2 = m, m3 = mu m: u = (1/2) sqrt(m mu (1 + 4 mu) / (2 + mu)).
template <class T>
T newtonian_equal_pair_u(const T& m, const T& mu) {
    using std::sqrt;
    return sqrt(m * mu * (1 + 4 * mu) / (2 + mu)) / 2;
}

/// cos(2 theta) = -(5 + 6 mu) / (12 + 6 mu) kills d^2 V / dt^2 on the m1 = m2 branch.
template <class T>
T newtonian_equal_pair_angle(const T& mu) {
    if (!(mu > 0)) throw InvalidArgument("mu must be positive");
    return -(5 + 6 * mu) / (12 + 6 * mu);
}

/// Coefficients of c2 m3^2 - c1 m3 - c0 = 0 on the cos(theta) = 0 branch.
template <class T>
struct M3Quadratic {
    T c0, c1, c2;
};

template <class T>
M3Quadratic<T> newtonian_m3_quadratic(const T& m1, const T& m2) {
    const T a2 = m1 * m1, b2 = m2 * m2;
    const T a3 = a2 * m1, b3 = b2 * m2;
    const T a4 = a3 * m1, b4 = b3 * m2;
    const T d = m1 - m2, s = m1 + m2;
    M3Quadratic<T> q{
        m1 * m2 *
            (a4 * a2 + 2 * a4 * m1 * m2 + a4 * b2 - a3 * b3 + a2 * b4 + 2 * m1 * b4 * m2 + b4 * b2),
        2 * m1 * m2 * s * (a4 + a3 * m2 + 3 * a2 * b2 + m1 * b3 + b4),
        d * d * s * s * (a2 + m1 * m2 + b2)};
    return q;
}

template <class T>
T newtonian_m3_root(const T& m1, const T& m2) {
    using std::sqrt;
    if (!(m1 > 0) || !(m2 > 0)) throw InvalidArgument("masses must be strictly positive");
    if (m1 == m2) throw DegenerateMasses("m3 quadratic degenerates when m1 == m2");
    const auto q = newtonian_m3_quadratic(m1, m2);
    return (q.c1 + sqrt(q.c1 * q.c1 + 4 * q.c0 * q.c2)) / (2 * q.c2);
}

template <class T>
struct ConstraintReport {
    T centre_of_mass;       // |sum m_i r_i|
    T inertia_rate;         // |dI/dt(0)|
    T angular_momentum;     // |L|
    T lagrange_jacobi;      // |d^2 I/dt^2(0)|
    T energy;               // E(0), reported only

    bool passes(const T& tol) const {
        return centre_of_mass < tol && inertia_rate < tol && angular_momentum < tol &&
               lagrange_jacobi < tol;
    }
};

template <class T>
ConstraintReport<T> verify_constraints(const InitialFamily<T>& f) {
    using std::abs;
    const auto& s = f.state;
    const auto& m = f.masses;
    return ConstraintReport<T>{norm(centre_of_mass_moment(s, m)), abs(inertia_rate(s, m)),
                               abs(angular_momentum(s, m)), abs(lagrange_jacobi_rhs(s, m, f.law)),
                               kinetic_energy(s, m) + potential_energy(s, m, f.law)};
}

std::string describe(const ThetaSolution<double>& sol);

}  // namespace threebody

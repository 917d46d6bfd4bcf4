#pragma once

// Planar three-body quantities: moment of inertia, energies, angular momentum,
// forces and the Lagrange-Jacobi right-hand side. All functions are templated
// on the scalar so the high-precision jet engine and the double-precision
// integrator share one definition.

#include <array>
#include <cmath>

#include "threebody/types.hpp"

namespace threebody {

inline constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

template <class T>
struct Diagnostics {
    T I{0};
    T K{0};
    T V{0};
    T E{0};
    T L{0};
};

template <class T>
T moment_of_inertia(const PlanarState<T>& s, const Masses<T>& m) {
    T acc(0);
    for (int i = 0; i < 3; ++i) acc += m[i] * norm2(s.r[i]);
    return acc / 2;
}

template <class T>
T kinetic_energy(const PlanarState<T>& s, const Masses<T>& m) {
    T acc(0);
    for (int i = 0; i < 3; ++i) acc += m[i] * norm2(s.v[i]);
    return acc / 2;
}

template <class T>
T angular_momentum(const PlanarState<T>& s, const Masses<T>& m) {
    T acc(0);
    for (int i = 0; i < 3; ++i) acc += m[i] * cross(s.r[i], s.v[i]);
    return acc;
}

template <class T>
Vec2<T> centre_of_mass_moment(const PlanarState<T>& s, const Masses<T>& m) {
    Vec2<T> acc;
    for (int i = 0; i < 3; ++i) acc += m[i] * s.r[i];
    return acc;
}

/// dI/dt = sum m_i r_i . v_i
template <class T>
T inertia_rate(const PlanarState<T>& s, const Masses<T>& m) {
    T acc(0);
    for (int i = 0; i < 3; ++i) acc += m[i] * dot(s.r[i], s.v[i]);
    return acc;
}

template <class T>
T pair_mass_sum(const Masses<T>& m) {
    return m[0] * m[1] + m[0] * m[2] + m[1] * m[2];
}

template <class T>
T potential_energy(const PlanarState<T>& s, const Masses<T>& m, const PotentialLaw& law) {
    using std::log;
    using std::pow;
    const bool singular_at_zero = law.is_log() || law.alpha() < 0;
    T acc(0);
    for (auto [i, j] : kPairs) {
        const T r = norm(s.r[i] - s.r[j]);
        if (r == 0 && singular_at_zero) throw CollisionSingularity(i, j);
        if (law.is_log()) {
            acc += m[i] * m[j] * log(r);
        } else {
            acc += m[i] * m[j] * pow(r, T(law.alpha()));
        }
    }
    return law.is_log() ? acc : acc / T(law.alpha());
}

/// f_i = m_i sum_{j != i} m_j (r_j - r_i) r_ji^(alpha - 2), with alpha = 0 for Log.
/// Zero separation is only an error where the kernel is singular (alpha < 2).
template <class T>
std::array<Vec2<T>, 3> forces(const PlanarState<T>& s, const Masses<T>& m,
                              const PotentialLaw& law) {
    using std::pow;
    const T half_exp = (T(law.alpha()) - 2) / 2;
    std::array<Vec2<T>, 3> f{};
    for (auto [i, j] : kPairs) {
        const Vec2<T> d = s.r[j] - s.r[i];
        const T r2 = norm2(d);
        T kernel;
        if (r2 == 0) {
            if (law.alpha() < 2) throw CollisionSingularity(i, j);
            kernel = law.alpha() == 2 ? T(1) : T(0);
        } else {
            kernel = pow(r2, half_exp);
        }
        const Vec2<T> fij = (m[i] * m[j] * kernel) * d;
        f[i] += fij;
        f[j] -= fij;
    }
    return f;
}

/// d^2 I / dt^2 via Lagrange-Jacobi: 2K - alpha V (Power) or 2K - sum m_i m_j (Log).
template <class T>
T lagrange_jacobi_rhs(const PlanarState<T>& s, const Masses<T>& m, const PotentialLaw& law) {
    const T K = kinetic_energy(s, m);
    if (law.is_log()) return 2 * K - pair_mass_sum(m);
    return 2 * K - T(law.alpha()) * potential_energy(s, m, law);
}

/// d^2 I / dt^2 under the repulsive potential -V: 2K + alpha V (or 2K + sum m_i m_j).
template <class T>
T repulsive_lagrange_jacobi_rhs(const PlanarState<T>& s, const Masses<T>& m,
                                const PotentialLaw& law) {
    const T K = kinetic_energy(s, m);
    if (law.is_log()) return 2 * K + pair_mass_sum(m);
    return 2 * K + T(law.alpha()) * potential_energy(s, m, law);
}

template <class T>
Diagnostics<T> diagnostics(const PlanarState<T>& s, const Masses<T>& m, const PotentialLaw& law) {
    Diagnostics<T> d;
    d.I = moment_of_inertia(s, m);
    d.K = kinetic_energy(s, m);
    d.V = potential_energy(s, m, law);
    d.E = d.K + d.V;
    d.L = angular_momentum(s, m);
    return d;
}

}  // namespace threebody

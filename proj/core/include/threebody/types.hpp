#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <variant>

#include "threebody/errors.hpp"

namespace threebody {

template <class T>
struct Vec2 {
    T x{0};
    T y{0};

    constexpr Vec2() = default;
    constexpr Vec2(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {}

    template <class U>
    explicit Vec2(const Vec2<U>& o) : x(static_cast<T>(o.x)), y(static_cast<T>(o.y)) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(const T& s) { x *= s; y *= s; return *this; }

    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(const T& s, Vec2 a) { return a *= s; }
    friend Vec2 operator*(Vec2 a, const T& s) { return a *= s; }
    friend Vec2 operator/(Vec2 a, const T& s) { return {a.x / s, a.y / s}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the planar cross product.
template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) { return a.x * b.y - a.y * b.x; }

template <class T>
T norm2(const Vec2<T>& a) { return dot(a, a); }

template <class T>
T norm(const Vec2<T>& a) {
    using std::sqrt;
    return sqrt(norm2(a));
}

/// Three strictly positive masses.
template <class T = double>
class Masses {
public:
    Masses(T m1, T m2, T m3) : m_{std::move(m1), std::move(m2), std::move(m3)} {
        for (const auto& m : m_) {
            if (!(m > 0)) throw InvalidArgument("masses must be strictly positive");
        }
    }
    static Masses equal() { return Masses(T(1), T(1), T(1)); }

    template <class U>
    explicit Masses(const Masses<U>& o)
        : Masses(static_cast<T>(o[0]), static_cast<T>(o[1]), static_cast<T>(o[2])) {}

    const T& operator[](std::size_t i) const { return m_[i]; }
    const T& m1() const { return m_[0]; }
    const T& m2() const { return m_[1]; }
    const T& m3() const { return m_[2]; }
    T total() const { return m_[0] + m_[1] + m_[2]; }

    friend bool operator==(const Masses&, const Masses&) = default;

private:
    std::array<T, 3> m_;
};

template <class T = double>
struct PlanarState {
    T t{0};
    std::array<Vec2<T>, 3> r{};
    std::array<Vec2<T>, 3> v{};

    PlanarState() = default;
    PlanarState(T t_, std::array<Vec2<T>, 3> r_, std::array<Vec2<T>, 3> v_)
        : t(std::move(t_)), r(std::move(r_)), v(std::move(v_)) {}

    template <class U>
    explicit PlanarState(const PlanarState<U>& o) : t(static_cast<T>(o.t)) {
        for (int i = 0; i < 3; ++i) {
            r[i] = Vec2<T>(o.r[i]);
            v[i] = Vec2<T>(o.v[i]);
        }
    }
};

/// V = alpha^-1 sum m_i m_j r_ij^alpha (Power) or sum m_i m_j log r_ij (Log).
class PotentialLaw {
public:
    struct Power {
        double alpha;
    };
    struct Log {};

    static PotentialLaw power(double alpha) {
        if (alpha == 0.0) throw InvalidArgument("Power law requires alpha != 0; use Log");
        return PotentialLaw(Power{alpha});
    }
    static PotentialLaw log() { return PotentialLaw(Log{}); }
    /// alpha == 0 selects the logarithmic potential.
    static PotentialLaw from_alpha(double alpha) { return alpha == 0.0 ? log() : power(alpha); }

    bool is_log() const { return std::holds_alternative<Log>(law_); }
    /// Exponent; 0 for the Log variant (the force law is continuous there).
    double alpha() const { return is_log() ? 0.0 : std::get<Power>(law_).alpha; }
    const std::variant<Power, Log>& variant() const { return law_; }

    friend bool operator==(const PotentialLaw& a, const PotentialLaw& b) {
        return a.is_log() == b.is_log() && a.alpha() == b.alpha();
    }

private:
    explicit PotentialLaw(std::variant<Power, Log> v) : law_(v) {}
    std::variant<Power, Log> law_;
};

}  // namespace threebody

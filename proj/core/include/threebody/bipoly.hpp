#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "threebody/precision.hpp"
#include "threebody/unipoly.hpp"

namespace threebody {

/// Sparse polynomial in (x, y) over Q; zero coefficients are never stored.
class BiPoly {
public:
    using Monomial = std::pair<int, int>;  // (deg_x, deg_y)

    BiPoly() = default;
    static BiPoly from_y(const UniPoly& p);
    /// sum_i x^i coeffs[i](y)
    static BiPoly from_x_coeffs(const std::vector<UniPoly>& coeffs);

    void add_term(int deg_x, int deg_y, const BigRational& c);
    BigRational coeff(int deg_x, int deg_y) const;
    const std::map<Monomial, BigRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int degree_x() const;
    int degree_y() const;
    bool is_x_free() const { return degree_x() <= 0; }

    /// Coefficients in x as polynomials in y: result[i] multiplies x^i.
    std::vector<UniPoly> x_coeffs() const;
    /// Requires is_x_free().
    UniPoly to_y() const;

    BigRational operator()(const BigRational& x, const BigRational& y) const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const BigRational& s);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(BiPoly a, const BigRational& s) { return a *= s; }
    friend bool operator==(const BiPoly&, const BiPoly&) = default;

    std::string to_string() const;

private:
    std::map<Monomial, BigRational> terms_;
};

struct MonomialMismatch {
    BiPoly::Monomial monomial;
    BigRational lhs;
    BigRational rhs;
};

/// First monomial (in map order) where the two polynomials differ.
std::optional<MonomialMismatch> first_mismatch(const BiPoly& a, const BiPoly& b);

/// Res_x(f, g) by the subresultant pseudo-remainder sequence over Q[y].
UniPoly resultant_x(const BiPoly& f, const BiPoly& g);

}  // namespace threebody

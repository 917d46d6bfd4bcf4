#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "threebody/precision.hpp"

namespace threebody {

/// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigRational> coeffs);
    UniPoly(std::initializer_list<long long> coeffs);

    static UniPoly constant(BigRational c);
    static UniPoly monomial(BigRational c, int degree);
    /// (y - r) for a rational r.
    static UniPoly linear_root(const BigRational& r);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// Coefficient of y^i; zero beyond the degree.
    BigRational coeff(int i) const;
    const BigRational& leading() const;
    const std::vector<BigRational>& coeffs() const { return c_; }

    BigRational operator()(const BigRational& y) const;
    UniPoly derivative() const;
    UniPoly pow(unsigned n) const;
    UniPoly monic() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const UniPoly& o);
    UniPoly& operator*=(const BigRational& s);

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
    friend UniPoly operator*(UniPoly a, const BigRational& s) { return a *= s; }
    friend UniPoly operator*(const BigRational& s, UniPoly a) { return a *= s; }
    friend UniPoly operator-(UniPoly a);
    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    std::string to_string(const char* var = "y") const;

private:
    void trim();
    std::vector<BigRational> c_;
};

/// Euclidean division: a = q b + r with deg r < deg b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);  // quotient
UniPoly operator%(const UniPoly& a, const UniPoly& b);  // remainder
/// Quotient of a division known to be exact; throws Error if the remainder is nonzero.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
bool divides(const UniPoly& d, const UniPoly& a);
/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

int sign(const BigRational& q);

}  // namespace threebody

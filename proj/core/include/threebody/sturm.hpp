#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "threebody/precision.hpp"
#include "threebody/unipoly.hpp"

namespace threebody {

struct SturmChain {
    UniPoly source;
    std::vector<UniPoly> chain;  // p0 = source, p1 = p0', p_{k+1} = -rem(p_{k-1}, p_k)
};

/// Throws NotSquarefree if gcd(p, p') is not constant.
SturmChain sturm_chain(const UniPoly& p);

/// Sign changes of the chain at a rational point (zeros skipped).
int sign_variations(const SturmChain& sc, const BigRational& x);
/// Sign changes at +infinity (plus == true) or -infinity.
int sign_variations_at_infinity(const SturmChain& sc, bool plus);

/// Distinct real roots of p in (lo, hi]. nullopt bounds mean -inf / +inf.
int sturm_count(const UniPoly& p, const std::optional<BigRational>& lo,
                const std::optional<BigRational>& hi);

/// Rational bounds lower <= sqrt(radicand) <= upper.
struct SqrtEnclosure {
    BigRational radicand;
    BigRational lower;
    BigRational upper;
};

/// Heron iteration with upward rounding until upper - lower < 10^-digits.
SqrtEnclosure sqrt_enclosure(const BigRational& radicand, int digits = 40);

/// Exact sign (-1, 0, +1) at a rational point.
int sign_at(const UniPoly& p, const BigRational& x);
/// Sign over the whole enclosure; throws IndeterminateEnclosure if it straddles zero.
int sign_at(const UniPoly& p, const SqrtEnclosure& x);

/// Rational interval [lo, hi].
struct RationalInterval {
    BigRational lo;
    BigRational hi;
};
/// Enclosure of p over [lo, hi] by interval Horner evaluation.
RationalInterval evaluate_interval(const UniPoly& p, const BigRational& lo, const BigRational& hi);

/// a + b sqrt(r) with rational a, b, r (r > 0).
struct QuadraticSurd {
    BigRational a;
    BigRational b;
    BigRational r;
};
/// p(sqrt(r)) computed exactly.
QuadraticSurd evaluate_at_sqrt(const UniPoly& p, const BigRational& r);
/// Sign of a + b sqrt(r) decided exactly.
int sign(const QuadraticSurd& q);

}  // namespace threebody

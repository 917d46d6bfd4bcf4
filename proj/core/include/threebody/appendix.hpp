#pragma once

// Exact certificate that f4(a, 2^a) = 0 and f6(a, 2^a) = 0 share only the
// roots a = 2 and a = 4: a Bezout identity L f6 - M f4 = R(y), the factored
// form of R, Sturm counting on the residual factor f(y), root bracketing with
// a sqrt(2) enclosure, and the monotone g+/g- bound that excludes the last
// candidate root.

#include <optional>
#include <string>
#include <vector>

#include "threebody/bipoly.hpp"
#include "threebody/sturm.hpp"
#include "threebody/unipoly.hpp"

namespace threebody::appendix {

BiPoly f4();
BiPoly f6();
BiPoly bezout_L();
BiPoly bezout_M();
/// Degree-9 residual factor f(y).
UniPoly residual_factor();
/// -512 (y - 16) (y - 4)^4 (y + 2)^2 f(y), expanded.
UniPoly R_factored();

struct BezoutVerdict {
    bool holds = false;
    bool x_free = false;
    UniPoly lhs_y;                            // L f6 - M f4 when x-free
    std::optional<MonomialMismatch> mismatch;  // against from_y(R)
};

BezoutVerdict verify_bezout(const BiPoly& L, const BiPoly& M, const BiPoly& f4, const BiPoly& f6,
                            const UniPoly& R);
BezoutVerdict verify_bezout();

struct FactorizationVerdict {
    bool holds = false;
    UniPoly expanded;  // factored form expanded
    UniPoly computed;  // L f6 - M f4
};
FactorizationVerdict verify_R_factorization();

struct ResultantVerdict {
    UniPoly resultant;
    bool divisible = false;  // by (y - 4)(y - 16) f(y)
};
ResultantVerdict verify_resultant();

struct GBoundsVerdict {
    bool identity_holds = false;       // f4(x, y) = y^3 (g+ - g-)(beta = -x, 2^beta = 1/y)
    bool monotone = false;             // all coefficients of g+/g- in (beta, 2^beta) non-negative
    QuadraticSurd g_minus_half;        // g-(1/2) = a + b sqrt(2)
    BigRational g_plus_one;            // g+(1)
    BigRational sqrt2_lower;           // rational lower bound used
    BigRational g_minus_half_lower;    // a + b sqrt2_lower
    BigRational threshold;             // 1566
    bool contradiction = false;        // g-(1/2) > 1566 > g+(1)
};
GBoundsVerdict verify_g_bounds(int digits = 40);

/// g+(beta) and g-(beta) in double precision for spot checks.
double g_plus(double beta);
double g_minus(double beta);

struct Claim {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> witness;  // decimal strings
    double seconds = 0;
};

struct Certificate {
    std::vector<Claim> claims;
    std::vector<int> common_roots;  // alpha values surviving every step
    bool pass = false;
    double seconds = 0;
};

Certificate certify(int digits = 40);

/// JSON certificate; timing fields are emitted only when include_timing is set.
std::string to_json(const Certificate& cert, bool include_timing, int indent = 2);

}  // namespace threebody::appendix

#pragma once

// Integer coefficient tables for the equal-mass consistency polynomials
// f4(x, y), f6(x, y) (x = alpha, y = 2^alpha) and the Newtonian general-mass
// fourth-derivative closed form. Entered term by term; tests cross-check every
// table against the Taylor-jet engine.

#include <array>
#include <cstdint>

namespace threebody::tables {

struct Term {
    int x_deg;
    int y_deg;
    std::int64_t coeff;
};

// f4 = x^2 (128 - 36y + 24y^2 + y^3) - 2xy(-112 + 62y + 5y^2) + 8(-32 - 38y + 13y^2 + 3y^3)
inline constexpr std::array<Term, 11> kF4{{
    {2, 0, 128}, {2, 1, -36}, {2, 2, 24}, {2, 3, 1},
    {1, 1, 224}, {1, 2, -124}, {1, 3, -10},
    {0, 0, -256}, {0, 1, -304}, {0, 2, 104}, {0, 3, 24},
}};

// Rows are x^4 .. x^0; each row holds (outer factor, y^0..y^5) before expansion.
struct F6Row {
    int x_deg;
    std::int64_t factor;
    std::array<std::int64_t, 6> y;
};
inline constexpr std::array<F6Row, 5> kF6{{
    {4, 1, {6144, 6496, -1816, 60, 50, 1}},
    {3, -4, {10496, 6520, -3676, 508, 266, 7}},
    {2, 4, {256, -10288, -15032, 1952, 1846, 71}},
    {1, -16, {-5120, -10840, -9428, -148, 1186, 77}},
    {0, 64, {-448, -1596, -1860, -299, 204, 30}},
}};

// Homogeneous bivariate forms in (m1, m2): coefficient k multiplies m1^(deg-k) m2^k.
inline constexpr std::array<std::int64_t, 23> kP0{
    7,     74,    321,   955,   2335,  4925,  9261,  15383, 22843, 29992, 35297, 37102,
    35297, 29992, 22843, 15383, 9261,  4925,  2335,  955,   321,   74,    7};
inline constexpr std::array<std::int64_t, 17> kP1{21,   136,  457,  1104, 2049, 3284,
                                                  4510, 5516, 5830, 5516, 4510, 3284,
                                                  2049, 1104, 457,  136,  21};
inline constexpr std::array<std::int64_t, 11> kOmega{1, 2, 1, 4, 9, 15, 9, 4, 1, 2, 1};
// m1^4 + m1^3 m2 + 3 m1^2 m2^2 + m1 m2^3 + m2^4
inline constexpr std::array<std::int64_t, 5> kQuartic{1, 1, 3, 1, 1};

// Equal-pair Newtonian: d4 numerator polynomial in mu and d6 bracket polynomial in mu.
inline constexpr std::array<std::int64_t, 3> kEqualPairD4{-1597, -1576, 432};
inline constexpr std::array<std::int64_t, 6> kEqualPairD6{315165,  2686088, 6911872,
                                                          4944512, 443136,  110592};

}  // namespace threebody::tables

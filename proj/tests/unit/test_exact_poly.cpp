#include <gtest/gtest.h>

#include <random>
#include <set>

#include "threebody/bipoly.hpp"
#include "threebody/errors.hpp"
#include "threebody/sturm.hpp"
#include "threebody/unipoly.hpp"

using namespace threebody;

namespace {

UniPoly random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<long long> c(-20, 20);
    std::vector<BigRational> v;
    for (int i = 0; i <= degree; ++i) v.emplace_back(c(rng), 1 + std::abs(c(rng)) % 5);
    if (v.back() == 0) v.back() = BigRational(1);
    return UniPoly(v);
}

/// Sign changes of p over n + 1 equally spaced rational samples on [lo, hi].
int brute_force_sign_changes(const UniPoly& p, const BigRational& lo, const BigRational& hi, int n) {
    int changes = 0, last = 0;
    for (int k = 0; k <= n; ++k) {
        const BigRational x = lo + (hi - lo) * BigRational(k, n);
        const int s = sign(p(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

TEST(UniPoly, RingLaws) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 30; ++k) {
        const auto a = random_poly(rng, 4), b = random_poly(rng, 3), c = random_poly(rng, 5);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a - a, UniPoly());
        EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
    }
}

TEST(UniPoly, DivisionIdentity) {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 30; ++k) {
        const auto a = random_poly(rng, 6), b = random_poly(rng, 3);
        const auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
        EXPECT_EQ(exact_div(a * b, b), a);
        EXPECT_TRUE(divides(b, a * b));
    }
    EXPECT_THROW(exact_div(UniPoly{1, 0, 1}, UniPoly{1, 1}), Error);
}

TEST(UniPoly, GcdAndEvaluation) {
    const UniPoly p = UniPoly{-1, 1} * UniPoly{-2, 1} * UniPoly{3, 1};
    const UniPoly q = UniPoly{-1, 1} * UniPoly{5, 1};
    EXPECT_EQ(gcd(p, q), (UniPoly{-1, 1}));
    EXPECT_EQ(p(BigRational(2)), 0);
    EXPECT_EQ(p(BigRational(0)), 6);
    EXPECT_EQ(p.derivative(), (UniPoly{-7, 0, 3}));
    EXPECT_EQ((UniPoly{1, 1}.pow(3)), (UniPoly{1, 3, 3, 1}));
    EXPECT_EQ(UniPoly().degree(), -1);
}

TEST(BiPoly, ArithmeticAndEvaluation) {
    BiPoly f;
    f.add_term(1, 0, BigRational(1));
    f.add_term(0, 1, BigRational(-1));  // x - y
    BiPoly g;
    g.add_term(1, 0, BigRational(1));
    g.add_term(0, 1, BigRational(1));  // x + y
    const BiPoly h = f * g;             // x^2 - y^2
    EXPECT_EQ(h.coeff(2, 0), 1);
    EXPECT_EQ(h.coeff(1, 1), 0);
    EXPECT_EQ(h.coeff(0, 2), -1);
    EXPECT_EQ(h(BigRational(3), BigRational(2)), 5);
    EXPECT_FALSE(h.is_x_free());
    EXPECT_TRUE((h - h).is_zero());
    const auto mm = first_mismatch(f, g);
    ASSERT_TRUE(mm.has_value());
    EXPECT_EQ(mm->monomial, (BiPoly::Monomial{0, 1}));
}

TEST(Resultant, LinearAndQuadraticCases) {
    // Res_x(x - y, x^2 - 2) = y^2 - 2
    BiPoly f;
    f.add_term(1, 0, BigRational(1));
    f.add_term(0, 1, BigRational(-1));
    BiPoly g;
    g.add_term(2, 0, BigRational(1));
    g.add_term(0, 0, BigRational(-2));
    EXPECT_EQ(resultant_x(f, g), (UniPoly{-2, 0, 1}));

    // Res_x(x^2 + y, x^2 - y) = 4 y^2 (common root only at y = 0)
    BiPoly a, b;
    a.add_term(2, 0, BigRational(1));
    a.add_term(0, 1, BigRational(1));
    b.add_term(2, 0, BigRational(1));
    b.add_term(0, 1, BigRational(-1));
    EXPECT_EQ(resultant_x(a, b), (UniPoly{0, 0, 4}));
}

TEST(Sturm, KnownRoots) {
    const UniPoly p = UniPoly{1, 2} * UniPoly{-1, 3} * UniPoly{-5, 1} * UniPoly{7, 1};  // -1/2, 1/3, 5, -7
    EXPECT_EQ(sturm_count(p, std::nullopt, std::nullopt), 4);
    EXPECT_EQ(sturm_count(p, BigRational(0), std::nullopt), 2);
    EXPECT_EQ(sturm_count(p, BigRational(-1), BigRational(1)), 2);
    EXPECT_EQ(sturm_count(p, BigRational(1, 3), BigRational(5)), 1);  // (1/3, 5]
    EXPECT_EQ(sturm_count(UniPoly{1, 0, 1}, std::nullopt, std::nullopt), 0);
    EXPECT_THROW(sturm_chain(UniPoly{-1, 1} * UniPoly{-1, 1}), NotSquarefree);
}

TEST(Sturm, AgreesWithBruteForceOnRandomCubicsAndQuartics) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> root(-40, 40);
    const BigRational lo(-3), hi(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int degree = 3 + trial % 2;
        // distinct rational roots spaced at least 1/10 apart, so a 10^4 grid sees every crossing;
        // none on the endpoints, where a sign scan cannot see them
        std::set<int> roots;
        while (static_cast<int>(roots.size()) < degree) {
            const int r = root(rng);
            if (std::abs(r) != 30) roots.insert(r);
        }
        UniPoly p{1};
        for (int r : roots) p *= UniPoly{-r, 10};
        const int sturm = sturm_count(p, lo, hi);
        const int brute = brute_force_sign_changes(p, lo, hi, 10000);
        EXPECT_EQ(sturm, brute) << p.to_string();
        int inside = 0;
        for (int r : roots) inside += (r > -30 && r <= 30);
        EXPECT_EQ(sturm, inside);
    }
    // random integer polynomials: brute force can only miss pairs of roots
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_poly(rng, 3 + trial % 2);
        if (gcd(p, p.derivative()).degree() > 0) continue;
        const int sturm = sturm_count(p, lo, hi);
        const int brute = brute_force_sign_changes(p, lo, hi, 10000);
        EXPECT_LE(brute, sturm);
        EXPECT_EQ((sturm - brute) % 2, 0);
    }
}

TEST(Sqrt, EnclosureBracketsAndTightens) {
    const auto e = sqrt_enclosure(BigRational(2), 40);
    EXPECT_LE(e.lower * e.lower, BigRational(2));
    EXPECT_GE(e.upper * e.upper, BigRational(2));
    EXPECT_LT(e.upper - e.lower, BigRational(BigInt(1), boost::multiprecision::pow(BigInt(10), 40)));
    EXPECT_GE(e.lower, BigRational(181, 128));
    const auto q = sqrt_enclosure(BigRational(9, 4), 10);
    EXPECT_LE(q.lower, BigRational(3, 2));
    EXPECT_GE(q.upper, BigRational(3, 2));
}

TEST(Sqrt, IndeterminateWhenStraddlingZero) {
    const auto e = sqrt_enclosure(BigRational(2), 20);
    EXPECT_THROW(sign_at(UniPoly{-2, 0, 1}, e), IndeterminateEnclosure);
    EXPECT_EQ(sign_at(UniPoly{-1, 1}, e), 1);
    EXPECT_EQ(sign_at(UniPoly{-2, 1}, e), -1);
}

TEST(QuadraticSurd, ExactEvaluationAndSign) {
    // (y^2 + y - 1)(sqrt 2) = 1 + sqrt 2
    const auto q = evaluate_at_sqrt(UniPoly{-1, 1, 1}, BigRational(2));
    EXPECT_EQ(q.a, 1);
    EXPECT_EQ(q.b, 1);
    EXPECT_EQ(sign(q), 1);
    EXPECT_EQ(sign(QuadraticSurd{BigRational(-3), BigRational(2), BigRational(2)}), -1);   // -3 + 2.83
    EXPECT_EQ(sign(QuadraticSurd{BigRational(-2), BigRational(1), BigRational(4)}), 0);    // -2 + 2
    EXPECT_EQ(sign(QuadraticSurd{BigRational(3), BigRational(-2), BigRational(2)}), 1);    // 3 - 2.83
}

TEST(IntervalHorner, EnclosesRange) {
    const UniPoly p{1, -3, 0, 1};
    const auto iv = evaluate_interval(p, BigRational(0), BigRational(1, 2));
    for (int k = 0; k <= 100; ++k) {
        const BigRational x(k, 200);
        EXPECT_LE(iv.lo, p(x));
        EXPECT_GE(iv.hi, p(x));
    }
}

#include "threebody/sturm.hpp"

#include <cmath>

#include "threebody/errors.hpp"

namespace threebody {

SturmChain sturm_chain(const UniPoly& p) {
    if (p.is_zero()) throw InvalidArgument("Sturm chain of the zero polynomial");
    const UniPoly dp = p.derivative();
    if (!gcd(p, dp).is_constant()) throw NotSquarefree();
    SturmChain sc{p, {p}};
    if (dp.is_zero()) return sc;
    sc.chain.push_back(dp);
    while (true) {
        const auto& prev = sc.chain[sc.chain.size() - 2];
        const auto& cur = sc.chain.back();
        UniPoly r = -(prev % cur);
        if (r.is_zero()) break;
        sc.chain.push_back(std::move(r));
    }
    return sc;
}

namespace {

int count_changes(const std::vector<int>& signs) {
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int sign_variations(const SturmChain& sc, const BigRational& x) {
    std::vector<int> signs;
    signs.reserve(sc.chain.size());
    for (const auto& q : sc.chain) signs.push_back(sign(q(x)));
    return count_changes(signs);
}

int sign_variations_at_infinity(const SturmChain& sc, bool plus) {
    std::vector<int> signs;
    for (const auto& q : sc.chain) {
        int s = sign(q.leading());
        if (!plus && q.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return count_changes(signs);
}

int sturm_count(const UniPoly& p, const std::optional<BigRational>& lo,
                const std::optional<BigRational>& hi) {
    if (lo && hi && *lo >= *hi) return 0;
    const SturmChain sc = sturm_chain(p);
    const int va = lo ? sign_variations(sc, *lo) : sign_variations_at_infinity(sc, false);
    const int vb = hi ? sign_variations(sc, *hi) : sign_variations_at_infinity(sc, true);
    return va - vb;
}

SqrtEnclosure sqrt_enclosure(const BigRational& radicand, int digits) {
    if (radicand < 0) throw InvalidArgument("negative radicand");
    if (radicand == 0) return {radicand, BigRational(0), BigRational(0)};
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits + 4));
    const BigRational tol = BigRational(1) / boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));

    // Round x up onto the grid 1/scale so iterates stay short and remain upper bounds.
    auto round_up = [&](const BigRational& x) {
        const BigInt num = numerator(x) * scale;
        const BigInt den = denominator(x);
        BigInt q = num / den;
        if (q * den < num) q += 1;
        return BigRational(q, scale);
    };

    BigRational upper = radicand > 1 ? radicand : BigRational(1);
    const double guess = std::sqrt(radicand.convert_to<double>()) * (1 + 1e-12);
    if (std::isfinite(guess) && guess > 0) {
        const BigRational g = round_up(BigRational(guess));
        if (g * g >= radicand && g < upper) upper = g;
    }
    BigRational lower = radicand / upper;
    for (int iter = 0; iter < 200 && upper - lower >= tol; ++iter) {
        upper = round_up((upper + radicand / upper) / 2);
        lower = radicand / upper;
    }
    if (upper - lower >= tol) throw Error("sqrt enclosure did not converge");
    return {radicand, lower, upper};
}

int sign_at(const UniPoly& p, const BigRational& x) { return sign(p(x)); }

RationalInterval evaluate_interval(const UniPoly& p, const BigRational& lo, const BigRational& hi) {
    RationalInterval acc{BigRational(0), BigRational(0)};
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        // acc * [lo, hi]
        const BigRational cands[4] = {acc.lo * lo, acc.lo * hi, acc.hi * lo, acc.hi * hi};
        BigRational mn = cands[0], mx = cands[0];
        for (const auto& v : cands) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        acc = {mn + *it, mx + *it};
    }
    return acc;
}

int sign_at(const UniPoly& p, const SqrtEnclosure& x) {
    const auto range = evaluate_interval(p, x.lower, x.upper);
    if (range.lo > 0) return 1;
    if (range.hi < 0) return -1;
    if (range.lo == 0 && range.hi == 0) return 0;
    throw IndeterminateEnclosure();
}

QuadraticSurd evaluate_at_sqrt(const UniPoly& p, const BigRational& r) {
    if (!(r > 0)) throw InvalidArgument("radicand must be positive");
    QuadraticSurd q{BigRational(0), BigRational(0), r};
    BigRational rk(1);  // r^(k/2) for even k, r^((k-1)/2) for odd k
    for (int k = 0; k <= p.degree(); ++k) {
        if (k > 0 && k % 2 == 0) rk *= r;
        if (k % 2 == 0) q.a += p.coeff(k) * rk;
        else q.b += p.coeff(k) * rk;
    }
    return q;
}

int sign(const QuadraticSurd& q) {
    // sign(a + b sqrt r): compare a^2 with b^2 r when the signs disagree.
    const int sa = sign(q.a), sb = sign(q.b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    const BigRational lhs = q.a * q.a;
    const BigRational rhs = q.b * q.b * q.r;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

}  // namespace threebody

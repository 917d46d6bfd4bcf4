#include "threebody/appendix.hpp"

#include <chrono>
#include <cmath>

#include <json.hpp>

#include "threebody/consistency_tables.hpp"
#include "threebody/errors.hpp"
#include "threebody/format.hpp"

namespace threebody::appendix {

namespace {

UniPoly poly(std::initializer_list<long long> c) { return UniPoly(c); }

// L(x, y) = x A(y) - 4 B(y)
const UniPoly& L_x1() {
    static const UniPoly p = poly({268435456LL, 5704253440LL, -4900519936LL, -10788732928LL,
                                   1665391872LL, -2044335168LL, -339308448LL, -16071552LL,
                                   3559728LL, -160420LL, 31166LL, 2482LL, 31LL});
    return p;
}
const UniPoly& L_x0() {
    static const UniPoly p = poly({67108864LL, -2313158656LL, -803405824LL, 6805321728LL,
                                   4795789440LL, -1930678368LL, -379246848LL, -11684784LL,
                                   1953024LL, 113414LL, -4550LL, 2707LL, 45LL});
    return p;
}

// M(x, y) = x^3 C(y) - 2 x^2 D(y) + 8 x E(y) - 32 F(y)
const UniPoly& M_x3() {
    static const UniPoly p = poly({12884901888LL, 291051143168LL, 129899692032LL,
                                   -865502298112LL, -665337083904LL, 113529684992LL,
                                   12851181696LL, -4933789824LL, -907026720LL, 25947264LL,
                                   2714152LL, -299016LL, 79330LL, 3288LL, 31LL});
    return p;
}
const UniPoly& M_x2() {
    static const UniPoly p = poly({50465865728LL, 773060558848LL, -95409930240LL,
                                   -2156632178688LL, -752601498624LL, 570103937280LL,
                                   -53961508992LL, -60918928512LL, -6690174624LL, 59713360LL,
                                   43040792LL, -1087920LL, 657030LL, 33936LL, 369LL});
    return p;
}
const UniPoly& M_x1() {
    static const UniPoly p = poly({14495514624LL, -274861129728LL, -257627258880LL,
                                   562210586624LL, 1106047222784LL, 651747223040LL,
                                   -45793043520LL, -80250740736LL, -9184728480LL, -48378720LL,
                                   67514796LL, -1554720LL, 605392LL, 54856LL, 715LL});
    return p;
}
const UniPoly& M_x0() {
    static const UniPoly p = poly({1006632960LL, -19713228800LL, -94432198656LL, -4409028608LL,
                                   275213442304LL, 281906870976LL, 33707210784LL,
                                   -29192050368LL, -4054720752LL, -83636004LL, 22319090LL,
                                   845634LL, 17501LL, 28166LL, 450LL});
    return p;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// g+ and g- as polynomials in (beta, z) with z = 2^beta.
BiPoly g_plus_poly() {
    BiPoly g;
    g.add_term(2, 3, BigRational(128));
    g.add_term(2, 1, BigRational(24));
    g.add_term(2, 0, BigRational(1));
    g.add_term(1, 1, BigRational(124));
    g.add_term(1, 0, BigRational(10));
    g.add_term(0, 1, BigRational(104));
    g.add_term(0, 0, BigRational(24));
    return g;
}

BiPoly g_minus_poly() {
    BiPoly g;
    g.add_term(2, 2, BigRational(36));
    g.add_term(1, 2, BigRational(224));
    g.add_term(0, 3, BigRational(256));
    g.add_term(0, 2, BigRational(304));
    return g;
}

// y^3 g(beta = -x, z = 1/y); valid because deg_z g <= 3.
BiPoly to_xy(const BiPoly& g) {
    BiPoly out;
    for (const auto& [mono, c] : g.terms()) {
        const BigRational sgn = mono.first % 2 ? BigRational(-1) : BigRational(1);
        out.add_term(mono.first, 3 - mono.second, c * sgn);
    }
    return out;
}

// g(beta, sqrt(2)^k) with beta = 1/2: exact a + b sqrt(2).
QuadraticSurd eval_half(const BiPoly& g) {
    QuadraticSurd q{BigRational(0), BigRational(0), BigRational(2)};
    for (const auto& [mono, c] : g.terms()) {
        BigRational t = c;
        for (int i = 0; i < mono.first; ++i) t /= 2;
        // 2^(k/2)
        BigRational p2(1);
        for (int i = 0; i < mono.second / 2; ++i) p2 *= 2;
        if (mono.second % 2) q.b += t * p2;
        else q.a += t * p2;
    }
    return q;
}

Claim make_claim(std::string name, bool pass, Clock::time_point t0,
                 std::vector<std::pair<std::string, std::string>> witness) {
    return Claim{std::move(name), pass, std::move(witness), seconds_since(t0)};
}

}  // namespace

BiPoly f4() {
    BiPoly p;
    for (const auto& t : tables::kF4) p.add_term(t.x_deg, t.y_deg, BigRational(t.coeff));
    return p;
}

BiPoly f6() {
    BiPoly p;
    for (const auto& row : tables::kF6) {
        for (std::size_t j = 0; j < row.y.size(); ++j) {
            p.add_term(row.x_deg, static_cast<int>(j), BigRational(row.factor * row.y[j]));
        }
    }
    return p;
}

BiPoly bezout_L() {
    return BiPoly::from_x_coeffs({L_x0() * BigRational(-4), L_x1()});
}

BiPoly bezout_M() {
    return BiPoly::from_x_coeffs(
        {M_x0() * BigRational(-32), M_x1() * BigRational(8), M_x2() * BigRational(-2), M_x3()});
}

UniPoly residual_factor() {
    return poly({-65536, -10276864, -5027392, 25146656, 27552272, 7538528, -180256, -27646, 944,
                 21});
}

UniPoly R_factored() {
    const UniPoly y16 = poly({-16, 1});
    const UniPoly y4 = poly({-4, 1});
    const UniPoly y2 = poly({2, 1});
    return BigRational(-512) * y16 * y4.pow(4) * y2.pow(2) * residual_factor();
}

BezoutVerdict verify_bezout(const BiPoly& L, const BiPoly& M, const BiPoly& F4, const BiPoly& F6,
                            const UniPoly& R) {
    BezoutVerdict v;
    const BiPoly lhs = L * F6 - M * F4;
    v.x_free = lhs.is_x_free();
    if (v.x_free) v.lhs_y = lhs.to_y();
    v.mismatch = first_mismatch(lhs, BiPoly::from_y(R));
    v.holds = !v.mismatch.has_value();
    return v;
}

BezoutVerdict verify_bezout() {
    return verify_bezout(bezout_L(), bezout_M(), f4(), f6(), R_factored());
}

FactorizationVerdict verify_R_factorization() {
    FactorizationVerdict v;
    v.expanded = R_factored();
    const BiPoly lhs = bezout_L() * f6() - bezout_M() * f4();
    if (!lhs.is_x_free()) return v;
    v.computed = lhs.to_y();
    v.holds = v.computed == v.expanded;
    return v;
}

ResultantVerdict verify_resultant() {
    ResultantVerdict v;
    v.resultant = resultant_x(f4(), f6());
    const UniPoly known = poly({-4, 1}) * poly({-16, 1}) * residual_factor();
    v.divisible = !v.resultant.is_zero() && divides(known, v.resultant);
    return v;
}

GBoundsVerdict verify_g_bounds(int digits) {
    GBoundsVerdict v;
    const BiPoly gp = g_plus_poly();
    const BiPoly gm = g_minus_poly();
    v.identity_holds = (to_xy(gp) - to_xy(gm)) == f4();

    v.monotone = true;
    for (const auto* g : {&gp, &gm}) {
        for (const auto& [mono, c] : g->terms()) {
            if (c < 0) v.monotone = false;
        }
    }

    v.g_minus_half = eval_half(gm);
    v.g_plus_one = gp(BigRational(1), BigRational(2));
    v.sqrt2_lower = sqrt_enclosure(BigRational(2), digits).lower;
    v.g_minus_half_lower = v.g_minus_half.a + v.g_minus_half.b * v.sqrt2_lower;
    v.threshold = BigRational(1566);
    v.contradiction = v.identity_holds && v.monotone && v.g_minus_half_lower > v.threshold &&
                      v.threshold > v.g_plus_one;
    return v;
}

double g_plus(double b) {
    const double z = std::exp2(b);
    return b * b * (128 * z * z * z + 24 * z + 1) + 2 * b * (62 * z + 5) + 8 * (13 * z + 3);
}

double g_minus(double b) {
    const double z = std::exp2(b);
    return 36 * b * b * z * z + 224 * b * z * z + 16 * (16 * z * z * z + 19 * z * z);
}

Certificate certify(int digits) {
    const auto t_start = Clock::now();
    Certificate cert;
    const UniPoly f = residual_factor();

    auto t0 = Clock::now();
    const auto bez = verify_bezout();
    cert.claims.push_back(make_claim(
        "bezout_identity", bez.holds, t0,
        {{"identity", "L*f6 - M*f4 = R(y)"},
         {"mismatch", bez.mismatch ? "x^" + std::to_string(bez.mismatch->monomial.first) + "*y^" +
                                         std::to_string(bez.mismatch->monomial.second)
                                   : "none"}}));

    t0 = Clock::now();
    const auto fac = verify_R_factorization();
    cert.claims.push_back(make_claim("R_factorization", fac.holds, t0,
                                     {{"R", "-512*(y-16)*(y-4)^4*(y+2)^2*f(y)"},
                                      {"degree", std::to_string(fac.expanded.degree())}}));

    t0 = Clock::now();
    const auto res = verify_resultant();
    cert.claims.push_back(make_claim(
        "resultant_divisible_by_known_factors", res.divisible, t0,
        {{"resultant_degree", std::to_string(res.resultant.degree())},
         {"resultant_leading", res.resultant.is_zero() ? "0" : format_rational(res.resultant.leading())},
         {"divisor", "(y-4)*(y-16)*f(y)"}}));

    // Linear factors of R in y = 2^alpha > 0: y = 4 -> alpha = 2, y = 16 -> alpha = 4;
    // y = -2 is inadmissible.
    t0 = Clock::now();
    const BiPoly F4 = f4(), F6 = f6();
    const bool two_four = F4(BigRational(2), BigRational(4)) == 0 &&
                          F6(BigRational(2), BigRational(4)) == 0 &&
                          F4(BigRational(4), BigRational(16)) == 0 &&
                          F6(BigRational(4), BigRational(16)) == 0;
    cert.claims.push_back(make_claim("alpha_2_and_4_are_common_roots", two_four, t0,
                                     {{"f4(2,4)", format_rational(F4(BigRational(2), BigRational(4)))},
                                      {"f6(2,4)", format_rational(F6(BigRational(2), BigRational(4)))},
                                      {"f4(4,16)", format_rational(F4(BigRational(4), BigRational(16)))},
                                      {"f6(4,16)", format_rational(F6(BigRational(4), BigRational(16)))}}));

    t0 = Clock::now();
    const int positive_roots = sturm_count(f, BigRational(0), std::nullopt);
    cert.claims.push_back(make_claim("f_has_one_positive_root", positive_roots == 1, t0,
                                     {{"sturm_count(0,+inf)", std::to_string(positive_roots)},
                                      {"chain_length", std::to_string(sturm_chain(f).chain.size())}}));

    t0 = Clock::now();
    const BigRational f_half = f(BigRational(1, 2));
    const bool half_ok = f_half == BigRational(-697813379, 512);
    cert.claims.push_back(make_claim("f(1/2)=-697813379/512<0", half_ok && f_half < 0, t0,
                                     {{"f(1/2)", format_rational(f_half)}}));

    t0 = Clock::now();
    const QuadraticSurd f_isq = evaluate_at_sqrt(f, BigRational(1, 2));
    const SqrtEnclosure isq = sqrt_enclosure(BigRational(1, 2), digits);
    int enclosure_sign = 0;
    try {
        enclosure_sign = sign_at(f, isq);
    } catch (const IndeterminateEnclosure&) {
        enclosure_sign = 0;
    }
    const bool isq_exact = f_isq.a == BigRational(4286363) && f_isq.b == BigRational(66842265, 16);
    cert.claims.push_back(make_claim(
        "f(1/sqrt2)=4286363+66842265/(16*sqrt2)>0", isq_exact && enclosure_sign > 0 && sign(f_isq) > 0,
        t0,
        {{"rational_part", format_rational(f_isq.a)},
         {"coefficient_of_1/sqrt2", format_rational(f_isq.b)},
         {"enclosure_digits", std::to_string(digits)},
         {"enclosure_lower", format_rational(isq.lower)},
         {"enclosure_upper", format_rational(isq.upper)}}));

    // With a unique positive root and a sign change on [1/2, 1/sqrt2], y0 lies there, so
    // alpha0 = log2(y0) lies in (-1, -1/2); both endpoints are exact powers of two.
    t0 = Clock::now();
    const bool bracket = positive_roots == 1 && f_half < 0 && enclosure_sign > 0;
    cert.claims.push_back(make_claim("root_bracket", bracket, t0,
                                     {{"y0_interval", "(1/2, 1/sqrt2)"},
                                      {"alpha0_interval", "(-1, -1/2)"}}));

    t0 = Clock::now();
    const auto g = verify_g_bounds(digits);
    cert.claims.push_back(make_claim(
        "g_bounds_exclude_alpha0", g.contradiction, t0,
        {{"g-(1/2)", format_rational(g.g_minus_half.a) + "+" + format_rational(g.g_minus_half.b) + "*sqrt2"},
         {"g-(1/2)_lower", format_rational(g.g_minus_half_lower)},
         {"threshold", format_rational(g.threshold)},
         {"g+(1)", format_rational(g.g_plus_one)},
         {"identity_f4=2^(3a)(g+-g-)", g.identity_holds ? "true" : "false"},
         {"monotone", g.monotone ? "true" : "false"}}));

    cert.pass = true;
    for (const auto& c : cert.claims) cert.pass = cert.pass && c.pass;
    if (cert.pass) cert.common_roots = {2, 4};
    cert.seconds = seconds_since(t_start);
    return cert;
}

std::string to_json(const Certificate& cert, bool include_timing, int indent) {
    nlohmann::ordered_json j;
    auto claims = nlohmann::ordered_json::array();
    for (const auto& c : cert.claims) {
        nlohmann::ordered_json cj;
        cj["claim"] = c.name;
        cj["status"] = c.pass ? "pass" : "fail";
        nlohmann::ordered_json w = nlohmann::ordered_json::object();
        for (const auto& [k, val] : c.witness) w[k] = val;
        cj["witness"] = w;
        if (include_timing) cj["seconds"] = format_real(c.seconds);
        claims.push_back(cj);
    }
    j["claims"] = claims;
    j["common_roots_alpha"] = cert.common_roots;
    j["verdict"] = cert.pass ? "common roots of f4, f6 over alpha are {2,4}" : "certificate failed";
    j["status"] = cert.pass ? "pass" : "fail";
    if (include_timing) j["seconds"] = format_real(cert.seconds);
    return j.dump(indent) + "\n";
}

}  // namespace threebody::appendix

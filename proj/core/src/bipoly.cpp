#include "threebody/bipoly.hpp"

#include <algorithm>
#include <sstream>

#include "threebody/errors.hpp"

namespace threebody {

BiPoly BiPoly::from_y(const UniPoly& p) {
    BiPoly out;
    for (int j = 0; j <= p.degree(); ++j) out.add_term(0, j, p.coeff(j));
    return out;
}

BiPoly BiPoly::from_x_coeffs(const std::vector<UniPoly>& coeffs) {
    BiPoly out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (int j = 0; j <= coeffs[i].degree(); ++j) {
            out.add_term(static_cast<int>(i), j, coeffs[i].coeff(j));
        }
    }
    return out;
}

void BiPoly::add_term(int deg_x, int deg_y, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace({deg_x, deg_y}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BigRational BiPoly::coeff(int deg_x, int deg_y) const {
    auto it = terms_.find({deg_x, deg_y});
    return it == terms_.end() ? BigRational(0) : it->second;
}

int BiPoly::degree_x() const {
    int d = -1;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.first);
    return d;
}

int BiPoly::degree_y() const {
    int d = -1;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.second);
    return d;
}

std::vector<UniPoly> BiPoly::x_coeffs() const {
    const int dx = degree_x();
    if (dx < 0) return {};
    std::vector<std::vector<BigRational>> raw(static_cast<std::size_t>(dx) + 1);
    for (const auto& [mono, c] : terms_) {
        auto& row = raw[static_cast<std::size_t>(mono.first)];
        if (row.size() <= static_cast<std::size_t>(mono.second)) row.resize(mono.second + 1);
        row[static_cast<std::size_t>(mono.second)] = c;
    }
    std::vector<UniPoly> out;
    out.reserve(raw.size());
    for (auto& row : raw) out.emplace_back(std::move(row));
    return out;
}

UniPoly BiPoly::to_y() const {
    if (!is_x_free()) throw InvalidArgument("polynomial depends on x");
    auto xc = x_coeffs();
    return xc.empty() ? UniPoly{} : xc.front();
}

BigRational BiPoly::operator()(const BigRational& x, const BigRational& y) const {
    BigRational acc(0);
    for (const auto& [mono, c] : terms_) {
        BigRational t = c;
        for (int i = 0; i < mono.first; ++i) t *= x;
        for (int j = 0; j < mono.second; ++j) t *= y;
        acc += t;
    }
    return acc;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono.first, mono.second, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono.first, mono.second, -c);
    return *this;
}

BiPoly& BiPoly::operator*=(const BigRational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            out.add_term(ma.first + mb.first, ma.second + mb.second, ca * cb);
        }
    }
    return out;
}

std::string BiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [mono, c] = *it;
        if (!first) os << " + ";
        os << "(" << c << ")";
        if (mono.first) os << "*x^" << mono.first;
        if (mono.second) os << "*y^" << mono.second;
        first = false;
    }
    return os.str();
}

std::optional<MonomialMismatch> first_mismatch(const BiPoly& a, const BiPoly& b) {
    const BiPoly diff = a - b;
    if (diff.is_zero()) return std::nullopt;
    const auto& [mono, c] = *diff.terms().begin();
    return MonomialMismatch{mono, a.coeff(mono.first, mono.second), b.coeff(mono.first, mono.second)};
}

namespace {

// Polynomial in x with coefficients in Q[y], dense ascending.
using XPoly = std::vector<UniPoly>;

void trim(XPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const XPoly& p) { return static_cast<int>(p.size()) - 1; }

// lc(b)^(deg a - deg b + 1) a = q b + r
XPoly pseudo_remainder(XPoly a, const XPoly& b) {
    const int db = deg(b);
    int e = deg(a) - db + 1;
    const UniPoly& lb = b.back();
    while (!a.empty() && deg(a) >= db) {
        const UniPoly lr = a.back();
        const int shift = deg(a) - db;
        for (auto& c : a) c *= lb;
        for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(j + shift)] -= lr * b[static_cast<std::size_t>(j)];
        trim(a);
        --e;
    }
    if (e > 0) {
        const UniPoly f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

UniPoly power(const UniPoly& p, int n) { return p.pow(static_cast<unsigned>(n)); }

}  // namespace

UniPoly resultant_x(const BiPoly& f, const BiPoly& g) {
    XPoly a = f.x_coeffs();
    XPoly b = g.x_coeffs();
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return {};

    BigRational s(1);
    if (deg(a) < deg(b)) {
        if (deg(a) % 2 == 1 && deg(b) % 2 == 1) s = -s;
        std::swap(a, b);
    }
    if (deg(b) == 0) return power(b[0], deg(a)) * s;

    UniPoly gg = UniPoly::constant(BigRational(1));
    UniPoly h = UniPoly::constant(BigRational(1));
    while (true) {
        const int delta = deg(a) - deg(b);
        if (deg(a) % 2 == 1 && deg(b) % 2 == 1) s = -s;
        XPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.empty()) return {};
        const UniPoly divisor = gg * power(h, delta);
        for (auto& c : r) c = exact_div(c, divisor);
        b = std::move(r);
        gg = a.back();
        // h <- g^delta / h^(delta - 1)
        if (delta > 0) h = exact_div(power(gg, delta), power(h, delta - 1));
        if (deg(b) == 0) {
            const int da = deg(a);
            return exact_div(power(b[0], da), power(h, da - 1)) * s;
        }
    }
}

}  // namespace threebody

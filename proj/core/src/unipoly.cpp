#include "threebody/unipoly.hpp"

#include <sstream>

#include "threebody/errors.hpp"

namespace threebody {

UniPoly::UniPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<long long> coeffs) {
    c_.reserve(coeffs.size());
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
}

UniPoly UniPoly::constant(BigRational c) { return UniPoly(std::vector<BigRational>{std::move(c)}); }

UniPoly UniPoly::monomial(BigRational c, int degree) {
    std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = std::move(c);
    return UniPoly(std::move(v));
}

UniPoly UniPoly::linear_root(const BigRational& r) {
    return UniPoly(std::vector<BigRational>{-r, BigRational(1)});
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational UniPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return BigRational(0);
    return c_[static_cast<std::size_t>(i)];
}

const BigRational& UniPoly::leading() const {
    if (c_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
    return c_.back();
}

BigRational UniPoly::operator()(const BigRational& y) const {
    BigRational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigRational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::pow(unsigned n) const {
    UniPoly result = constant(BigRational(1));
    UniPoly base = *this;
    while (n) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n) base *= base;
    }
    return result;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    UniPoly out = *this;
    out *= BigRational(1) / leading();
    return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<BigRational> out(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(out);
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const BigRational& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
}

UniPoly operator-(UniPoly a) {
    for (auto& c : a.c_) c = -c;
    return a;
}

std::string UniPoly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const auto& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        const BigRational mag = c < 0 ? BigRational(-c) : c;
        if (i == 0 || mag != 1) os << mag;
        if (i > 0) os << (i == 0 || mag != 1 ? "*" : "") << var;
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<BigRational> rem = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) return {UniPoly{}, a};
    std::vector<BigRational> quot(static_cast<std::size_t>(da - db) + 1);
    const BigRational inv_lead = BigRational(1) / b.leading();
    for (int k = da - db; k >= 0; --k) {
        const BigRational q = rem[static_cast<std::size_t>(k + db)] * inv_lead;
        quot[static_cast<std::size_t>(k)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("inexact polynomial division");
    return q;
}

bool divides(const UniPoly& d, const UniPoly& a) { return (a % d).is_zero(); }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

int sign(const BigRational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace threebody

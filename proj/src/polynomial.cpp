#include "thumbtack/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "thumbtack/modular.hpp"

namespace thumbtack {

RationalPoly::RationalPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

RationalPoly::RationalPoly(std::initializer_list<BigRational> coeffs) : coeffs_(coeffs) { normalize(); }

RationalPoly RationalPoly::constant(const BigRational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const BigRational& c, std::size_t degree) {
    std::vector<BigRational> v(degree + 1);
    v[degree] = c;
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::binomial(std::size_t n, const BigRational& a) {
    std::vector<BigRational> v(n + 1);
    v[n] = 1;
    v[0] -= a;
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::from_integers(const std::vector<BigInt>& coeffs) {
    std::vector<BigRational> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.emplace_back(c);
    return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigRational& RationalPoly::leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

RationalPoly RationalPoly::monic() const {
    if (is_zero()) return *this;
    BigRational inv = 1 / leading();
    return *this * inv;
}

RationalPoly RationalPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigRational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return RationalPoly(std::move(d));
}

BigRational RationalPoly::evaluate(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalPoly RationalPoly::compose(const RationalPoly& other) const {
    RationalPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * other;
        acc += RationalPoly::constant(*it);
    }
    return acc;
}

RationalPoly RationalPoly::shifted(const BigRational& shift) const { return compose(RationalPoly({shift, 1})); }

std::pair<BigRational, std::vector<BigInt>> RationalPoly::primitive_part() const {
    if (is_zero()) return {BigRational(0), {}};
    BigInt den_lcm = 1;
    for (const auto& c : coeffs_) den_lcm = lcm(den_lcm, denominator_of(c));
    std::vector<BigInt> ints;
    ints.reserve(coeffs_.size());
    BigInt content = 0;
    for (const auto& c : coeffs_) {
        ints.push_back(numerator_of(c) * (den_lcm / denominator_of(c)));
        content = gcd(content, ints.back());
    }
    if (ints.back() < 0) content = -content;
    for (auto& c : ints) c /= content;
    return {BigRational(content, den_lcm), std::move(ints)};
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(out));
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs) { return *this = *this * rhs; }

RationalPoly& RationalPoly::operator*=(const BigRational& c) {
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
}

RationalPoly operator-(const RationalPoly& a) { return a * BigRational(-1); }

std::string RationalPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const BigRational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigRational mag = mp::abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool unit = (mag == 1);
        if (!unit || i == 0) os << thumbtack::to_string(mag);
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {RationalPoly(), a};
    std::vector<BigRational> rem = a.coeffs();
    std::vector<BigRational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const auto& bc = b.coeffs();
    BigRational inv_lead = 1 / b.leading();
    bool monic_divisor = (b.leading() == 1);
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        auto top = static_cast<std::size_t>(k + b.degree());
        if (rem[top] == 0) continue;
        BigRational q = monic_divisor ? rem[top] : rem[top] * inv_lead;
        quot[static_cast<std::size_t>(k)] = q;
        for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= q * bc[j];
    }
    rem.resize(static_cast<std::size_t>(b.degree()));
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly operator%(const RationalPoly& a, const RationalPoly& b) { return divmod(a, b).second; }

RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        RationalPoly r = (x % y).monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

RationalPoly pow(RationalPoly base, std::uint64_t exp) {
    RationalPoly result = RationalPoly::constant(1);
    while (exp) {
        if (exp & 1u) result *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return result;
}

BigRational resultant(const RationalPoly& a0, const RationalPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return 0;
    RationalPoly a = a0, b = b0;
    BigRational acc = 1;
    while (true) {
        long da = a.degree(), db = b.degree();
        if (db == 0) return acc * ipow(b.leading(), da);
        if (da == 0) return acc * ipow(a.leading(), db);
        if (da < db) {
            if ((da * db) % 2 == 1) acc = -acc;
            std::swap(a, b);
            continue;
        }
        // res(a, b) = (-1)^(da db) res(b, a) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        RationalPoly r = a % b;
        if (r.is_zero()) return 0;
        if ((da * db) % 2 == 1) acc = -acc;
        acc *= ipow(b.leading(), da - r.degree());
        a = std::move(b);
        b = std::move(r);
    }
}

std::strong_ordering canonical_compare(const RationalPoly& a, const RationalPoly& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& x = a.coeffs()[i];
        const auto& y = b.coeffs()[i];
        if (x < y) return std::strong_ordering::less;
        if (y < x) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool is_squarefree(const RationalPoly& p) {
    if (p.degree() <= 1) return true;
    auto [c, ints] = p.primitive_part();
    int tried = 0;
    for (std::uint64_t q = 3; tried < 12; q += 2) {
        if (!is_prime(q)) continue;
        if (ints.back() % q == 0) continue;
        ++tried;
        modular::PrimeField F{q};
        auto fp = F.reduce(ints);
        if (modular::degree(fp) != p.degree()) continue;
        auto g = F.gcd(fp, F.derivative(fp));
        if (modular::degree(g) == 0) return true;
    }
    return gcd(p, p.derivative()).degree() == 0;
}

RationalPoly interpolate(const std::vector<BigRational>& xs, const std::vector<BigRational>& ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("interpolate: size mismatch");
    std::vector<BigRational> dd = ys;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    }
    RationalPoly acc;
    for (std::size_t i = n; i-- > 0;) {
        acc = acc * RationalPoly({-xs[i], 1});
        acc += RationalPoly::constant(dd[i]);
    }
    return acc;
}

}  // namespace thumbtack

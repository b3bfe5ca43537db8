#include "thumbtack/cyclotomic.hpp"
#include "thumbtack/modular.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <mutex>
#include <sstream>

namespace thumbtack {

RationalPoly cyclotomic_poly(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_poly: conductor must be positive");
    static std::mutex mutex;
    static std::map<std::uint64_t, RationalPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    RationalPoly result = RationalPoly::binomial(n, BigRational(1));
    for (std::uint64_t d : divisors(n)) {
        if (d == n) continue;
        result = exact_div(result, cyclotomic_poly(d));
    }
    std::lock_guard lock(mutex);
    cache.emplace(n, result);
    return result;
}

CyclotomicField::CyclotomicField(std::uint64_t conductor)
    : conductor_(conductor), modulus_(cyclotomic_poly(conductor)),
      degree_(static_cast<std::size_t>(modulus_.degree())) {}

FieldPtr CyclotomicField::make(std::uint64_t conductor) {
    if (conductor == 0) throw std::invalid_argument("cyclotomic field of conductor 0");
    static std::mutex mutex;
    static std::map<std::uint64_t, FieldPtr> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(conductor); it != cache.end()) return it->second;
    FieldPtr field(new CyclotomicField(conductor));
    cache.emplace(conductor, field);
    return field;
}

std::vector<BigRational> CyclotomicField::reduce(std::vector<BigRational> c) const {
    const auto& m = modulus_.coeffs();
    for (std::size_t top = c.size(); top-- > degree_;) {
        if (c[top] == 0) continue;
        BigRational q = c[top];
        std::size_t shift = top - degree_;
        for (std::size_t j = 0; j < m.size(); ++j) c[shift + j] -= q * m[j];
    }
    c.resize(degree_);
    return c;
}

CycElement CyclotomicField::zero() const { return CycElement(shared_from_this(), {}); }

CycElement CyclotomicField::one() const { return from_rational(1); }

CycElement CyclotomicField::from_rational(const BigRational& q) const {
    return CycElement(shared_from_this(), {q});
}

CycElement CyclotomicField::zeta(long long k) const {
    auto n = static_cast<long long>(conductor_);
    auto e = static_cast<std::size_t>(((k % n) + n) % n);
    std::vector<BigRational> c(e + 1);
    c[e] = 1;
    return CycElement(shared_from_this(), std::move(c));
}

CycElement CyclotomicField::from_poly(const RationalPoly& p) const {
    return CycElement(shared_from_this(), p.coeffs());
}

CycElement::CycElement(FieldPtr field, std::vector<BigRational> coeffs) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("CycElement without a field");
    coeffs_ = field_->reduce(std::move(coeffs));
}

void CycElement::check_same_field(const CycElement& rhs) const {
    if (field_->conductor() != rhs.field_->conductor())
        throw std::invalid_argument("mixing elements of different cyclotomic fields");
}

bool CycElement::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycElement::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

CycElement& CycElement::operator+=(const CycElement& rhs) {
    check_same_field(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycElement& CycElement::operator-=(const CycElement& rhs) {
    check_same_field(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

CycElement& CycElement::operator*=(const CycElement& rhs) {
    check_same_field(rhs);
    std::vector<BigRational> prod(2 * coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = field_->reduce(std::move(prod));
    return *this;
}

CycElement& CycElement::operator*=(const BigRational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

bool operator==(const CycElement& a, const CycElement& b) {
    return a.field_->conductor() == b.field_->conductor() && a.coeffs_ == b.coeffs_;
}

CycElement CycElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in a cyclotomic field");
    // Extended Euclid on (a(y), Phi(y)) over Q.
    RationalPoly r0 = field_->modulus(), r1 = as_poly();
    RationalPoly s0, s1 = RationalPoly::constant(1);
    while (r1.degree() > 0) {
        auto [q, r] = divmod(r0, r1);
        RationalPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.is_zero()) throw std::logic_error("cyclotomic modulus is not irreducible");
    return CycElement(field_, (s1 * (1 / r1.leading())).coeffs());
}

CycElement CycElement::pow(std::uint64_t e) const {
    CycElement result = field_->one(), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

BigRational CycElement::norm() const { return resultant(field_->modulus(), as_poly()); }

std::string CycElement::to_string(const std::string& var) const {
    return as_poly().to_string(var);
}

CycPoly::CycPoly(FieldPtr field, std::vector<CycElement> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    normalize();
}

CycPoly CycPoly::from_rational(FieldPtr field, const RationalPoly& p) {
    std::vector<CycElement> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.push_back(field->from_rational(q));
    return CycPoly(field, std::move(c));
}

void CycPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const CycElement& CycPoly::leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

bool CycPoly::has_rational_coeffs() const {
    for (const auto& c : coeffs_)
        if (!c.is_rational()) return false;
    return true;
}

RationalPoly CycPoly::to_rational() const {
    std::vector<BigRational> out;
    for (const auto& c : coeffs_) {
        if (!c.is_rational()) throw std::domain_error("polynomial has irrational coefficients");
        out.push_back(c.rational_part());
    }
    return RationalPoly(std::move(out));
}

CycPoly CycPoly::monic() const {
    if (is_zero()) return *this;
    CycElement inv = leading().inverse();
    std::vector<CycElement> c;
    for (const auto& x : coeffs_) c.push_back(x * inv);
    return CycPoly(field_, std::move(c));
}

CycPoly CycPoly::derivative() const {
    std::vector<CycElement> c;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c.push_back(coeffs_[i] * BigRational(static_cast<long>(i)));
    return CycPoly(field_, std::move(c));
}

CycElement CycPoly::evaluate(const CycElement& x) const {
    CycElement acc = field_->zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

CycPoly CycPoly::shifted(const CycElement& c) const {
    // Horner in the ring F[X]: acc = acc * (X + c) + a_i.
    CycPoly acc(field_, {});
    CycPoly lin(field_, {c, field_->one()});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + CycPoly(field_, {*it});
    return acc;
}

CycPoly operator+(const CycPoly& a, const CycPoly& b) {
    std::vector<CycElement> c;
    std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        CycElement x = i < a.coeffs_.size() ? a.coeffs_[i] : a.field_->zero();
        if (i < b.coeffs_.size()) x += b.coeffs_[i];
        c.push_back(std::move(x));
    }
    return CycPoly(a.field_, std::move(c));
}

CycPoly operator-(const CycPoly& a, const CycPoly& b) {
    std::vector<CycElement> c;
    std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        CycElement x = i < a.coeffs_.size() ? a.coeffs_[i] : a.field_->zero();
        if (i < b.coeffs_.size()) x -= b.coeffs_[i];
        c.push_back(std::move(x));
    }
    return CycPoly(a.field_, std::move(c));
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
    if (a.is_zero() || b.is_zero()) return CycPoly(a.field_, {});
    std::vector<CycElement> c(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_->zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return CycPoly(a.field_, std::move(c));
}

bool operator==(const CycPoly& a, const CycPoly& b) {
    return a.field_->conductor() == b.field_->conductor() && a.coeffs_ == b.coeffs_;
}

std::string CycPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const auto& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c.is_rational() && c.rational_part() == 1;
        if (!unit || i == 0) os << "(" << c.to_string() << ")";
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::pair<CycPoly, CycPoly> divmod(const CycPoly& a, const CycPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& F = a.field();
    if (a.degree() < b.degree()) return {CycPoly(F, {}), a};
    std::vector<CycElement> rem = a.coeffs();
    std::vector<CycElement> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), F->zero());
    CycElement inv_lead = b.leading().inverse();
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        auto top = static_cast<std::size_t>(k + b.degree());
        if (rem[top].is_zero()) continue;
        CycElement q = rem[top] * inv_lead;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) rem[static_cast<std::size_t>(k) + j] -= q * b.coeffs()[j];
        quot[static_cast<std::size_t>(k)] = std::move(q);
    }
    rem.resize(static_cast<std::size_t>(b.degree()), F->zero());
    return {CycPoly(F, std::move(quot)), CycPoly(F, std::move(rem))};
}

namespace {

CycPoly euclid_gcd(const CycPoly& a, const CycPoly& b) {
    CycPoly x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        CycPoly r = divmod(x, y).second.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

// a/b with |a|, |b| <= sqrt(m/2) and a = u b mod m.
std::optional<BigRational> rational_reconstruct(const BigInt& u, const BigInt& m) {
    BigInt bound = mp::sqrt(m / 2);
    BigInt r0 = m, r1 = mod_floor(u, m), t0 = 0, t1 = 1;
    while (r1 > bound) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || mp::abs(t1) > bound || gcd(r1, t1) != 1) return std::nullopt;
    return make_rational(r1, t1);
}

// Integer coefficient matrix [X^j][y^i] of c * p for a suitable integer c.
std::vector<std::vector<BigInt>> integral_coeffs(const CycPoly& p) {
    BigInt den = 1;
    for (const auto& c : p.coeffs())
        for (const auto& q : c.coeffs()) den = lcm(den, denominator_of(q));
    std::vector<std::vector<BigInt>> out;
    for (const auto& c : p.coeffs()) {
        std::vector<BigInt> row;
        for (const auto& q : c.coeffs()) row.push_back(numerator_of(q) * (den / denominator_of(q)));
        out.push_back(std::move(row));
    }
    return out;
}

// Multi-modular gcd through primes p = 1 mod N, where Phi_N splits into
// linear factors: one gcd in F_p[X] per embedding, interpolation in y,
// CRT across primes and rational reconstruction. A candidate is accepted
// only after exact division of both inputs.
std::optional<CycPoly> modular_gcd(const CycPoly& a, const CycPoly& b) {
    const auto& F = a.field();
    const std::uint64_t N = F->conductor();
    const std::size_t phi = F->degree();
    auto A = integral_coeffs(a), B = integral_coeffs(b);
    std::vector<std::uint64_t> units;
    for (std::uint64_t k = 1; k <= N; ++k)
        if (std::gcd(k, N) == 1) units.push_back(k);
    std::vector<std::uint64_t> prime_divisors;
    for (auto [q, e] : factor_small(N)) prime_divisors.push_back(q);

    long best_degree = -1;
    std::vector<std::vector<BigInt>> residues;
    BigInt modulus = 1;
    std::uint64_t t = (std::uint64_t(1) << 40) / N;
    for (int used = 0; used < 400; ++t) {
        std::uint64_t p = 1 + N * t;
        if (!is_prime(p)) continue;
        modular::PrimeField Fp{p};
        std::uint64_t root = 0;
        for (std::uint64_t g = 2; root == 0; ++g) {
            std::uint64_t r = Fp.pow(g, (p - 1) / N);
            bool primitive = true;
            for (auto q : prime_divisors)
                if (Fp.pow(r, N / q) == 1) primitive = false;
            if (primitive) root = r;
        }
        std::vector<std::uint64_t> points;
        for (auto k : units) points.push_back(Fp.pow(root, k));
        auto embed = [&](const std::vector<std::vector<BigInt>>& P, std::uint64_t x) {
            modular::PolyP out;
            for (const auto& c : P) {
                std::uint64_t v = 0;
                for (std::size_t i = c.size(); i-- > 0;) {
                    BigInt ci = mod_floor(c[i], BigInt(p));
                    v = Fp.add(Fp.mul(v, x), static_cast<std::uint64_t>(ci));
                }
                out.push_back(v);
            }
            return out;
        };
        bool good = true;
        long deg = -1;
        std::vector<modular::PolyP> images;
        for (auto x : points) {
            auto ea = embed(A, x), eb = embed(B, x);
            if (ea.size() != A.size() || eb.back() == 0 || ea.back() == 0) {
                good = false;
                break;
            }
            Fp.trim(eb);
            auto g = Fp.gcd(ea, eb);
            long d = modular::degree(g);
            if (deg != -1 && d != deg) {
                good = false;
                break;
            }
            deg = d;
            images.push_back(std::move(g));
        }
        if (!good) continue;
        ++used;
        if (deg == 0) return CycPoly(F, {F->one()});
        if (best_degree != -1 && deg > best_degree) continue;
        if (deg < best_degree || best_degree == -1) {
            best_degree = deg;
            residues.assign(static_cast<std::size_t>(deg + 1), std::vector<BigInt>(phi, BigInt(0)));
            modulus = 1;
        }
        // Newton interpolation in y for each X-coefficient.
        std::vector<std::vector<BigInt>> local(static_cast<std::size_t>(deg + 1));
        for (std::size_t j = 0; j <= static_cast<std::size_t>(deg); ++j) {
            std::vector<std::uint64_t> c(phi);
            for (std::size_t k = 0; k < phi; ++k) c[k] = images[k][j];
            for (std::size_t lvl = 1; lvl < phi; ++lvl)
                for (std::size_t k = phi - 1; k >= lvl; --k)
                    c[k] = Fp.mul(Fp.sub(c[k], c[k - 1]), Fp.inv(Fp.sub(points[k], points[k - lvl])));
            std::vector<std::uint64_t> poly(phi, 0);
            for (std::size_t k = phi; k-- > 0;) {
                // poly = poly * (y - points[k]) + c[k]
                std::vector<std::uint64_t> next(phi, 0);
                for (std::size_t i = 0; i + 1 < phi; ++i) next[i + 1] = poly[i];
                for (std::size_t i = 0; i < phi; ++i) next[i] = Fp.sub(next[i], Fp.mul(poly[i], points[k]));
                next[0] = Fp.add(next[0], c[k]);
                poly = std::move(next);
            }
            for (auto v : poly) local[j].push_back(BigInt(v));
        }
        BigInt P(p);
        BigInt inv = mod_floor(BigInt(Fp.inv(static_cast<std::uint64_t>(mod_floor(modulus, P)))), P);
        for (std::size_t j = 0; j < residues.size(); ++j)
            for (std::size_t i = 0; i < phi; ++i) {
                BigInt delta = mod_floor((local[j][i] - residues[j][i]) * inv, P);
                residues[j][i] += modulus * delta;
            }
        modulus *= P;
        std::vector<CycElement> coeffs;
        bool ok = true;
        for (std::size_t j = 0; j < residues.size() && ok; ++j) {
            std::vector<BigRational> c;
            for (std::size_t i = 0; i < phi && ok; ++i) {
                auto q = rational_reconstruct(residues[j][i], modulus);
                if (!q) ok = false;
                else c.push_back(*q);
            }
            if (ok) coeffs.push_back(F->from_poly(RationalPoly(c)));
        }
        if (!ok) continue;
        CycPoly h(F, std::move(coeffs));
        if (divmod(a, h).second.is_zero() && divmod(b, h).second.is_zero()) return h;
    }
    return std::nullopt;
}

}  // namespace

CycPoly gcd(const CycPoly& a, const CycPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    if (a.field()->degree() == 1 || a.degree() == 0 || b.degree() == 0) return euclid_gcd(a, b);
    if (auto h = modular_gcd(a, b)) return *h;
    return euclid_gcd(a, b);
}

RationalPoly norm(const CycPoly& p) {
    if (p.is_zero()) return {};
    const auto& F = p.field();
    std::size_t deg = static_cast<std::size_t>(p.degree()) * F->degree();
    std::vector<BigRational> xs, ys;
    xs.reserve(deg + 1);
    ys.reserve(deg + 1);
    for (std::size_t t = 0; t <= deg; ++t) {
        BigRational x(static_cast<long>(t));
        // Horner with a rational point keeps everything in F.
        CycElement v = F->zero();
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) v = v * x + *it;
        xs.push_back(x);
        ys.push_back(v.norm());
    }
    return interpolate(xs, ys);
}

}  // namespace thumbtack

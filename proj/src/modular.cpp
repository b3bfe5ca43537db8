#include "thumbtack/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace thumbtack::modular {

long degree(const PolyP& f) { return static_cast<long>(f.size()) - 1; }

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1u;
    }
    return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a % p == 0) throw std::domain_error("inverse of zero mod p");
    return pow(a, p - 2);
}

void PrimeField::trim(PolyP& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP PrimeField::reduce(const std::vector<BigInt>& f) const {
    PolyP out(f.size());
    BigInt mod(p);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = mod_floor(f[i], mod).convert_to<std::uint64_t>();
    trim(out);
    return out;
}

PolyP PrimeField::add(const PolyP& a, const PolyP& b) const {
    PolyP out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = add(out[i], b[i]);
    trim(out);
    return out;
}

PolyP PrimeField::sub(const PolyP& a, const PolyP& b) const {
    PolyP out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = sub(out[i], b[i]);
    trim(out);
    return out;
}

PolyP PrimeField::mul(const PolyP& a, const PolyP& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            // p < 2^32 keeps each product below 2^64; fold well before overflow.
            if ((j & 0xff) == 0xff) acc[i + j] %= p;
        }
    }
    PolyP out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint64_t>(acc[i] % p);
    trim(out);
    return out;
}

PolyP PrimeField::scale(const PolyP& a, std::uint64_t c) const {
    PolyP out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul(a[i], c);
    trim(out);
    return out;
}

void PrimeField::divmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r) const {
    if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
    r = a;
    if (a.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(a.size() - b.size() + 1, 0);
    std::uint64_t inv_lead = inv(b.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        std::uint64_t coef = mul(r[k + b.size() - 1], inv_lead);
        q[k] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = sub(r[k + j], mul(coef, b[j]));
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
}

PolyP PrimeField::rem(const PolyP& a, const PolyP& b) const {
    PolyP q, r;
    divmod(a, b, q, r);
    return r;
}

PolyP PrimeField::monic(const PolyP& a) const {
    if (a.empty()) return a;
    return scale(a, inv(a.back()));
}

PolyP PrimeField::gcd(PolyP a, PolyP b) const {
    while (!b.empty()) {
        PolyP r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

PolyP PrimeField::xgcd(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t) const {
    PolyP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PolyP q, r;
        divmod(r0, r1, q, r);
        PolyP s2 = sub(s0, mul(q, s1));
        PolyP t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s = s0;
        t = t0;
        return r0;
    }
    std::uint64_t c = inv(r0.back());
    s = scale(s0, c);
    t = scale(t0, c);
    return scale(r0, c);
}

PolyP PrimeField::derivative(const PolyP& a) const {
    if (a.size() <= 1) return {};
    PolyP d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mul(a[i], i % p);
    trim(d);
    return d;
}

PolyP PrimeField::powmod(PolyP base, std::uint64_t e, const PolyP& mod) const {
    PolyP result{1};
    result = rem(result, mod);
    base = rem(base, mod);
    while (e) {
        if (e & 1u) result = rem(mul(result, base), mod);
        e >>= 1u;
        if (e) base = rem(mul(base, base), mod);
    }
    return result;
}

namespace {

bool lex_less(const PolyP& a, const PolyP& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<PolyP> PrimeField::factor_squarefree(const PolyP& f, std::mt19937_64& rng) const {
    if (p == 2) throw std::invalid_argument("equal-degree splitting needs an odd prime");
    std::vector<PolyP> result;
    if (degree(f) <= 0) return result;

    // Equal-degree splitting of g, a product of distinct irreducibles of degree d.
    auto split = [&](auto&& self, const PolyP& g, long d) -> void {
        if (degree(g) == d) {
            result.push_back(monic(g));
            return;
        }
        while (true) {
            PolyP a(static_cast<std::size_t>(degree(g)));
            for (auto& c : a) c = rng() % p;
            trim(a);
            if (degree(a) < 1) continue;
            PolyP tpow = a, acc = a;
            for (long i = 1; i < d; ++i) {
                tpow = powmod(tpow, p, g);
                acc = rem(mul(acc, tpow), g);
            }
            PolyP b = powmod(acc, (p - 1) / 2, g);
            PolyP c = gcd(sub(b, PolyP{1}), g);
            if (degree(c) > 0 && degree(c) < degree(g)) {
                PolyP q, r;
                divmod(g, c, q, r);
                self(self, c, d);
                self(self, q, d);
                return;
            }
        }
    };

    PolyP rest = monic(f);
    PolyP x{0, 1};
    PolyP h = x;
    for (long d = 1; 2 * d <= degree(rest); ++d) {
        h = powmod(h, p, rest);
        PolyP g = gcd(sub(h, x), rest);
        if (degree(g) > 0) {
            split(split, g, d);
            PolyP q, r;
            divmod(rest, g, q, r);
            rest = q;
            h = rem(h, rest);
        }
    }
    if (degree(rest) > 0) result.push_back(monic(rest));
    std::sort(result.begin(), result.end(), lex_less);
    return result;
}

void trim(std::vector<BigInt>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::vector<BigInt> PrimePowerRing::reduce(const std::vector<BigInt>& f) const {
    std::vector<BigInt> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = mod_floor(f[i], modulus);
    trim(out);
    return out;
}

std::vector<BigInt> PrimePowerRing::add(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
    std::vector<BigInt> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return reduce(out);
}

std::vector<BigInt> PrimePowerRing::sub(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
    std::vector<BigInt> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return reduce(out);
}

std::vector<BigInt> PrimePowerRing::mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<BigInt> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return reduce(out);
}

std::vector<BigInt> PrimePowerRing::scale(const std::vector<BigInt>& a, const BigInt& c) const {
    std::vector<BigInt> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
    return reduce(out);
}

BigInt PrimePowerRing::inverse(const BigInt& a) const {
    BigInt g, x;
    // Extended Euclid on (a mod M, M).
    BigInt r0 = mod_floor(a, modulus), r1 = modulus, s0 = 1, s1 = 0;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("element is not a unit modulo " + modulus.str());
    return mod_floor(s0, modulus);
}

void PrimePowerRing::divmod(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& q,
                            std::vector<BigInt>& r) const {
    if (b.empty()) throw std::domain_error("division by zero polynomial mod p^k");
    r = reduce(a);
    if (r.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, BigInt(0));
    BigInt inv_lead = (b.back() == 1) ? BigInt(1) : inverse(b.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt coef = mod_floor(r[k + b.size() - 1] * inv_lead, modulus);
        q[k] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = mod_floor(r[k + j] - coef * b[j], modulus);
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
}

namespace {

std::vector<BigInt> lift_poly(const PolyP& f) {
    std::vector<BigInt> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = BigInt(f[i]);
    return out;
}

// One quadratic Hensel step: from f = g h, s g + t h = 1 (mod m) to the same
// identities modulo `next` (a divisor of m^2), with h monic.
void hensel_step(const PrimePowerRing& R, const std::vector<BigInt>& f, std::vector<BigInt>& g,
                 std::vector<BigInt>& h, std::vector<BigInt>& s, std::vector<BigInt>& t) {
    std::vector<BigInt> e = R.sub(f, R.mul(g, h));
    std::vector<BigInt> q, r;
    R.divmod(R.mul(s, e), h, q, r);
    std::vector<BigInt> g_new = R.add(g, R.add(R.mul(t, e), R.mul(q, g)));
    std::vector<BigInt> h_new = R.add(h, r);
    std::vector<BigInt> b = R.sub(R.add(R.mul(s, g_new), R.mul(t, h_new)), std::vector<BigInt>{BigInt(1)});
    std::vector<BigInt> c, d;
    R.divmod(R.mul(s, b), h_new, c, d);
    s = R.sub(s, d);
    t = R.sub(t, R.add(R.mul(t, b), R.mul(c, g_new)));
    g = std::move(g_new);
    h = std::move(h_new);
}

void lift_tree(const std::vector<BigInt>& F, const std::vector<PolyP>& factors, std::size_t lo, std::size_t hi,
               std::uint64_t p, const BigInt& target, std::vector<std::vector<BigInt>>& out) {
    PrimePowerRing Rt{target};
    if (hi - lo == 1) {
        BigInt inv_lc = Rt.inverse(F.back());
        out[lo] = Rt.scale(F, inv_lc);
        return;
    }
    PrimeField Fp{p};
    std::size_t mid = lo + (hi - lo) / 2;
    PolyP hp{1}, gp{1};
    for (std::size_t i = lo; i < mid; ++i) hp = Fp.mul(hp, factors[i]);
    for (std::size_t i = mid; i < hi; ++i) gp = Fp.mul(gp, factors[i]);
    std::uint64_t lc_p = mod_floor(F.back(), BigInt(p)).convert_to<std::uint64_t>();
    gp = Fp.scale(gp, lc_p);
    PolyP sp, tp;
    PolyP one = Fp.xgcd(gp, hp, sp, tp);
    if (one != PolyP{1}) throw std::logic_error("Hensel lifting: factors not coprime mod p");

    std::vector<BigInt> g = lift_poly(gp), h = lift_poly(hp), s = lift_poly(sp), t = lift_poly(tp);
    BigInt m = p;
    while (m < target) {
        BigInt next = m * m;
        if (next > target) next = target;
        hensel_step(PrimePowerRing{next}, F, g, h, s, t);
        m = next;
    }
    lift_tree(h, factors, lo, mid, p, target, out);
    lift_tree(g, factors, mid, hi, p, target, out);
}

}  // namespace

std::vector<std::vector<BigInt>> hensel_lift(const std::vector<BigInt>& f, const std::vector<PolyP>& factors,
                                             std::uint64_t p, unsigned k) {
    BigInt target = ipow(BigInt(p), k);
    std::vector<std::vector<BigInt>> out(factors.size());
    if (factors.empty()) return out;
    PrimePowerRing R{target};
    lift_tree(R.reduce(f), factors, 0, factors.size(), p, target, out);
    return out;
}

}  // namespace thumbtack::modular

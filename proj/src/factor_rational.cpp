#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>

#include "thumbtack/factorization.hpp"
#include "thumbtack/modular.hpp"

namespace thumbtack {

OracleConfig OracleConfig::from_environment() {
    OracleConfig cfg;
    if (const char* env = std::getenv("THUMBTACK_SIZE_LIMIT")) {
        try {
            long v = std::stol(env);
            if (v > 0) cfg.norm_degree_limit = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            // Malformed override: keep the default.
        }
    }
    return cfg;
}

namespace {

using IntPoly = std::vector<BigInt>;

long deg(const IntPoly& f) { return static_cast<long>(f.size()) - 1; }

// Exact division over Z; nullopt when g does not divide f.
std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g) {
    if (f.size() < g.size()) return std::nullopt;
    IntPoly rem = f;
    IntPoly quot(f.size() - g.size() + 1);
    const BigInt& lead = g.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        const BigInt& top = rem[k + g.size() - 1];
        if (top == 0) continue;
        if (top % lead != 0) return std::nullopt;
        BigInt q = top / lead;
        quot[k] = q;
        for (std::size_t j = 0; j < g.size(); ++j) rem[k + j] -= q * g[j];
    }
    for (const auto& c : rem)
        if (c != 0) return std::nullopt;
    return quot;
}

IntPoly primitive(IntPoly f) {
    BigInt content = 0;
    for (const auto& c : f) content = gcd(content, c);
    if (f.back() < 0) content = -content;
    for (auto& c : f) c /= content;
    return f;
}

IntPoly symmetric(const IntPoly& f, const BigInt& m) {
    IntPoly out(f.size());
    BigInt half = m / 2;
    for (std::size_t i = 0; i < f.size(); ++i) {
        BigInt c = mod_floor(f[i], m);
        if (c > half) c -= m;
        out[i] = c;
    }
    modular::trim(out);
    return out;
}

// Bound on the coefficients of lc(f) * g for any factor g of f:
// |lc| * 2^deg * ||f||_2 (Landau-Mignotte).
BigInt coefficient_bound(const IntPoly& f) {
    BigInt norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    BigInt root = mp::sqrt(norm2) + 1;
    return mp::abs(f.back()) * (BigInt(1) << static_cast<unsigned>(deg(f))) * root;
}

struct PrimeChoice {
    std::uint64_t p = 0;
    std::vector<modular::PolyP> factors;
    // Degrees a true factor can have, intersected over all tried primes.
    std::vector<bool> possible;
};

std::vector<bool> subset_degrees(const std::vector<modular::PolyP>& factors, std::size_t n) {
    std::vector<bool> out(n + 1, false);
    out[0] = true;
    for (const auto& g : factors) {
        auto d = static_cast<std::size_t>(modular::degree(g));
        for (std::size_t k = n + 1; k-- > d;)
            if (out[k - d]) out[k] = true;
    }
    return out;
}

// Among the first few primes p (odd, p not dividing lc, f squarefree mod p),
// keep the one giving the fewest modular factors; ties go to the smaller p.
PrimeChoice choose_prime(const IntPoly& f) {
    PrimeChoice best;
    int good = 0;
    std::mt19937_64 rng(0x5a55e1u);
    for (std::uint64_t p = 3; good < 5 && p < 100000; p += 2) {
        if (!is_prime(p)) continue;
        if (f.back() % p == 0) continue;
        modular::PrimeField F{p};
        auto fp = F.reduce(f);
        if (modular::degree(fp) != deg(f)) continue;
        if (modular::degree(F.gcd(fp, F.derivative(fp))) != 0) continue;
        ++good;
        auto factors = F.factor_squarefree(F.monic(fp), rng);
        auto degrees = subset_degrees(factors, static_cast<std::size_t>(deg(f)));
        if (best.possible.empty()) best.possible = degrees;
        for (std::size_t k = 0; k < degrees.size(); ++k) best.possible[k] = best.possible[k] && degrees[k];
        if (best.p == 0 || factors.size() < best.factors.size()) {
            best.p = p;
            best.factors = std::move(factors);
        }
        if (best.factors.size() == 1) break;
    }
    if (best.p == 0) throw std::logic_error("zassenhaus: no good prime (input not squarefree?)");
    return best;
}

}  // namespace

std::vector<IntPoly> zassenhaus(const IntPoly& f_in) {
    IntPoly f = primitive(f_in);
    if (deg(f) <= 0) throw std::invalid_argument("zassenhaus: degree must be positive");
    std::vector<IntPoly> result;
    if (f[0] == 0) {
        result.push_back({BigInt(0), BigInt(1)});
        f.erase(f.begin());
        if (deg(f) == 0) return result;
    }
    if (deg(f) == 1) {
        result.push_back(f);
        return result;
    }

    PrimeChoice choice = choose_prime(f);
    bool proper = false;
    for (std::size_t k = 1; k + 1 < choice.possible.size(); ++k) proper = proper || choice.possible[k];
    if (choice.factors.size() == 1 || !proper) {
        result.push_back(f);
        return result;
    }
    const std::uint64_t p = choice.p;
    BigInt bound = 2 * coefficient_bound(f) + 1;
    unsigned k = 1;
    BigInt pk = p;
    while (pk < bound) {
        pk *= p;
        ++k;
    }
    auto lifted = modular::hensel_lift(f, choice.factors, p, k);
    modular::PrimePowerRing R{pk};

    std::vector<IntPoly> remaining = std::move(lifted);
    IntPoly current = f;
    std::size_t s = 1;
    while (2 * s <= remaining.size()) {
        bool found = false;
        const BigInt lc = current.back();
        const BigInt lc_const = lc * current[0];
        std::vector<BigInt> consts(remaining.size());
        for (std::size_t i = 0; i < remaining.size(); ++i) consts[i] = remaining[i].empty() ? BigInt(0) : remaining[i][0];

        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            // Degree and constant-term filters before the full trial division.
            std::size_t d = 0;
            for (std::size_t i : idx) d += remaining[i].size() - 1;
            bool plausible = choice.possible[d];
            if (plausible) {
                BigInt c = lc;
                for (std::size_t i : idx) c = mod_floor(c * consts[i], pk);
                if (c > pk / 2) c -= pk;
                plausible = (c != 0) && (lc_const % c == 0);
            }
            if (plausible) {
                IntPoly g{lc};
                for (std::size_t i : idx) g = R.mul(g, remaining[i]);
                g = symmetric(g, pk);
                IntPoly cand = primitive(g);
                if (auto quotient = divide_exact(current, cand)) {
                    result.push_back(cand);
                    current = *quotient;
                    std::vector<IntPoly> rest;
                    for (std::size_t i = 0, j = 0; i < remaining.size(); ++i) {
                        if (j < idx.size() && idx[j] == i) {
                            ++j;
                            continue;
                        }
                        rest.push_back(std::move(remaining[i]));
                    }
                    remaining = std::move(rest);
                    found = true;
                    break;
                }
            }
            // Next combination in lexicographic order.
            std::size_t n = remaining.size();
            std::size_t pos = s;
            while (pos > 0 && idx[pos - 1] == n - s + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (deg(current) > 0) result.push_back(primitive(current));
    return result;
}

RationalFactorization factor_over_rationals(const RationalPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_over_rationals: zero polynomial");
    RationalFactorization out{p.leading(), {}};
    RationalPoly f = p.monic();
    if (f.degree() == 0) return out;

    // Yun's squarefree decomposition: f = prod a_i^i.
    std::vector<std::pair<RationalPoly, unsigned>> parts;
    if (is_squarefree(f)) {
        parts.emplace_back(f, 1);
    } else {
        RationalPoly fp = f.derivative();
        RationalPoly a = gcd(f, fp);
        RationalPoly b = exact_div(f, a);
        RationalPoly c = exact_div(fp, a);
        RationalPoly d = c - b.derivative();
        unsigned i = 1;
        while (b.degree() > 0) {
            RationalPoly ai = gcd(b, d);
            if (ai.degree() > 0) parts.emplace_back(ai, i);
            b = exact_div(b, ai);
            c = exact_div(d, ai);
            d = c - b.derivative();
            ++i;
        }
    }

    for (const auto& [part, mult] : parts) {
        auto [scale, ints] = part.primitive_part();
        for (const auto& g : zassenhaus(ints)) out.factors.push_back({RationalPoly::from_integers(g).monic(), mult});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (auto c = canonical_compare(x.poly, y.poly); c != 0) return c < 0;
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

RationalPoly expand(const RationalFactorization& f) {
    RationalPoly acc = RationalPoly::constant(f.constant);
    for (const auto& fac : f.factors) acc *= pow(fac.poly, fac.multiplicity);
    return acc;
}

}  // namespace thumbtack

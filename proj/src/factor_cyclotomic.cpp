#include <algorithm>
#include <numeric>
#include <string>

#include "thumbtack/factorization.hpp"

namespace thumbtack {

namespace {

bool coeff_less(const CycPoly& a, const CycPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& x = a.coeffs()[i].coeffs();
        const auto& y = b.coeffs()[i].coeffs();
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] < y[j]) return true;
            if (y[j] < x[j]) return false;
        }
    }
    return false;
}

// Monic squarefree q of degree >= 2 over a field of degree >= 2.
std::vector<CycPoly> trager(const CycPoly& q, const OracleConfig& config) {
    const auto& F = q.field();
    std::size_t norm_degree = static_cast<std::size_t>(q.degree()) * F->degree();
    if (norm_degree > config.norm_degree_limit)
        throw SizeLimitError("norm degree " + std::to_string(norm_degree) + " exceeds the configured limit " +
                             std::to_string(config.norm_degree_limit));
    const bool rational = q.has_rational_coeffs();
    for (long k = 0;; ++k) {
        // With rational coefficients the unshifted norm is q^phi(N).
        if (k == 0 && rational) continue;
        CycElement shift = F->zeta(1) * BigRational(k);
        CycPoly shifted = q.shifted(-shift);
        RationalPoly n = norm(shifted);
        if (!is_squarefree(n)) continue;
        auto over_q = factor_over_rationals(n);
        std::vector<CycPoly> out;
        if (over_q.factors.size() == 1) {
            out.push_back(q);
            return out;
        }
        for (const auto& fac : over_q.factors) {
            CycPoly h = gcd(shifted, CycPoly::from_rational(F, fac.poly));
            if (h.degree() < 1) throw std::logic_error("trager: trivial gcd with a norm factor");
            out.push_back(h.shifted(shift));
        }
        return out;
    }
}

}  // namespace

CyclotomicFactorization factor_over_cyclotomic(const CycPoly& p, const OracleConfig& config) {
    if (p.is_zero()) throw std::invalid_argument("factor_over_cyclotomic: zero polynomial");
    const auto& F = p.field();
    CyclotomicFactorization out{p.leading(), {}};
    CycPoly f = p.monic();
    if (f.degree() == 0) return out;

    if (F->degree() == 1) {
        auto over_q = factor_over_rationals(f.to_rational());
        for (const auto& fac : over_q.factors)
            out.factors.push_back({CycPoly::from_rational(F, fac.poly), fac.multiplicity});
        return out;
    }

    std::vector<std::pair<CycPoly, unsigned>> parts;
    CycPoly fp = f.derivative();
    CycPoly a = gcd(f, fp);
    if (a.degree() == 0) {
        parts.emplace_back(f, 1);
    } else {
        CycPoly b = divmod(f, a).first;
        CycPoly c = divmod(fp, a).first;
        CycPoly d = c - b.derivative();
        unsigned i = 1;
        while (b.degree() > 0) {
            CycPoly ai = gcd(b, d);
            if (ai.degree() > 0) parts.emplace_back(ai, i);
            b = divmod(b, ai).first;
            c = divmod(d, ai).first;
            d = c - b.derivative();
            ++i;
        }
    }

    for (const auto& [part, mult] : parts) {
        if (part.degree() == 1) {
            out.factors.push_back({part, mult});
            continue;
        }
        for (auto& g : trager(part, config)) out.factors.push_back({std::move(g), mult});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (coeff_less(x.poly, y.poly)) return true;
        if (coeff_less(y.poly, x.poly)) return false;
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

CycPoly expand(const CyclotomicFactorization& f) {
    CycPoly acc(f.constant.field(), {f.constant});
    for (const auto& fac : f.factors)
        for (unsigned i = 0; i < fac.multiplicity; ++i) acc = acc * fac.poly;
    return acc;
}

namespace {

CycPoly binomial(const CycElement& a, std::uint64_t n) {
    const auto& F = a.field();
    std::vector<CycElement> c(n + 1, F->zero());
    c[0] = -a;
    c[n] = F->one();
    return CycPoly(F, std::move(c));
}

std::vector<CycElement> linear_roots(const CycElement& a, std::uint64_t n, const OracleConfig& config) {
    std::vector<CycElement> roots;
    for (const auto& fac : factor_over_cyclotomic(binomial(a, n), config).factors)
        if (fac.poly.degree() == 1) roots.push_back(-fac.poly.coeffs()[0]);
    return roots;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

}  // namespace

std::vector<CycElement> roots_of_binomial(const CycElement& a, std::uint64_t n, const OracleConfig& config) {
    if (n == 0) throw std::invalid_argument("roots_of_binomial: n must be positive");
    if (a.is_zero()) return {a};
    if (n == 1) return {a};
    const auto& F = a.field();
    if (n * F->degree() <= config.norm_degree_limit) return linear_roots(a, n, config);
    std::uint64_t p = smallest_prime_factor(n);
    std::vector<CycElement> out;
    for (const auto& s : linear_roots(a, p, config))
        for (auto& r : roots_of_binomial(s, n / p, config)) out.push_back(std::move(r));
    return out;
}

std::optional<CycElement> nth_root_in_cyclotomic(const CycElement& a, std::uint64_t n, const OracleConfig& config) {
    if (n == 0) throw std::invalid_argument("nth_root_in_cyclotomic: n must be positive");
    if (a.is_zero()) throw std::invalid_argument("nth_root_in_cyclotomic: a must be nonzero");
    const auto& F = a.field();
    std::optional<CycElement> root;
    if (n == 1) {
        root = a;
    } else if (is_prime(n)) {
        auto roots = linear_roots(a, n, config);
        if (!roots.empty()) root = roots.front();
    } else {
        // a = w^n iff some p-th root s of a is an (n/p)-th power. When zeta_p
        // is itself an (n/p)-th power in F, all p-th roots behave alike.
        std::uint64_t p = smallest_prime_factor(n);
        std::uint64_t rest = n / p;
        std::uint64_t M = F->roots_of_unity_order();
        bool collapse = (M / std::gcd(M, rest)) % p == 0;
        for (const auto& s : linear_roots(a, p, config)) {
            root = nth_root_in_cyclotomic(s, rest, config);
            if (root || collapse) break;
        }
    }
    if (root && root->pow(n) != a)
        throw VerificationError("nth root witness fails w^n = a", root->to_string());
    return root;
}

std::optional<CycElement> nth_root_in_cyclotomic(const BigRational& a, std::uint64_t n, const FieldPtr& field,
                                                 const OracleConfig& config) {
    return nth_root_in_cyclotomic(field->from_rational(a), n, config);
}

}  // namespace thumbtack

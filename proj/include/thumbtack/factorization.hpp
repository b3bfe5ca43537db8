#ifndef THUMBTACK_FACTORIZATION_HPP
#define THUMBTACK_FACTORIZATION_HPP

#include <optional>
#include <vector>

#include "thumbtack/cyclotomic.hpp"
#include "thumbtack/polynomial.hpp"

namespace thumbtack {

/// Guardrail for the norm-resultant oracle. The norm of a degree-d
/// polynomial over Q(zeta_N) has degree d * phi(N).
struct OracleConfig {
    std::size_t norm_degree_limit = 128;

    /// Default, overridden by THUMBTACK_SIZE_LIMIT when set.
    static OracleConfig from_environment();
};

template <class Poly, class Scalar>
struct Factorization {
    struct Factor {
        Poly poly;
        unsigned multiplicity;
    };
    Scalar constant;
    std::vector<Factor> factors;
};

using RationalFactorization = Factorization<RationalPoly, BigRational>;
using CyclotomicFactorization = Factorization<CycPoly, CycElement>;

/// Complete factorization over Q into monic irreducibles: squarefree
/// decomposition, factorization modulo a small good prime, Hensel lifting
/// to the Landau-Mignotte bound and subset recombination. Factors are sorted
/// by degree, then coefficients.
RationalFactorization factor_over_rationals(const RationalPoly& p);

/// Irreducible factors (primitive, positive leading coefficient) of a
/// primitive squarefree integer polynomial of positive degree.
std::vector<std::vector<BigInt>> zassenhaus(const std::vector<BigInt>& f);

/// Complete factorization over Q(zeta_N) by Trager's norm method. Throws
/// SizeLimitError when deg(p) * phi(N) exceeds the configured bound.
CyclotomicFactorization factor_over_cyclotomic(const CycPoly& p, const OracleConfig& config = {});

/// Reassembles constant * prod factor^mult.
RationalPoly expand(const RationalFactorization& f);
CycPoly expand(const CyclotomicFactorization& f);

/// Decides whether X^n - a has a root in F. The returned witness w satisfies
/// w^n = a, checked exactly before returning.
std::optional<CycElement> nth_root_in_cyclotomic(const CycElement& a, std::uint64_t n, const OracleConfig& config = {});
std::optional<CycElement> nth_root_in_cyclotomic(const BigRational& a, std::uint64_t n, const FieldPtr& field,
                                                 const OracleConfig& config = {});

/// All roots of X^n - a in F (n small enough for direct factorization, or
/// split through prime-degree steps otherwise).
std::vector<CycElement> roots_of_binomial(const CycElement& a, std::uint64_t n, const OracleConfig& config = {});

}  // namespace thumbtack

#endif  // THUMBTACK_FACTORIZATION_HPP

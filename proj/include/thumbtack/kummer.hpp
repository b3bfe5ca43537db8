#ifndef THUMBTACK_KUMMER_HPP
#define THUMBTACK_KUMMER_HPP

// Kummer theory over Q(zeta_{l^m}): power residues, relation lattices,
// Kummer degrees and the image of rho at level l^m, plus the openness
// certificates built from them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thumbtack/factorization.hpp"
#include "thumbtack/multgroup.hpp"
#include "thumbtack/zlattice.hpp"

namespace thumbtack {

struct KummerLevel {
    std::uint64_t l = 2;
    unsigned m = 1;

    /// Validates that l is prime and m >= 1.
    static KummerLevel make(std::uint64_t l, unsigned m);
    BigInt conductor() const { return ipow(BigInt(l), m); }
    std::uint64_t conductor_u64() const;
};

struct EngineOptions {
    /// Decide every power-membership question with the factorization oracle.
    bool force_oracle = false;
    OracleConfig oracle = OracleConfig::from_environment();
    /// Fan out per-prime work in the certificates.
    bool parallel = true;
};

/// Raised when an operation needs an independent tuple.
class DependentGeneratorsError : public std::invalid_argument {
  public:
    DependentGeneratorsError(const std::string& what, IntVector witness)
        : std::invalid_argument(what), witness_(std::move(witness)) {}
    const IntVector& witness() const noexcept { return witness_; }

  private:
    IntVector witness_;
};

/// a in Q(zeta_{l^m})^{x l^j}?
bool cyclotomic_power_membership(const FactoredRational& a, unsigned j, const KummerLevel& level,
                                 const EngineOptions& options = {});

/// Classes (s, t) in Z/2 x Z/2^j with (-1)^s 2^t a 2^j-th power in
/// Q(zeta_{2^m}), embedded in (Z/2^j)^2 as (2^{j-1} s, t). Computed once per
/// (m, j) with the oracle and cached.
ModSubgroup dyadic_power_table(unsigned m, unsigned j, const OracleConfig& config = OracleConfig::from_environment());

struct RelationLattice {
    KummerLevel level;
    /// R = {e mod l^m : a^e in Q(zeta_{l^m})^{x l^m}}.
    ModSubgroup subgroup;
};

RelationLattice relation_lattice(const MultSubgroup& gamma, const KummerLevel& level, const EngineOptions& options = {});
/// Same lattice without the independence precondition.
RelationLattice relation_lattice_unchecked(const MultSubgroup& gamma, const KummerLevel& level,
                                           const EngineOptions& options = {});

BigInt kummer_degree(const MultSubgroup& gamma, const KummerLevel& level, const EngineOptions& options = {});

struct LevelImage {
    KummerLevel level;
    ModSubgroup image;
    /// (l^m)^r / |image|.
    BigInt index;
};

/// Image of rho at level l^m: the annihilator of the relation lattice.
LevelImage rho_image(const MultSubgroup& gamma, const KummerLevel& level, const EngineOptions& options = {});
LevelImage rho_image_from_relations(const RelationLattice& relations);

struct HorizontalPrime {
    std::uint64_t l = 0;
    bool coprime = false;
    struct Level {
        unsigned m;
        bool full;
        std::vector<BigInt> divisors;
    };
    std::vector<Level> levels;
    /// First level where the image is not full, with a relation vector.
    std::optional<unsigned> exceptional_from;
    std::optional<IntVector> witness;
};

struct HorizontalReport {
    BigInt division_index;
    /// Primes below this one may be exceptional; for Q every l satisfies
    /// the cyclotomic condition, so this is 2.
    std::uint64_t l0 = 2;
    std::vector<HorizontalPrime> primes;
};

/// Throws VerificationError if a prime coprime to 2[Gamma':Gamma] is not full.
HorizontalReport horizontal_certificate(const MultSubgroup& gamma, const std::vector<std::uint64_t>& primes,
                                        unsigned m_max, const EngineOptions& options = {});

struct OpennessCertificate {
    std::uint64_t l = 0;
    struct Level {
        unsigned m;
        std::vector<BigInt> divisors;
        BigInt index;
    };
    std::vector<Level> levels;
    bool tower_compatible = true;
    /// Every limit divisor is a proper divisor of l^m (no dead direction).
    bool saturated = false;
    bool stabilized = false;
    std::vector<BigInt> limit_divisors;
    std::optional<IntVector> failure_witness;
};

OpennessCertificate vertical_certificate(const MultSubgroup& gamma, std::uint64_t l, unsigned m_max,
                                         const EngineOptions& options = {});

/// kappa = l: the automorphism raising roots of unity to the power l + 1
/// gives f(g)^{(l+1)-1} = g(zeta)/zeta.
std::uint64_t descent_exponent(std::uint64_t l);

struct DescentWitness {
    FactoredRational a;
    KummerLevel level;
    std::uint64_t kappa = 0;
    BigRational c;
    /// Root of X^{l^m} - a in Q(zeta_{l^m}) certifying the hypothesis.
    std::string root;
    /// Whether a^{kappa + 1} is also an l^m-th power in Q.
    bool uncorrected_holds = false;
};

/// nullopt when a is not an l^m-th power in Q(zeta_{l^m}).
std::optional<DescentWitness> sah_descent_check(const FactoredRational& a, const KummerLevel& level,
                                                const EngineOptions& options = {});

struct InjectivityProfile {
    std::vector<BigInt> degrees;
    /// Smallest m from which the degrees increase strictly up to m_max.
    unsigned increasing_from = 1;
};

InjectivityProfile injectivity_profile(const FactoredRational& x, std::uint64_t l, unsigned m_max,
                                       const EngineOptions& options = {});

struct GeometricImage {
    LevelImage image;
    LabelMatrix labels;
    RelationLattice relations;
};

/// Over an algebraically closed constant field: constants are divisible and
/// R is the kernel of the label matrix mod l^m.
GeometricImage geometric_rho_image(const std::vector<FunctionFieldElement>& elements, const KummerLevel& level);

}  // namespace thumbtack

#endif  // THUMBTACK_KUMMER_HPP

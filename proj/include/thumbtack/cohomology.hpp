#ifndef THUMBTACK_COHOMOLOGY_HPP
#define THUMBTACK_COHOMOLOGY_HPP

// Brute-force cohomology of small finite groups: H^1 with coefficients in a
// product of cyclic groups, Sah's lemma and the Kummer connecting map.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thumbtack/kummer.hpp"
#include "thumbtack/zlattice.hpp"

namespace thumbtack {

using SmallMatrix = Matrix<std::int64_t>;
using ModuleElement = std::vector<std::int64_t>;

class FiniteGroup {
  public:
    /// Verifies closure, associativity, identity and inverses.
    static FiniteGroup make(std::vector<std::vector<int>> cayley);

    static FiniteGroup cyclic(int n);
    /// Element (a, b) has index a * |H| + b.
    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
    /// Order 2k: rotations 0..k-1, reflections k..2k-1.
    static FiniteGroup dihedral(int k);
    static FiniteGroup quaternion();
    /// Additive group of the listed vectors mod q, which must be closed.
    static FiniteGroup from_subgroup(const std::vector<IntVector>& elements, const BigInt& q);

    int order() const noexcept { return static_cast<int>(cayley_.size()); }
    int identity() const noexcept { return identity_; }
    int mul(int a, int b) const { return cayley_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    const std::vector<std::vector<int>>& cayley() const noexcept { return cayley_; }
    bool is_central(int a) const;
    bool is_abelian() const;
    /// Greedy generating set, smallest indices first.
    const std::vector<int>& generators() const noexcept { return generators_; }

  private:
    std::vector<std::vector<int>> cayley_;
    std::vector<int> inverse_;
    std::vector<int> generators_;
    int identity_ = 0;
};

struct NamedGroup {
    std::string name;
    FiniteGroup group;
};

/// One group per isomorphism class of order <= max_order (max_order <= 8).
std::vector<NamedGroup> small_groups(int max_order = 8);

/// Z/d_1 x ... x Z/d_s with G acting through integer matrices.
class FiniteModule {
  public:
    /// Checks well-definedness on the cyclic structure, that the identity
    /// acts trivially and that g -> action[g] is a homomorphism.
    static FiniteModule make(const FiniteGroup& g, std::vector<std::int64_t> orders, std::vector<SmallMatrix> action);
    /// Z/d with element g acting as multiplication by units[g].
    static FiniteModule cyclic(const FiniteGroup& g, std::int64_t d, const std::vector<std::int64_t>& units);
    static FiniteModule trivial(const FiniteGroup& g, std::vector<std::int64_t> orders);

    const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
    const std::vector<SmallMatrix>& action() const noexcept { return action_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::uint64_t size() const;

    ModuleElement zero() const { return ModuleElement(orders_.size(), 0); }
    ModuleElement reduce(ModuleElement x) const;
    ModuleElement act(int g, const ModuleElement& x) const;
    ModuleElement add(const ModuleElement& x, const ModuleElement& y) const;
    ModuleElement sub(const ModuleElement& x, const ModuleElement& y) const;
    std::vector<ModuleElement> elements() const;

  private:
    std::vector<std::int64_t> orders_;
    std::vector<SmallMatrix> action_;
};

/// All homomorphisms G -> (Z/d)^x, as unit images per element.
std::vector<std::vector<std::int64_t>> unit_actions(const FiniteGroup& g, std::int64_t d);

struct Cochain {
    std::vector<ModuleElement> values;
    friend bool operator==(const Cochain&, const Cochain&) = default;
    friend auto operator<=>(const Cochain&, const Cochain&) = default;
};

bool is_cocycle(const FiniteGroup& g, const FiniteModule& m, const Cochain& f);
/// g -> g.x - x
Cochain coboundary(const FiniteGroup& g, const FiniteModule& m, const ModuleElement& x);

/// Every 1-cocycle, found by extending values on the generators.
std::vector<Cochain> enumerate_cocycles(const FiniteGroup& g, const FiniteModule& m);
std::vector<Cochain> enumerate_coboundaries(const FiniteGroup& g, const FiniteModule& m);

struct H1Report {
    BigInt cocycle_count;
    BigInt coboundary_count;
    /// Invariant factors > 1, each dividing the next.
    std::vector<BigInt> invariant_factors;
    /// One cocycle per class when |H^1| <= 256, else one per invariant factor.
    std::vector<Cochain> representatives;
    bool enumeration_checked = false;

    BigInt order() const;
};

/// Linear algebra over the cyclic structure; cross-checked by enumeration
/// when |M|^{#generators} is small.
H1Report h1(const FiniteGroup& g, const FiniteModule& m);

struct SahResult {
    bool pass = true;
    std::size_t cocycles_checked = 0;
    /// Failing cocycle and group element, when any.
    std::optional<Cochain> witness_cocycle;
    std::optional<int> witness_element;
    std::string failure;
};

/// (alpha - 1) f(g) = (g - 1) f(alpha) for every cocycle f and every g, and
/// (alpha - 1) f is a coboundary. Throws std::invalid_argument unless alpha
/// is central.
SahResult sah_verify(const FiniteGroup& g, const FiniteModule& m, int alpha);

struct SahSweep {
    std::size_t triples = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_witnesses;
};

/// Every group of order <= max_order, cyclic module Z/d (2 <= d <= max_modulus)
/// with G acting through units, and every central alpha.
SahSweep sah_sweep(int max_order = 8, std::int64_t max_modulus = 16, bool parallel = true);

struct DeltaReport {
    std::uint64_t conductor = 0;
    /// |Gal(L(Gamma^{1/N})/L)| realized as the dual of the relation lattice.
    BigInt group_order;
    /// |Gamma / (Gamma cap L^{xN})|.
    BigInt quotient_order;
    /// Number of homomorphisms G -> mu_N, by enumeration.
    BigInt hom_count;
    /// Degree of the irreducible factors of the iterated resultant over Q(zeta_N).
    BigInt field_degree;
    /// Multiplier c of the primitive element sum c^i b_i.
    int multiplier = 0;
    bool cocycles_are_homomorphisms = false;
    bool pairing_injective = false;
    bool pass = false;
};

/// N must be a prime power. Gamma need not be independent.
DeltaReport kummer_delta_check(std::uint64_t n, const MultSubgroup& gamma, const EngineOptions& options = {});

}  // namespace thumbtack

#endif  // THUMBTACK_COHOMOLOGY_HPP

#ifndef THUMBTACK_MULTGROUP_HPP
#define THUMBTACK_MULTGROUP_HPP

// Finitely generated subgroups of Q^x, modelled as Z/2 (sign) plus the free
// abelian group on the primes, and multiplicative data in Q(t)^x.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thumbtack/polynomial.hpp"
#include "thumbtack/zlattice.hpp"

namespace thumbtack {

/// Input error carrying the offending character position.
class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

struct FactoredRational {
    int sign = 1;
    /// (prime, exponent), primes increasing, exponents nonzero.
    std::vector<std::pair<BigInt, std::int64_t>> exponents;

    BigRational value() const;
    std::int64_t exponent_of(const BigInt& prime) const;
    bool is_torsion() const { return exponents.empty(); }
    /// "+2^2*3^1", "-1" for the empty product with negative sign.
    std::string to_string() const;
    /// e * this, i.e. this^e.
    FactoredRational pow(std::int64_t e) const;
    friend FactoredRational operator*(const FactoredRational& a, const FactoredRational& b);
    friend bool operator==(const FactoredRational&, const FactoredRational&) = default;
};

FactoredRational factor_rational(const BigRational& q);

class MultSubgroup {
  public:
    explicit MultSubgroup(std::vector<FactoredRational> generators);
    static MultSubgroup from_rationals(const std::vector<BigRational>& values);

    const std::vector<FactoredRational>& generators() const noexcept { return generators_; }
    Eigen::Index rank() const noexcept { return static_cast<Eigen::Index>(generators_.size()); }
    const std::vector<BigInt>& support() const noexcept { return support_; }
    /// One row per support prime, one column per generator.
    const IntMatrix& exponent_matrix() const noexcept { return exponents_; }
    /// 1 where the generator is negative.
    const IntVector& torsion_row() const noexcept { return torsion_; }
    /// Row index of a support prime, or -1.
    Eigen::Index prime_row(const BigInt& p) const;

    /// prod a_i^{e_i}, reconstructed exactly.
    FactoredRational evaluate(const IntVector& e) const;
    std::vector<std::string> to_strings() const;

  private:
    std::vector<FactoredRational> generators_;
    std::vector<BigInt> support_;
    IntMatrix exponents_;
    IntVector torsion_;
};

struct IndependenceVerdict {
    bool independent = true;
    /// Nonzero e with a^e = +-1, when dependent.
    std::optional<IntVector> witness;
};

IndependenceVerdict independence_check(const MultSubgroup& gamma);

struct DivisionGroupReport {
    BigInt index;
    /// -1 followed by a basis of the saturated free part.
    std::vector<FactoredRational> division_generators;
    /// Smallest n >= 1 with d^n in Gamma, per division generator.
    std::vector<BigInt> powers;
};

/// Gamma' = {x : x^n in Gamma for some n >= 1} and [Gamma' : Gamma].
DivisionGroupReport division_group(const MultSubgroup& gamma);

/// Membership of +-prod p^f in Gamma, decided on the exponent lattice.
bool contains(const MultSubgroup& gamma, const FactoredRational& x);

struct PowerIntersectionVerdict {
    enum class Status { pass, fail, not_applicable };
    Status status = Status::pass;
    BigInt index;
    /// A class e mod n with a^e an n-th power in Q but not in Gamma^n.
    std::optional<IntVector> counterexample;
    /// Generators of {e mod n : a^e in Q^{x n}}.
    IntMatrix power_classes;
};

/// Checks Gamma^n = Gamma cap Q^{x n} when gcd(n, 2 [Gamma' : Gamma]) = 1.
PowerIntersectionVerdict power_intersection_check(const MultSubgroup& gamma, std::uint64_t n);

/// Element of Q(t)^x: constant times a product of monic irreducible labels.
struct FunctionFieldElement {
    BigRational constant;
    std::vector<std::pair<RationalPoly, std::int64_t>> factors;

    bool is_constant() const { return factors.empty(); }
    /// Rebuilds numerator and denominator.
    std::pair<RationalPoly, RationalPoly> fraction() const;
    std::string to_string(const std::string& var = "t") const;
};

/// Parses +, -, *, /, ^ (integer exponents), parentheses, rational
/// numbers and the variable, with implicit multiplication ("2t(t+1)").
FunctionFieldElement parse_function_field(std::string_view expr, char var = 't');
FunctionFieldElement make_function_field_element(const RationalPoly& num, const RationalPoly& den);

/// Compact label text: "t^2+1".
std::string label_string(const RationalPoly& p, const std::string& var = "t");

/// Common coprime label basis of a tuple of elements with the exponent
/// matrix (rows = labels, columns = elements). Constants are dropped.
struct LabelMatrix {
    std::vector<RationalPoly> labels;
    IntMatrix exponents;
};

LabelMatrix label_matrix(const std::vector<FunctionFieldElement>& elements);

/// Splits a list of monic polynomials into pairwise coprime squarefree
/// monic factors such that every input is a product of them.
std::vector<RationalPoly> coprime_base(const std::vector<RationalPoly>& polys);

}  // namespace thumbtack

#endif  // THUMBTACK_MULTGROUP_HPP

#ifndef THUMBTACK_POLYNOMIAL_HPP
#define THUMBTACK_POLYNOMIAL_HPP

#include <compare>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "thumbtack/bigint.hpp"

namespace thumbtack {

/// Dense univariate polynomial over Q, lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<BigRational> coeffs);
    RationalPoly(std::initializer_list<BigRational> coeffs);

    static RationalPoly constant(const BigRational& c);
    static RationalPoly monomial(const BigRational& c, std::size_t degree);
    /// X^n - a
    static RationalPoly binomial(std::size_t n, const BigRational& a);
    static RationalPoly from_integers(const std::vector<BigInt>& coeffs);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigRational>& coeffs() const noexcept { return coeffs_; }
    BigRational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRational(0); }
    const BigRational& leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }

    RationalPoly monic() const;
    RationalPoly derivative() const;
    BigRational evaluate(const BigRational& x) const;
    /// this(other(X))
    RationalPoly compose(const RationalPoly& other) const;
    /// this(X + shift)
    RationalPoly shifted(const BigRational& shift) const;

    /// Primitive integer polynomial with positive leading coefficient and the
    /// rational factor c such that this = c * result.
    std::pair<BigRational, std::vector<BigInt>> primitive_part() const;

    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const RationalPoly& rhs);
    RationalPoly& operator*=(const BigRational& c);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(RationalPoly a, const BigRational& c) { return a *= c; }
    friend RationalPoly operator-(const RationalPoly& a);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) = default;

    /// Human-readable form such as "X^4 - 2X + 1/3".
    std::string to_string(const std::string& var = "X") const;

  private:
    void normalize();
    std::vector<BigRational> coeffs_;
};

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator%(const RationalPoly& a, const RationalPoly& b);
/// Exact division; throws std::domain_error when the remainder is nonzero.
RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b);
/// Monic gcd (zero when both are zero).
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
RationalPoly pow(RationalPoly base, std::uint64_t exp);
/// Resultant over Q.
BigRational resultant(const RationalPoly& a, const RationalPoly& b);

/// Degree then lowest-degree-first coefficients; the canonical factor order.
std::strong_ordering canonical_compare(const RationalPoly& a, const RationalPoly& b);

/// Squarefree test: decided modulo a few primes first, exact gcd otherwise.
bool is_squarefree(const RationalPoly& p);

/// Newton interpolation through (xs[i], ys[i]); xs distinct.
RationalPoly interpolate(const std::vector<BigRational>& xs, const std::vector<BigRational>& ys);

}  // namespace thumbtack

#endif  // THUMBTACK_POLYNOMIAL_HPP

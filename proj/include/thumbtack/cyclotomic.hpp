#ifndef THUMBTACK_CYCLOTOMIC_HPP
#define THUMBTACK_CYCLOTOMIC_HPP

#include <memory>
#include <string>
#include <vector>

#include "thumbtack/polynomial.hpp"

namespace thumbtack {

/// N-th cyclotomic polynomial, by exact division of X^N - 1 by the
/// cyclotomic polynomials of the proper divisors of N.
RationalPoly cyclotomic_poly(std::uint64_t n);

class CycElement;

/// Q(zeta_N) presented as Q[y]/Phi_N(y).
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
  public:
    static std::shared_ptr<const CyclotomicField> make(std::uint64_t conductor);

    std::uint64_t conductor() const noexcept { return conductor_; }
    std::size_t degree() const noexcept { return degree_; }
    const RationalPoly& modulus() const noexcept { return modulus_; }
    /// Order of the root-of-unity group, lcm(2, N).
    std::uint64_t roots_of_unity_order() const noexcept { return conductor_ % 2 == 0 ? conductor_ : 2 * conductor_; }

    CycElement zero() const;
    CycElement one() const;
    CycElement from_rational(const BigRational& q) const;
    /// zeta_N^k for any integer k.
    CycElement zeta(long long k = 1) const;
    CycElement from_poly(const RationalPoly& p) const;

    /// Reduces a coefficient vector of arbitrary length modulo Phi_N.
    std::vector<BigRational> reduce(std::vector<BigRational> coeffs) const;

  private:
    CyclotomicField(std::uint64_t conductor);
    std::uint64_t conductor_;
    RationalPoly modulus_;
    std::size_t degree_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// Residue of a polynomial of degree < phi(N) modulo Phi_N.
class CycElement {
  public:
    CycElement(FieldPtr field, std::vector<BigRational> coeffs);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<BigRational>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;
    /// Constant coefficient; meaningful when is_rational().
    const BigRational& rational_part() const { return coeffs_[0]; }
    RationalPoly as_poly() const { return RationalPoly(coeffs_); }

    CycElement inverse() const;
    CycElement pow(std::uint64_t e) const;
    /// Field norm to Q.
    BigRational norm() const;

    CycElement& operator+=(const CycElement& rhs);
    CycElement& operator-=(const CycElement& rhs);
    CycElement& operator*=(const CycElement& rhs);
    CycElement& operator*=(const BigRational& c);
    friend CycElement operator+(CycElement a, const CycElement& b) { return a += b; }
    friend CycElement operator-(CycElement a, const CycElement& b) { return a -= b; }
    friend CycElement operator*(CycElement a, const CycElement& b) { return a *= b; }
    friend CycElement operator*(CycElement a, const BigRational& c) { return a *= c; }
    friend CycElement operator-(const CycElement& a) { return a * BigRational(-1); }
    friend CycElement operator/(const CycElement& a, const CycElement& b) { return a * b.inverse(); }
    friend bool operator==(const CycElement& a, const CycElement& b);

    std::string to_string(const std::string& var = "z") const;

  private:
    void check_same_field(const CycElement& rhs) const;
    FieldPtr field_;
    std::vector<BigRational> coeffs_;
};

/// Polynomial in X with coefficients in a cyclotomic field, lowest degree
/// first, trimmed.
class CycPoly {
  public:
    CycPoly(FieldPtr field, std::vector<CycElement> coeffs);
    static CycPoly from_rational(FieldPtr field, const RationalPoly& p);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<CycElement>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const CycElement& leading() const;
    bool has_rational_coeffs() const;
    RationalPoly to_rational() const;

    CycPoly monic() const;
    CycPoly derivative() const;
    CycElement evaluate(const CycElement& x) const;
    /// this(X + c)
    CycPoly shifted(const CycElement& c) const;

    friend CycPoly operator+(const CycPoly& a, const CycPoly& b);
    friend CycPoly operator-(const CycPoly& a, const CycPoly& b);
    friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
    friend bool operator==(const CycPoly& a, const CycPoly& b);

    std::string to_string(const std::string& var = "X") const;

  private:
    void normalize();
    FieldPtr field_;
    std::vector<CycElement> coeffs_;
};

std::pair<CycPoly, CycPoly> divmod(const CycPoly& a, const CycPoly& b);
/// Monic gcd over the cyclotomic field.
CycPoly gcd(const CycPoly& a, const CycPoly& b);

/// Norm to Q[X]: Res_y(Phi_N(y), p(X, y)), computed by evaluation at
/// deg(p) * phi(N) + 1 integer points and interpolation.
RationalPoly norm(const CycPoly& p);

}  // namespace thumbtack

#endif  // THUMBTACK_CYCLOTOMIC_HPP

#ifndef THUMBTACK_BIGINT_HPP
#define THUMBTACK_BIGINT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace thumbtack {

namespace mp = boost::multiprecision;

// Expression templates are disabled so the scalars behave like plain values
// inside Eigen expressions and `auto` deductions.
using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using BigRational = mp::number<mp::gmp_rational, mp::et_off>;

/// Thrown when an oracle computation would exceed the configured size bound.
class SizeLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a self-verification step inside the library fails. Carries a
/// serialized witness so the failure is machine-checkable.
class VerificationError : public std::runtime_error {
  public:
    VerificationError(const std::string& what, std::string witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const std::string& witness() const noexcept { return witness_; }

  private:
    std::string witness_;
};

inline BigInt numerator_of(const BigRational& q) { return mp::numerator(q); }
inline BigInt denominator_of(const BigRational& q) { return mp::denominator(q); }

BigRational make_rational(const BigInt& num, const BigInt& den);

/// Parses "n" or "n/d" (optional sign, decimal digits). Throws
/// std::invalid_argument on malformed input or a zero denominator.
BigRational parse_rational(std::string_view text);

/// Integer or "n/d" when the denominator is not one.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);
/// Always "n/d", the polynomial coefficient wire format.
std::string to_fraction_string(const BigRational& q);

BigInt ipow(BigInt base, std::uint64_t exp);
BigRational ipow(BigRational base, std::int64_t exp);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
/// Least nonnegative residue.
BigInt mod_floor(const BigInt& a, const BigInt& m);

/// Deterministic for n < 3.3e24, strong probable-prime (25 random bases from
/// a fixed seed) above that.
bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<BigInt, std::int64_t>> factor_integer(const BigInt& n);
std::vector<std::pair<std::uint64_t, int>> factor_small(std::uint64_t n);

/// (l, m) with q = l^m and l prime, or nullopt.
std::optional<std::pair<std::uint64_t, int>> as_prime_power(std::uint64_t q);

std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Exact n-th root of a nonnegative integer, if it exists.
std::optional<BigInt> exact_root(const BigInt& value, std::uint64_t n);
/// Exact rational c with c^n = q, if one exists (sign handled for odd n).
std::optional<BigRational> exact_rational_root(const BigRational& q, std::uint64_t n);

std::int64_t to_int64(const BigInt& z);

}  // namespace thumbtack

#endif  // THUMBTACK_BIGINT_HPP

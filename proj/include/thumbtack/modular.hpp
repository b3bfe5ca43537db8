#ifndef THUMBTACK_MODULAR_HPP
#define THUMBTACK_MODULAR_HPP

// Polynomial arithmetic over Z/p (word-size p) and Z/p^k (BigInt
// coefficients). Used by the Zassenhaus factorizer; not part of the public
// algebra surface.

#include <cstdint>
#include <random>
#include <vector>

#include "thumbtack/bigint.hpp"

namespace thumbtack::modular {

/// Coefficients in [0, p), lowest degree first, trimmed.
using PolyP = std::vector<std::uint64_t>;

struct PrimeField {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;

    void trim(PolyP& f) const;
    PolyP reduce(const std::vector<BigInt>& f) const;
    PolyP add(const PolyP& a, const PolyP& b) const;
    PolyP sub(const PolyP& a, const PolyP& b) const;
    PolyP mul(const PolyP& a, const PolyP& b) const;
    PolyP scale(const PolyP& a, std::uint64_t c) const;
    void divmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r) const;
    PolyP rem(const PolyP& a, const PolyP& b) const;
    PolyP monic(const PolyP& a) const;
    PolyP gcd(PolyP a, PolyP b) const;
    /// Returns g = gcd (monic) and s, t with s a + t b = g.
    PolyP xgcd(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t) const;
    PolyP derivative(const PolyP& a) const;
    PolyP powmod(PolyP base, std::uint64_t e, const PolyP& mod) const;

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles (distinct-degree then equal-degree splitting). Output is
    /// sorted by degree, then coefficients.
    std::vector<PolyP> factor_squarefree(const PolyP& f, std::mt19937_64& rng) const;
};

long degree(const PolyP& f);

/// Arithmetic in (Z/M)[x], coefficients in [0, M).
struct PrimePowerRing {
    BigInt modulus;

    std::vector<BigInt> reduce(const std::vector<BigInt>& f) const;
    std::vector<BigInt> add(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const;
    std::vector<BigInt> sub(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const;
    std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const;
    std::vector<BigInt> scale(const std::vector<BigInt>& a, const BigInt& c) const;
    /// Division by a polynomial with unit leading coefficient.
    void divmod(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::vector<BigInt>& q,
                std::vector<BigInt>& r) const;
    BigInt inverse(const BigInt& a) const;
};

void trim(std::vector<BigInt>& f);

/// Lifts f = lc * u_1 ... u_r (mod p, u_i monic, pairwise coprime) to the same
/// factorization modulo p^k. Returns monic lifted factors in input order.
std::vector<std::vector<BigInt>> hensel_lift(const std::vector<BigInt>& f, const std::vector<PolyP>& factors,
                                             std::uint64_t p, unsigned k);

}  // namespace thumbtack::modular

#endif  // THUMBTACK_MODULAR_HPP

#include "thumbtack/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

namespace thumbtack {

BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(num, den);
}

BigRational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) throw std::invalid_argument("expected digits in '" + std::string(text) + "'");
        for (std::size_t k = i; k < s.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(s[k])))
                throw std::invalid_argument("unexpected character '" + std::string(1, s[k]) + "' at position " +
                                            std::to_string(k) + " in '" + std::string(text) + "'");
        }
        BigInt v(std::string(s.substr(i)));
        return (s[0] == '-') ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRational(parse_int(text, true));
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    return make_rational(num, den);
}

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const BigRational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

std::string to_fraction_string(const BigRational& q) {
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

BigInt ipow(BigInt base, std::uint64_t exp) {
    BigInt result = 1;
    while (exp) {
        if (exp & 1u) result *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return result;
}

BigRational ipow(BigRational base, std::int64_t exp) {
    if (exp < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        base = BigRational(denominator_of(base), numerator_of(base));
        exp = -exp;
    }
    BigInt num = ipow(numerator_of(base), static_cast<std::uint64_t>(exp));
    BigInt den = ipow(denominator_of(base), static_cast<std::uint64_t>(exp));
    return BigRational(num, den);
}

BigInt gcd(const BigInt& a, const BigInt& b) { return mp::gcd(a, b); }

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return mp::abs(a / gcd(a, b) * b);
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

namespace {

bool strong_probable_prime(const BigInt& n, const BigInt& base) {
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    BigInt x = mp::powm(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

BigInt pollard_brent(const BigInt& n, std::uint64_t seed) {
    if ((n & 1) == 0) return 2;
    std::mt19937_64 rng(seed);
    auto rand_below = [&](const BigInt& bound) {
        BigInt r = 0;
        for (int i = 0; i < 4; ++i) r = (r << 64) + BigInt(rng());
        return r % bound;
    };
    while (true) {
        BigInt y = rand_below(n - 1) + 1;
        BigInt c = rand_below(n - 1) + 1;
        BigInt g = 1, q = 1, x, ys;
        std::uint64_t r = 1;
        const std::uint64_t m = 64;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = (q * mp::abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd(mp::abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const BigInt& n, std::vector<BigInt>& out, std::uint64_t seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    BigInt d = pollard_brent(n, seed);
    factor_into(d, out, seed + 1);
    factor_into(n / d, out, seed + 2);
}

}  // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (int p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // The first 13 prime bases are a proof for n < 3317044064679887385961981.
    for (int p : small) {
        if (!strong_probable_prime(n, BigInt(p))) return false;
    }
    static const BigInt deterministic_bound("3317044064679887385961981");
    if (n < deterministic_bound) return true;
    std::mt19937 gen(0x7468756du);
    return mp::miller_rabin_test(n, 25, gen);
}

bool is_prime(std::uint64_t n) { return is_prime(BigInt(n)); }

std::vector<std::pair<BigInt, std::int64_t>> factor_integer(const BigInt& value) {
    if (value == 0) throw std::invalid_argument("cannot factor zero");
    BigInt n = mp::abs(value);
    std::vector<BigInt> primes;
    for (unsigned p = 2; p < 10000 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    factor_into(n, primes, 1);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<BigInt, std::int64_t>> result;
    for (const auto& p : primes) {
        if (!result.empty() && result.back().first == p)
            ++result.back().second;
        else
            result.emplace_back(p, 1);
    }
    return result;
}

std::vector<std::pair<std::uint64_t, int>> factor_small(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cannot factor zero");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (auto& [p, e] : factor_integer(BigInt(n))) out.emplace_back(p.convert_to<std::uint64_t>(), static_cast<int>(e));
    return out;
}

std::optional<std::pair<std::uint64_t, int>> as_prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto f = factor_small(q);
    if (f.size() != 1) return std::nullopt;
    return std::make_pair(f[0].first, f[0].second);
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("phi(0)");
    std::uint64_t phi = n;
    if (n == 1) return 1;
    for (auto [p, e] : factor_small(n)) phi = phi / p * (p - 1);
    return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

std::optional<BigInt> exact_root(const BigInt& value, std::uint64_t n) {
    if (value < 0) throw std::invalid_argument("exact_root of a negative integer");
    if (n == 0) throw std::invalid_argument("zeroth root");
    if (value < 2 || n == 1) return value;
    // Bisection on [0, 2^(bits/n + 1)].
    std::size_t bits = mp::msb(value) + 1;
    BigInt lo = 0, hi = BigInt(1) << (bits / n + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) >> 1;
        if (ipow(mid, n) <= value)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (ipow(lo, n) == value) return lo;
    return std::nullopt;
}

std::optional<BigRational> exact_rational_root(const BigRational& q, std::uint64_t n) {
    bool negative = q < 0;
    if (negative && n % 2 == 0) return std::nullopt;
    auto num = exact_root(mp::abs(numerator_of(q)), n);
    auto den = exact_root(denominator_of(q), n);
    if (!num || !den) return std::nullopt;
    BigRational root(*num, *den);
    return negative ? BigRational(-root) : root;
}

std::int64_t to_int64(const BigInt& z) {
    if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + z.str());
    return z.convert_to<std::int64_t>();
}

}  // namespace thumbtack

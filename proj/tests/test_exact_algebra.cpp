#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "thumbtack/cyclotomic.hpp"
#include "thumbtack/factorization.hpp"

using namespace thumbtack;

namespace {

RationalPoly X() { return RationalPoly({0, 1}); }
RationalPoly C(long c) { return RationalPoly::constant(c); }

// Rational root test: candidates +-(divisor of a0)/(divisor of an).
bool has_rational_root(const RationalPoly& p) {
    auto [scale, ints] = p.primitive_part();
    if (ints[0] == 0) return true;
    auto nums = factor_integer(ints[0]);
    auto dens = factor_integer(ints.back());
    auto all_divisors = [](const std::vector<std::pair<BigInt, std::int64_t>>& f) {
        std::vector<BigInt> out{1};
        for (const auto& [prime, e] : f) {
            std::size_t n = out.size();
            BigInt pk = 1;
            for (std::int64_t k = 1; k <= e; ++k) {
                pk *= prime;
                for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
            }
        }
        return out;
    };
    for (const auto& a : all_divisors(nums))
        for (const auto& b : all_divisors(dens))
            for (int sign : {1, -1})
                if (p.evaluate(BigRational(a * sign, b)) == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("-8/9") == BigRational(-8, 9));
    CHECK(parse_rational("6/4") == BigRational(3, 2));
    CHECK(to_string(parse_rational("10/5")) == "2");
    CHECK(to_fraction_string(BigRational(2)) == "2/1");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2x"), std::invalid_argument);
    CHECK(exact_rational_root(BigRational(-27, 8), 3) == BigRational(-3, 2));
    CHECK_FALSE(exact_rational_root(BigRational(-64), 4).has_value());
}

TEST_CASE("integer factorization and primality") {
    auto f = factor_integer(BigInt(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::make_pair(BigInt(2), std::int64_t{3}));
    CHECK(f[2] == std::make_pair(BigInt(5), std::int64_t{1}));
    BigInt big = BigInt("1000000007") * BigInt("998244353");
    auto g = factor_integer(big);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == BigInt("998244353"));
    CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));
    CHECK(as_prime_power(27) == std::make_pair(std::uint64_t{3}, 3));
    CHECK_FALSE(as_prime_power(12).has_value());
}

TEST_CASE("cyclotomic polynomial examples") {
    CHECK(cyclotomic_poly(1) == X() - C(1));
    CHECK(cyclotomic_poly(2) == X() + C(1));
    // X^8 - 1 divided by (X - 1)(X + 1)(X^2 + 1), done by hand here.
    RationalPoly by_hand = exact_div(RationalPoly::binomial(8, 1), (X() - C(1)) * (X() + C(1)) * (X() * X() + C(1)));
    CHECK(by_hand == pow(X(), 4) + C(1));
    CHECK(cyclotomic_poly(8) == by_hand);
    CHECK_THROWS(cyclotomic_poly(0));
}

TEST_CASE("product of cyclotomic polynomials over divisors is X^N - 1") {
    for (std::uint64_t n = 1; n <= 64; ++n) {
        RationalPoly prod = C(1);
        for (auto d : divisors(n)) prod *= cyclotomic_poly(d);
        CHECK(prod == RationalPoly::binomial(n, 1));
        auto phi = cyclotomic_poly(n);
        CHECK(phi.degree() == static_cast<long>(euler_phi(n)));
        CHECK(phi.is_monic());
        for (const auto& c : phi.coeffs()) CHECK(denominator_of(c) == 1);
    }
}

TEST_CASE("resultant and norms") {
    // Res(X^2 - 2, X - 1) = (1 - 2) up to sign convention: prod over roots of first of second.
    CHECK(resultant(X() * X() - C(2), X() - C(1)) == -1);
    auto F = CyclotomicField::make(8);
    auto w = F->zeta(1) + F->zeta(7);
    CHECK(w * w == F->from_rational(2));
    CHECK(w.norm() == 4);  // (sqrt2)(-sqrt2) twice
    CHECK((F->zeta(3) * F->zeta(5)) == F->one());
    auto u = F->zeta(1) + F->from_rational(3);
    CHECK(u * u.inverse() == F->one());
}

TEST_CASE("factor over rationals: examples") {
    SUBCASE("difference of squares") {
        auto f = factor_over_rationals(X() * X() - C(1));
        REQUIRE(f.factors.size() == 2);
        CHECK(f.constant == 1);
        CHECK(f.factors[0].poly == X() - C(1));
        CHECK(f.factors[1].poly == X() + C(1));
    }
    SUBCASE("X^4 + 4 splits into two quadratics") {
        RationalPoly g1 = X() * X() - C(2) * X() + C(2);
        RationalPoly g2 = X() * X() + C(2) * X() + C(2);
        // Oracle: the product expands back to X^4 + 4.
        CHECK(g1 * g2 == pow(X(), 4) + C(4));
        auto f = factor_over_rationals(pow(X(), 4) + C(4));
        REQUIRE(f.factors.size() == 2);
        CHECK(f.factors[0].poly == g1);
        CHECK(f.factors[1].poly == g2);
    }
    SUBCASE("X^3 - 2 is irreducible") {
        RationalPoly p = pow(X(), 3) - C(2);
        CHECK_FALSE(has_rational_root(p));  // cubic without rational roots
        auto f = factor_over_rationals(p);
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0].poly == p);
    }
}

TEST_CASE("factor over rationals: harder inputs") {
    SUBCASE("Swinnerton-Dyer polynomial is irreducible despite splitting mod every prime") {
        RationalPoly sd = pow(X(), 4) - C(10) * X() * X() + C(1);
        auto f = factor_over_rationals(sd);
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0].poly == sd);
    }
    SUBCASE("repeated and non-monic factors") {
        RationalPoly p = pow(X() * C(3) - C(1), 3) * pow(X() * X() + C(1), 2) * (X() - C(5)) * C(7);
        auto f = factor_over_rationals(p);
        CHECK(expand(f) == p);
        REQUIRE(f.factors.size() == 3);
        // Same degree: ordered by coefficients, lowest degree first.
        CHECK(f.factors[0].poly == X() - C(5));
        CHECK(f.factors[1].poly == X() - RationalPoly::constant(BigRational(1, 3)));
        CHECK(f.factors[1].multiplicity == 3);
        CHECK(f.factors[2].multiplicity == 2);
    }
    SUBCASE("X^16 - 1 splits into cyclotomic factors") {
        auto f = factor_over_rationals(RationalPoly::binomial(16, 1));
        REQUIRE(f.factors.size() == 5);
        for (const auto& fac : f.factors) CHECK(fac.multiplicity == 1);
        CHECK(f.factors.back().poly == cyclotomic_poly(16));
    }
}

TEST_CASE("factorization reconstructs random products and is deterministic") {
    std::mt19937_64 rng(20261015);
    std::uniform_int_distribution<int> coef(-6, 6);
    std::uniform_int_distribution<int> degree(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        RationalPoly p = C(1);
        int pieces = 1 + trial % 3;
        for (int i = 0; i < pieces; ++i) {
            std::vector<BigRational> c;
            int d = degree(rng);
            for (int j = 0; j < d; ++j) c.emplace_back(coef(rng));
            c.emplace_back(1 + std::abs(coef(rng)));
            p *= RationalPoly(c);
        }
        auto f1 = factor_over_rationals(p);
        auto f2 = factor_over_rationals(p);
        CHECK(expand(f1) == p);
        REQUIRE(f1.factors.size() == f2.factors.size());
        for (std::size_t i = 0; i < f1.factors.size(); ++i) {
            CHECK(f1.factors[i].poly == f2.factors[i].poly);
            CHECK(f1.factors[i].poly.is_monic());
        }
    }
}

TEST_CASE("factor over cyclotomic fields: examples") {
    SUBCASE("X^2 - 2 over Q(zeta8) splits") {
        // Oracle: (y + y^7)^2 reduces to 2 modulo Phi_8 by plain polynomial arithmetic.
        RationalPoly y = X();
        RationalPoly w = y + pow(y, 7);
        CHECK((w * w) % cyclotomic_poly(8) == C(2));
        auto F = CyclotomicField::make(8);
        auto f = factor_over_cyclotomic(CycPoly::from_rational(F, X() * X() - C(2)));
        REQUIRE(f.factors.size() == 2);
        auto root = F->from_poly(w % cyclotomic_poly(8));
        std::vector<CycPoly> expected{CycPoly(F, {-root, F->one()}), CycPoly(F, {root, F->one()})};
        bool match = (f.factors[0].poly == expected[0] && f.factors[1].poly == expected[1]) ||
                     (f.factors[0].poly == expected[1] && f.factors[1].poly == expected[0]);
        CHECK(match);
        CHECK(expand(f) == CycPoly::from_rational(F, X() * X() - C(2)));
    }
    SUBCASE("X^3 - 2 stays irreducible over Q(zeta3)") {
        auto F = CyclotomicField::make(3);
        auto f = factor_over_cyclotomic(CycPoly::from_rational(F, pow(X(), 3) - C(2)));
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0].poly.degree() == 3);
    }
    SUBCASE("X^2 - 2 stays irreducible over Q(i)") {
        auto F = CyclotomicField::make(4);
        auto f = factor_over_cyclotomic(CycPoly::from_rational(F, X() * X() - C(2)));
        REQUIRE(f.factors.size() == 1);
    }
    SUBCASE("X^4 + 4 over Q(i) splits into linear factors") {
        auto F = CyclotomicField::make(4);
        auto p = CycPoly::from_rational(F, pow(X(), 4) + C(4));
        auto f = factor_over_cyclotomic(p);
        CHECK(f.factors.size() == 4);
        CHECK(expand(f) == p);
    }
    SUBCASE("X^8 - 2 over Q(zeta8) has two quartic factors") {
        auto F = CyclotomicField::make(8);
        auto p = CycPoly::from_rational(F, RationalPoly::binomial(8, 2));
        auto f = factor_over_cyclotomic(p);
        REQUIRE(f.factors.size() == 2);
        CHECK(f.factors[0].poly.degree() == 4);
        CHECK(f.factors[1].poly.degree() == 4);
        CHECK(expand(f) == p);
    }
    SUBCASE("irrational coefficients and repeated factors") {
        auto F = CyclotomicField::make(5);
        auto z = F->zeta(1);
        CycPoly lin(F, {-z, F->one()});
        CycPoly quad(F, {F->from_rational(2) + z, F->zero(), F->one()});
        CycPoly p = lin * lin * quad;
        auto f = factor_over_cyclotomic(p);
        CHECK(expand(f) == p);
    }
    SUBCASE("size limit") {
        auto F = CyclotomicField::make(16);
        OracleConfig tiny{8};
        CHECK_THROWS_AS(factor_over_cyclotomic(CycPoly::from_rational(F, RationalPoly::binomial(2, 3)), tiny),
                        SizeLimitError);
    }
}

TEST_CASE("nth roots in cyclotomic fields") {
    auto F8 = CyclotomicField::make(8);
    auto F3 = CyclotomicField::make(3);
    auto one = nth_root_in_cyclotomic(BigRational(1), 5, F3);
    REQUIRE(one.has_value());
    CHECK(one->pow(5) == F3->one());

    auto r2 = nth_root_in_cyclotomic(BigRational(2), 2, F8);
    REQUIRE(r2.has_value());
    auto w = F8->zeta(1) + F8->zeta(-1);
    CHECK((*r2 == w || *r2 == -w));

    CHECK_FALSE(nth_root_in_cyclotomic(BigRational(2), 3, F3).has_value());

    auto F4 = CyclotomicField::make(4);
    auto r = nth_root_in_cyclotomic(BigRational(-4), 4, F4);
    REQUIRE(r.has_value());
    CHECK(r->pow(4) == F4->from_rational(-4));

    // Past the size bound the search splits into square roots.
    auto F32 = CyclotomicField::make(32);
    auto r16 = nth_root_in_cyclotomic(BigRational(65536), 16, F32);
    REQUIRE(r16.has_value());
    CHECK(r16->pow(16) == F32->from_rational(65536));
    CHECK_FALSE(nth_root_in_cyclotomic(BigRational(2), 16, F32).has_value());
}

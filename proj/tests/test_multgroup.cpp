#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "thumbtack/multgroup.hpp"

#include "brute_force.hpp"

using namespace thumbtack;
using namespace brute;

namespace {

MultSubgroup G(std::initializer_list<const char*> values) {
    std::vector<BigRational> v;
    for (const char* s : values) v.push_back(parse_rational(s));
    return MultSubgroup::from_rationals(v);
}

IntVector V(std::initializer_list<long> xs) {
    IntVector out(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long x : xs) out(i++) = x;
    return out;
}

}  // namespace

TEST_CASE("factor_rational examples") {
    auto a = factor_rational(12);
    CHECK(a.sign == 1);
    CHECK(a.exponents == std::vector<std::pair<BigInt, std::int64_t>>{{2, 2}, {3, 1}});
    auto b = factor_rational(BigRational(-8, 9));
    CHECK(b.sign == -1);
    CHECK(b.exponents == std::vector<std::pair<BigInt, std::int64_t>>{{2, 3}, {3, -2}});
    CHECK(b.to_string() == "-2^3*3^-2");
    auto c = factor_rational(1);
    CHECK(c.exponents.empty());
    CHECK(c.to_string() == "+1");
    CHECK_THROWS_AS(factor_rational(0), std::invalid_argument);
}

TEST_CASE("factor_rational round trip") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        long n = num(rng);
        if (n == 0) continue;
        BigRational q(n, den(rng));
        auto f = factor_rational(q);
        CHECK(f.value() == q);
        for (std::size_t k = 0; k < f.exponents.size(); ++k) {
            CHECK(is_prime(f.exponents[k].first));
            CHECK(f.exponents[k].second != 0);
            if (k) CHECK(f.exponents[k - 1].first < f.exponents[k].first);
        }
    }
}

TEST_CASE("exponent presentation") {
    auto g = G({"12", "-5/2"});
    CHECK(g.support() == std::vector<BigInt>{2, 3, 5});
    IntMatrix expected(3, 2);
    expected << 2, -1, 1, 0, 0, 1;
    CHECK(g.exponent_matrix() == expected);
    CHECK(g.torsion_row() == V({0, 1}));
    CHECK(g.evaluate(V({1, 2})).value() == BigRational(75));
}

TEST_CASE("independence examples") {
    CHECK(independence_check(G({"2", "3"})).independent);
    auto d = independence_check(G({"2", "4"}));
    CHECK_FALSE(d.independent);
    REQUIRE(d.witness);
    CHECK(*d.witness == V({2, -1}));
    auto t = G({"6", "10", "15"});
    CHECK(independence_check(t).independent);
    CHECK(abs(determinant<BigInt>(t.exponent_matrix())) == 2);
    auto m = independence_check(G({"-1"}));
    CHECK_FALSE(m.independent);
    CHECK(*m.witness == V({1}));
}

TEST_CASE("independence and witness duality") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        auto sg = random_gamma(rng);
        auto g = to_subgroup(sg);
        auto v = independence_check(g);
        if (v.independent) {
            CHECK_FALSE(v.witness);
            // Full column rank over Q.
            CHECK(smith_normal_form<BigInt>(g.exponent_matrix()).rank == g.rank());
        } else {
            REQUIRE(v.witness);
            CHECK(g.evaluate(*v.witness).is_torsion());
            bool nonzero = false;
            for (const auto& x : *v.witness) nonzero = nonzero || x != 0;
            CHECK(nonzero);
        }
    }
}

TEST_CASE("division group examples") {
    auto a = division_group(G({"4"}));
    CHECK(a.index == 4);
    REQUIRE(a.division_generators.size() == 2);
    CHECK(a.division_generators[0].value() == -1);
    CHECK(a.division_generators[1].value() == 2);
    CHECK(a.powers == std::vector<BigInt>{2, 2});

    auto b = division_group(G({"2", "3"}));
    CHECK(b.index == 2);
    CHECK(b.division_generators.size() == 3);

    CHECK(division_group(G({"-1", "2"})).index == 1);
    CHECK(division_group(G({"1"})).index == 2);
}

TEST_CASE("division group examples agree with brute force") {
    CHECK(brute_force_index({{2}, {{2}}, {0}}, 4, 8) == 4);
    CHECK(brute_force_index({{2, 3}, {{1, 0}, {0, 1}}, {0, 0}}, 4, 8) == 2);
    CHECK(brute_force_index({{2}, {{0}, {1}}, {1, 0}}, 4, 8) == 1);
}

TEST_CASE("division group index matches brute-force saturation search") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto sg = random_gamma(rng);
        auto g = to_subgroup(sg);
        auto rep = division_group(g);
        // Every division generator really has a power in Gamma.
        for (std::size_t i = 0; i < rep.division_generators.size(); ++i)
            CHECK(contains(g, rep.division_generators[i].pow(to_int64(rep.powers[i]))));
        auto [box, max_n] = safe_bounds(sg);
        CHECK(rep.index == brute_force_index(sg, box, max_n));
        // The small search window can only undercount.
        CHECK(brute_force_index(sg, 6, 12) <= rep.index);
    }
}

TEST_CASE("power intersection examples") {
    using S = PowerIntersectionVerdict::Status;
    CHECK(power_intersection_check(G({"2", "3"}), 5).status == S::pass);
    CHECK(power_intersection_check(G({"2", "3"}), 9).status == S::pass);
    CHECK(power_intersection_check(G({"4"}), 2).status == S::not_applicable);
    // Coprimality is what makes the claim true: <4> and n = 2 has 4 = 2^2.
    auto g4 = G({"4"});
    auto sq = power_intersection_check(G({"4"}), 3);
    CHECK(sq.status == S::pass);
}

TEST_CASE("power intersection over random subgroups") {
    using S = PowerIntersectionVerdict::Status;
    std::mt19937_64 rng(99);
    int applicable = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto g = to_subgroup(random_gamma(rng));
        for (std::uint64_t n : {3, 5, 7, 9, 11, 15, 25}) {
            auto v = power_intersection_check(g, n);
            CHECK(v.status != S::fail);
            if (v.status == S::pass) ++applicable;
        }
    }
    CHECK(applicable > 100);
}

TEST_CASE("function field parsing") {
    auto a = parse_function_field("(t^2-1)/t");
    CHECK(a.constant == 1);
    std::map<std::string, std::int64_t> fa;
    for (const auto& [f, e] : a.factors) fa[label_string(f)] = e;
    CHECK(fa == std::map<std::string, std::int64_t>{{"t-1", 1}, {"t+1", 1}, {"t", -1}});

    auto b = parse_function_field("2t^2 + 2t");
    CHECK(b.constant == 2);
    std::map<std::string, std::int64_t> fb;
    for (const auto& [f, e] : b.factors) fb[label_string(f)] = e;
    CHECK(fb == std::map<std::string, std::int64_t>{{"t", 1}, {"t+1", 1}});

    auto c = parse_function_field("t^2 + 1");
    REQUIRE(c.factors.size() == 1);
    CHECK(label_string(c.factors[0].first) == "t^2+1");

    auto d = parse_function_field("-(t+1)^-2 * 3/4");
    CHECK(d.constant == BigRational(-3, 4));
    CHECK(d.factors[0].second == -2);

    auto e = parse_function_field("t(t+1)/(t^2+t)");
    CHECK(e.is_constant());
    CHECK(e.constant == 1);
}

TEST_CASE("function field parse errors carry positions") {
    CHECK_THROWS_AS(parse_function_field("t-t"), ParseError);
    CHECK_THROWS_AS(parse_function_field("0"), ParseError);
    try {
        parse_function_field("t + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    try {
        parse_function_field("(t+1");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_function_field("t/(t-t)"), ParseError);
    CHECK_THROWS_AS(parse_function_field("x"), ParseError);
}

TEST_CASE("function field labels are coprime and squarefree") {
    std::mt19937_64 rng(41);
    const std::vector<std::string> pieces{"t", "t+1", "t-1", "t^2+1", "t^2-2", "2t+3", "t^3-t"};
    for (int trial = 0; trial < 60; ++trial) {
        std::string expr = std::to_string(1 + rng() % 5);
        for (int k = 0; k < 4; ++k) {
            expr += (rng() % 3 == 0 ? "/(" : "*(") + pieces[rng() % pieces.size()] + ")";
            if (rng() % 3 == 0) expr += "^" + std::to_string(1 + rng() % 3);
        }
        auto f = parse_function_field(expr);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            const auto& p = f.factors[i].first;
            CHECK(p.leading() == 1);
            CHECK(p.degree() >= 1);
            CHECK(gcd(p, p.derivative()).degree() == 0);
            CHECK(f.factors[i].second != 0);
            for (std::size_t j = i + 1; j < f.factors.size(); ++j) CHECK(gcd(p, f.factors[j].first).degree() == 0);
        }
    }
}

TEST_CASE("coprime base") {
    RationalPoly t({0, 1});
    RationalPoly one = RationalPoly::constant(1);
    auto base = coprime_base({t * t - one, t * t + t});
    std::set<std::string> names;
    for (const auto& b : base) names.insert(label_string(b));
    CHECK(names == std::set<std::string>{"t", "t-1", "t+1"});
    auto sq = coprime_base({(t + one) * (t + one) * t});
    std::set<std::string> sq_names;
    for (const auto& b : sq) sq_names.insert(label_string(b));
    CHECK(sq_names == std::set<std::string>{"t", "t+1"});
}

TEST_CASE("label matrix of a tuple") {
    auto L = label_matrix({parse_function_field("t^2"), parse_function_field("t")});
    REQUIRE(L.labels.size() == 1);
    IntMatrix expected(1, 2);
    expected << 2, 1;
    CHECK(L.exponents == expected);
    auto C = label_matrix({parse_function_field("2t")});
    CHECK(C.exponents == IntMatrix::Ones(1, 1));
}

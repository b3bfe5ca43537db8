#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "thumbtack/cohomology.hpp"

using namespace thumbtack;

namespace {

MultSubgroup G(std::initializer_list<const char*> values) {
    std::vector<BigRational> v;
    for (const char* s : values) v.push_back(parse_rational(s));
    return MultSubgroup::from_rationals(v);
}

// Raw enumeration of all |M|^|G| cochains, for tiny cases only.
std::size_t raw_cocycle_count(const FiniteGroup& g, const FiniteModule& m) {
    auto elems = m.elements();
    std::vector<std::size_t> pick(static_cast<std::size_t>(g.order()), 0);
    std::size_t count = 0;
    while (true) {
        Cochain f;
        for (auto p : pick) f.values.push_back(elems[p]);
        if (is_cocycle(g, m, f)) ++count;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == elems.size()) pick[i++] = 0;
        if (i == pick.size()) return count;
    }
}

std::vector<std::int64_t> powers_of(const FiniteGroup& g, int generator, std::int64_t unit, std::int64_t d) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(g.order()), -1);
    int x = g.identity();
    std::int64_t u = 1 % d;
    for (int k = 0; k < g.order(); ++k) {
        out[static_cast<std::size_t>(x)] = u;
        x = g.mul(x, generator);
        u = u * unit % d;
    }
    return out;
}

}  // namespace

TEST_CASE("small groups") {
    auto groups = small_groups(8);
    CHECK(groups.size() == 14);
    std::map<int, int> per_order;
    for (const auto& ng : groups) ++per_order[ng.group.order()];
    CHECK(per_order == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 1}, {6, 2}, {7, 1}, {8, 5}});
    for (const auto& ng : groups) {
        bool abelian = ng.name != "S3" && ng.name != "D4" && ng.name != "Q8";
        CHECK(ng.group.is_abelian() == abelian);
        for (int x = 0; x < ng.group.order(); ++x) CHECK(ng.group.mul(x, ng.group.inverse(x)) == ng.group.identity());
    }
    auto q8 = FiniteGroup::quaternion();
    int central = 0;
    for (int x = 0; x < 8; ++x) central += q8.is_central(x);
    CHECK(central == 2);
    CHECK_THROWS_AS(FiniteGroup::make({{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteGroup::make({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), std::invalid_argument);
}

TEST_CASE("module validation") {
    auto c2 = FiniteGroup::cyclic(2);
    CHECK_NOTHROW(FiniteModule::cyclic(c2, 4, {1, 3}));
    // Multiplication by 2 is not an automorphism of Z/4.
    CHECK_THROWS_AS(FiniteModule::cyclic(c2, 4, {1, 2}), std::invalid_argument);
    // x -> x on Z/2 into Z/4 is not well defined.
    SmallMatrix bad(2, 2);
    bad << 1, 1, 0, 1;
    CHECK_THROWS_AS(FiniteModule::make(c2, {4, 2}, {SmallMatrix::Identity(2, 2), bad}), std::invalid_argument);
    auto c4 = FiniteGroup::cyclic(4);
    CHECK(unit_actions(c4, 8).size() == 4);
    CHECK(unit_actions(c2, 3).size() == 2);
    CHECK(unit_actions(FiniteGroup::cyclic(3), 4).size() == 1);
}

TEST_CASE("h1 examples") {
    auto c2 = FiniteGroup::cyclic(2);
    auto neg = FiniteModule::cyclic(c2, 4, {1, 3});
    auto r = h1(c2, neg);
    CHECK(r.cocycle_count == 4);
    CHECK(r.coboundary_count == 2);
    REQUIRE(r.invariant_factors.size() == 1);
    CHECK(r.invariant_factors[0] == 2);
    CHECK(r.representatives.size() == 2);
    CHECK(r.enumeration_checked);

    auto triv = h1(FiniteGroup::cyclic(1), FiniteModule::trivial(FiniteGroup::cyclic(1), {6, 4}));
    CHECK(triv.invariant_factors.empty());

    auto coprime = h1(c2, FiniteModule::trivial(c2, {3}));
    CHECK(coprime.invariant_factors.empty());
    CHECK(coprime.cocycle_count == 1);

    // Hom(C2 x C2, Z/2 x Z/4) has order 4 * 4 = 16.
    auto v4 = FiniteGroup::product(c2, c2);
    auto homs = h1(v4, FiniteModule::trivial(v4, {2, 4}));
    CHECK(homs.order() == 16);
    CHECK(homs.coboundary_count == 1);
}

TEST_CASE("h1 against raw enumeration") {
    for (const auto& ng : small_groups(4)) {
        for (std::int64_t d = 2; d <= 6; ++d) {
            for (const auto& units : unit_actions(ng.group, d)) {
                auto m = FiniteModule::cyclic(ng.group, d, units);
                auto r = h1(ng.group, m);
                CHECK(r.cocycle_count == raw_cocycle_count(ng.group, m));
                CHECK(r.cocycle_count == r.coboundary_count * r.order());
                std::set<Cochain> distinct(r.representatives.begin(), r.representatives.end());
                CHECK(BigInt(distinct.size()) == r.order());
            }
        }
    }
}

TEST_CASE("cocycle consequences") {
    for (const auto& ng : small_groups(8)) {
        const auto& g = ng.group;
        for (std::int64_t d : {4, 8, 9}) {
            for (const auto& units : unit_actions(g, d)) {
                auto m = FiniteModule::cyclic(g, d, units);
                for (const auto& f : enumerate_cocycles(g, m)) {
                    CHECK(f.values[static_cast<std::size_t>(g.identity())] == m.zero());
                    for (int x = 0; x < g.order(); ++x) {
                        int xi = g.inverse(x);
                        auto rhs = m.sub(m.zero(), m.act(xi, f.values[static_cast<std::size_t>(x)]));
                        CHECK(f.values[static_cast<std::size_t>(xi)] == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("h1 count factorization on all small pairs") {
    int pairs = 0;
    for (const auto& ng : small_groups(8)) {
        for (std::int64_t d = 2; d <= 16; ++d) {
            auto actions = unit_actions(ng.group, d);
            // A few actions per modulus keep the linear solves cheap.
            for (std::size_t i = 0; i < actions.size() && i < 3; ++i) {
                auto r = h1(ng.group, FiniteModule::cyclic(ng.group, d, actions[i]));
                CHECK(r.cocycle_count == r.coboundary_count * r.order());
                ++pairs;
            }
        }
    }
    CHECK(pairs > 200);
}

TEST_CASE("h1 on a two-component module") {
    // C2 swapping the factors of Z/3 x Z/3: H^1 = 0 (induced module).
    auto c2 = FiniteGroup::cyclic(2);
    SmallMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    auto m = FiniteModule::make(c2, {3, 3}, {SmallMatrix::Identity(2, 2), swap});
    auto r = h1(c2, m);
    CHECK(r.order() == 1);
    CHECK(r.enumeration_checked);
    // C2 acting by -1 on Z/2 x Z/4: H^1 = Z/2 x Z/2.
    SmallMatrix minus = -SmallMatrix::Identity(2, 2);
    auto r2 = h1(c2, FiniteModule::make(c2, {2, 4}, {SmallMatrix::Identity(2, 2), minus}));
    CHECK(r2.invariant_factors == std::vector<BigInt>{2, 2});
}

TEST_CASE("sah examples") {
    auto c2 = FiniteGroup::cyclic(2);
    auto neg = FiniteModule::cyclic(c2, 4, {1, 3});
    auto r = sah_verify(c2, neg, 1);
    CHECK(r.pass);
    CHECK(r.cocycles_checked == 4);
    CHECK(sah_verify(c2, neg, 0).pass);

    auto c4 = FiniteGroup::cyclic(4);
    auto m = FiniteModule::cyclic(c4, 8, powers_of(c4, 1, 3, 8));
    CHECK(sah_verify(c4, m, 2).pass);

    auto s3 = FiniteGroup::dihedral(3);
    CHECK_THROWS_AS(sah_verify(s3, FiniteModule::trivial(s3, {5}), 3), std::invalid_argument);
}

TEST_CASE("sah sweep") {
    auto sweep = sah_sweep(8, 16);
    CHECK(sweep.failures == 0);
    CHECK(sweep.failure_witnesses.empty());
    // Same triples regardless of scheduling.
    auto serial = sah_sweep(4, 8, false);
    auto parallel = sah_sweep(4, 8, true);
    CHECK(serial.triples == parallel.triples);
    CHECK(sweep.triples > 1000);
}

TEST_CASE("kummer delta examples") {
    auto five = kummer_delta_check(5, G({"2"}));
    CHECK(five.pass);
    CHECK(five.group_order == 5);
    CHECK(five.field_degree == 5);

    auto eight = kummer_delta_check(8, G({"2"}));
    CHECK(eight.pass);
    CHECK(eight.group_order == 4);
    CHECK(eight.field_degree == 4);

    auto one = kummer_delta_check(3, G({"1"}));
    CHECK(one.pass);
    CHECK(one.group_order == 1);
    CHECK(one.field_degree == 1);

    CHECK_THROWS_AS(kummer_delta_check(6, G({"2"})), std::invalid_argument);
}

TEST_CASE("kummer delta agrees with the engine") {
    struct Case { std::uint64_t n; std::vector<const char*> gamma; };
    const std::vector<Case> cases{{3, {"2"}}, {4, {"2"}}, {4, {"-4"}}, {2, {"-1"}}, {9, {"2"}},
                                  {3, {"2", "3"}}, {4, {"2", "3"}}, {8, {"-2"}}, {8, {"3"}}, {7, {"6"}}};
    for (const auto& cs : cases) {
        std::vector<BigRational> v;
        for (auto s : cs.gamma) v.push_back(parse_rational(s));
        auto gamma = MultSubgroup::from_rationals(v);
        auto rep = kummer_delta_check(cs.n, gamma);
        CAPTURE(cs.n);
        CAPTURE(cs.gamma[0]);
        CHECK(rep.pass);
        auto pp = as_prime_power(cs.n);
        auto level = KummerLevel::make(pp->first, static_cast<unsigned>(pp->second));
        CHECK(rep.field_degree == relation_lattice_unchecked(gamma, level).subgroup.index());
        if (independence_check(gamma).independent) CHECK(rep.field_degree == kummer_degree(gamma, level));
    }
}

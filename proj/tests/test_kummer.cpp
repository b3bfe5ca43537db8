#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "thumbtack/kummer.hpp"

using namespace thumbtack;

namespace {

MultSubgroup G(std::initializer_list<const char*> values) {
    std::vector<BigRational> v;
    for (const char* s : values) v.push_back(parse_rational(s));
    return MultSubgroup::from_rationals(v);
}

FactoredRational F(const char* s) { return factor_rational(parse_rational(s)); }

IntVector V(std::initializer_list<long> xs) {
    IntVector out(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long x : xs) out(i++) = x;
    return out;
}

std::vector<std::string> strings(const std::vector<BigInt>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

bool oracle(const BigRational& a, std::uint64_t n, std::uint64_t conductor) {
    return nth_root_in_cyclotomic(a, n, CyclotomicField::make(conductor)).has_value();
}

MultSubgroup random_independent(std::mt19937_64& rng) {
    static const std::vector<long> primes{2, 3, 5, 7};
    while (true) {
        std::size_t r = 1 + rng() % 2;
        std::vector<FactoredRational> gens;
        for (std::size_t j = 0; j < r; ++j) {
            FactoredRational a;
            a.sign = rng() % 2 ? -1 : 1;
            for (long p : primes) {
                long e = static_cast<long>(rng() % 7) - 3;
                if (e != 0 && rng() % 2) a.exponents.push_back({BigInt(p), e});
            }
            gens.push_back(a);
        }
        MultSubgroup g(gens);
        if (independence_check(g).independent) return g;
    }
}

std::set<std::vector<BigInt>> element_set(const ModSubgroup& S) {
    std::set<std::vector<BigInt>> out;
    for (const auto& v : S.elements()) out.insert(std::vector<BigInt>(v.begin(), v.end()));
    return out;
}

}  // namespace

TEST_CASE("power membership examples") {
    CHECK(cyclotomic_power_membership(F("2"), 1, KummerLevel::make(2, 3)));
    CHECK_FALSE(cyclotomic_power_membership(F("2"), 2, KummerLevel::make(2, 3)));
    CHECK(cyclotomic_power_membership(F("-4"), 2, KummerLevel::make(2, 2)));
    CHECK_FALSE(cyclotomic_power_membership(F("4"), 2, KummerLevel::make(2, 2)));
    CHECK(cyclotomic_power_membership(F("-8"), 1, KummerLevel::make(3, 1)));
    CHECK_FALSE(cyclotomic_power_membership(F("12"), 1, KummerLevel::make(3, 2)));
    EngineOptions forced;
    forced.force_oracle = true;
    CHECK(cyclotomic_power_membership(F("2"), 1, KummerLevel::make(2, 3), forced));
    CHECK_FALSE(cyclotomic_power_membership(F("2"), 2, KummerLevel::make(2, 3), forced));
    CHECK_THROWS_AS(KummerLevel::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(KummerLevel::make(3, 0), std::invalid_argument);
}

TEST_CASE("fast path agrees with the oracle") {
    const std::vector<long> values{1, -1, 2, -2, 3, -3, 4, -4, 6, -6, 8, -8};
    struct Lv { std::uint64_t l; unsigned m; };
    const std::vector<Lv> levels{{3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 1}, {2, 2}, {2, 3}, {2, 4}};
    int compared = 0;
    for (auto [l, m] : levels) {
        auto level = KummerLevel::make(l, m);
        std::uint64_t n = 1;
        for (unsigned j = 1; j <= m; ++j) {
            n *= l;
            for (long a : values) {
                bool fast = cyclotomic_power_membership(factor_rational(BigRational(a)), j, level);
                bool slow = oracle(BigRational(a), n, level.conductor_u64());
                CAPTURE(a);
                CAPTURE(l);
                CAPTURE(m);
                CAPTURE(j);
                CHECK(fast == slow);
                ++compared;
            }
        }
    }
    CHECK(compared == 12 * (1 + 2 + 1 + 1 + 1 + 2 + 3 + 4));
}

TEST_CASE("dyadic table") {
    // Q(i): -4 = (1+i)^4 is the only nontrivial 4th-power class.
    auto t = dyadic_power_table(2, 2);
    CHECK(t.order() == 2);
    CHECK(t.contains(V({2, 2})));
    // Q(zeta_8): 2^4 = sqrt2^8.
    auto t3 = dyadic_power_table(3, 3);
    CHECK(t3.contains(V({0, 4})));
    CHECK_FALSE(t3.contains(V({0, 2})));
    CHECK(dyadic_power_table(4, 1).is_full());
    CHECK(dyadic_power_table(1, 1).is_trivial());
}

TEST_CASE("relation lattice examples") {
    auto r = relation_lattice(G({"2", "3"}), KummerLevel::make(5, 1));
    CHECK(r.subgroup.is_trivial());
    auto r8 = relation_lattice(G({"2"}), KummerLevel::make(2, 3));
    CHECK(r8.subgroup.order() == 2);
    CHECK(r8.subgroup.contains(V({4})));
    CHECK(relation_lattice(G({"2"}), KummerLevel::make(2, 2)).subgroup.is_trivial());

    CHECK(kummer_degree(G({"2"}), KummerLevel::make(3, 1)) == 3);
    CHECK(kummer_degree(G({"2"}), KummerLevel::make(2, 3)) == 4);
    CHECK(kummer_degree(G({"2", "3"}), KummerLevel::make(5, 2)) == 625);

    CHECK_THROWS_AS(relation_lattice(G({"2", "4"}), KummerLevel::make(3, 1)), DependentGeneratorsError);
    try {
        relation_lattice(G({"-1"}), KummerLevel::make(3, 1));
        FAIL("expected dependence");
    } catch (const DependentGeneratorsError& e) {
        CHECK(e.witness() == V({1}));
    }
}

TEST_CASE("rho image examples") {
    auto a = rho_image(G({"2", "3"}), KummerLevel::make(5, 1));
    CHECK(a.image.is_full());
    CHECK(a.index == 1);
    auto b = rho_image(G({"2"}), KummerLevel::make(2, 3));
    CHECK(strings(b.image.divisors()) == std::vector<std::string>{"2"});
    CHECK(b.index == 2);
    auto c = rho_image(G({"2"}), KummerLevel::make(2, 1));
    CHECK(c.image.is_full());
    CHECK(c.index == 1);
}

TEST_CASE("relation lattice against enumeration") {
    struct Case { std::vector<const char*> gamma; std::uint64_t l; unsigned m; };
    const std::vector<Case> cases{
        {{"2"}, 2, 1}, {{"2"}, 2, 2}, {{"2"}, 2, 3}, {{"2"}, 2, 4}, {{"-4"}, 2, 2}, {{"-4"}, 2, 3},
        {{"-2"}, 2, 3}, {{"2", "3"}, 2, 2}, {{"-1/2", "3"}, 2, 2}, {{"2", "-3"}, 2, 3}, {{"6"}, 2, 3},
        {{"2", "3"}, 3, 1}, {{"8", "3"}, 3, 2}, {{"4", "-27"}, 3, 2}, {{"2", "3", "5"}, 3, 1}, {{"25", "-3"}, 5, 1}, {{"7"}, 7, 1},
    };
    for (const auto& cs : cases) {
        std::vector<BigRational> vals;
        for (auto s : cs.gamma) vals.push_back(parse_rational(s));
        auto gamma = MultSubgroup::from_rationals(vals);
        auto level = KummerLevel::make(cs.l, cs.m);
        const std::uint64_t q = level.conductor_u64();
        const auto r = static_cast<std::size_t>(gamma.rank());
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < r; ++i) total *= q;
        REQUIRE(total <= 512);
        std::set<std::vector<BigInt>> found;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<BigInt> e(r);
            BigRational value = 1;
            std::uint64_t c = code;
            for (std::size_t i = 0; i < r; ++i) {
                e[i] = c % q;
                value *= ipow(vals[i], static_cast<std::int64_t>(c % q));
                c /= q;
            }
            if (oracle(value, q, q)) found.insert(e);
        }
        auto R = relation_lattice(gamma, level).subgroup;
        CAPTURE(cs.gamma[0]);
        CAPTURE(cs.l);
        CAPTURE(cs.m);
        CHECK(element_set(R) == found);
        CHECK(kummer_degree(gamma, level) * found.size() == total);
    }
}

TEST_CASE("duality, tower and monotone degrees") {
    std::mt19937_64 rng(20261015);
    int cases = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto gamma = random_independent(rng);
        for (std::uint64_t l : {2, 3, 5}) {
            std::optional<LevelImage> prev;
            BigInt prev_degree;
            for (unsigned m = 1; m <= 4; ++m) {
                auto level = KummerLevel::make(l, m);
                auto R = relation_lattice(gamma, level);
                auto img = rho_image_from_relations(R);
                BigInt full = ipow(level.conductor(), static_cast<std::uint64_t>(gamma.rank()));
                CHECK(img.image.order() * R.subgroup.order() == full);
                CHECK(img.index * img.image.order() == full);
                BigInt degree = R.subgroup.index();
                CHECK(degree == kummer_degree(gamma, level));
                if (prev) {
                    auto reduced = img.image.reduce(prev->image.modulus());
                    for (const auto& v : reduced.elements()) CHECK(prev->image.contains(v));
                    // The base field grows with m, so the lower degree only divides l times the upper.
                    CHECK((degree * l) % prev_degree == 0);
                    if (l != 2) CHECK(degree % prev_degree == 0);
                    CHECK((prev_degree * ipow(BigInt(l), static_cast<std::uint64_t>(gamma.rank()))) % degree == 0);
                }
                prev = img;
                prev_degree = degree;
                ++cases;
            }
        }
    }
    CHECK(cases == 40 * 3 * 4);
}

TEST_CASE("horizontal certificate") {
    auto rep = horizontal_certificate(G({"2", "3"}), {3, 5, 7, 11, 13}, 2);
    CHECK(rep.division_index == 2);
    CHECK(rep.l0 == 2);
    REQUIRE(rep.primes.size() == 5);
    for (const auto& p : rep.primes) {
        CHECK(p.coprime);
        CHECK_FALSE(p.exceptional_from);
        for (const auto& lv : p.levels) CHECK(lv.full);
    }

    auto two = horizontal_certificate(G({"2"}), {2}, 3);
    REQUIRE(two.primes.size() == 1);
    CHECK_FALSE(two.primes[0].coprime);
    CHECK(two.primes[0].exceptional_from == 3u);
    REQUIRE(two.primes[0].witness);
    CHECK(*two.primes[0].witness == V({4}));

    auto four = horizontal_certificate(G({"4"}), {3}, 2);
    CHECK(four.division_index == 4);
    CHECK_FALSE(four.primes[0].exceptional_from);
}

TEST_CASE("horizontal theorem on random tuples") {
    std::mt19937_64 rng(7);
    EngineOptions serial;
    serial.parallel = false;
    for (int trial = 0; trial < 25; ++trial) {
        auto gamma = random_independent(rng);
        auto rep = horizontal_certificate(gamma, {2, 3, 5, 7, 11}, 3, trial % 2 ? serial : EngineOptions{});
        for (const auto& p : rep.primes)
            if (p.coprime) CHECK_FALSE(p.exceptional_from);
    }
}

TEST_CASE("vertical certificate") {
    auto c = vertical_certificate(G({"2"}), 2, 5);
    std::vector<std::string> idx;
    for (const auto& lv : c.levels) idx.push_back(to_string(lv.index));
    CHECK(idx == std::vector<std::string>{"1", "1", "2", "2", "2"});
    CHECK(c.stabilized);
    CHECK(c.tower_compatible);
    CHECK(strings(c.limit_divisors) == std::vector<std::string>{"2"});

    auto odd = vertical_certificate(G({"2"}), 3, 4);
    for (const auto& lv : odd.levels) CHECK(lv.index == 1);
    CHECK(odd.stabilized);
    CHECK(strings(odd.limit_divisors) == std::vector<std::string>{"1"});

    auto pair = vertical_certificate(G({"2", "3"}), 2, 4);
    CHECK(pair.stabilized);

    // 2^9 has no 9th-root relation below level 3: not saturated yet.
    auto late = vertical_certificate(G({"512"}), 3, 2);
    CHECK_FALSE(late.stabilized);
    CHECK(late.failure_witness);
    CHECK(vertical_certificate(G({"512"}), 3, 4).stabilized);
}

TEST_CASE("vertical theorem on random tuples") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        auto gamma = random_independent(rng);
        for (std::uint64_t l : {2, 3}) {
            auto c = vertical_certificate(gamma, l, 6);
            CAPTURE(gamma.to_strings()[0]);
            CHECK(c.stabilized);
        }
    }
}

TEST_CASE("descent") {
    CHECK(descent_exponent(2) == 2);
    CHECK(descent_exponent(3) == 3);
    CHECK(descent_exponent(5) == 5);

    auto w = sah_descent_check(F("-4"), KummerLevel::make(2, 2));
    REQUIRE(w);
    CHECK(w->kappa == 2);
    CHECK(w->c == 2);
    CHECK_FALSE(w->uncorrected_holds);
    CHECK_FALSE(sah_descent_check(F("2"), KummerLevel::make(2, 1)));
    auto s = sah_descent_check(F("16"), KummerLevel::make(2, 2));
    REQUIRE(s);
    CHECK(s->c == 4);
}

TEST_CASE("descent identity sweep") {
    int witnesses = 0;
    for (long a : {-64, -27, -16, -8, -4, -3, -2, 2, 3, 4, 8, 9, 16, 27, 81, 256}) {
        for (auto [l, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
            auto level = KummerLevel::make(l, m);
            auto w = sah_descent_check(factor_rational(BigRational(a)), level);
            bool hyp = oracle(BigRational(a), level.conductor_u64(), level.conductor_u64());
            CHECK(w.has_value() == hyp);
            if (!w) continue;
            ++witnesses;
            CHECK(ipow(w->c, static_cast<std::int64_t>(level.conductor_u64())) ==
                  ipow(BigRational(a), static_cast<std::int64_t>(w->kappa)));
        }
    }
    CHECK(witnesses > 10);
}

TEST_CASE("injectivity profile") {
    auto p = injectivity_profile(F("2"), 3, 4);
    CHECK(strings(p.degrees) == std::vector<std::string>{"3", "9", "27", "81"});
    CHECK(p.increasing_from == 1);
    auto q = injectivity_profile(F("2"), 2, 4);
    CHECK(strings(q.degrees) == std::vector<std::string>{"2", "4", "4", "8"});
    CHECK(q.increasing_from == 3);
    CHECK_THROWS_AS(injectivity_profile(F("1"), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(injectivity_profile(F("-1"), 3, 3), std::invalid_argument);
}

TEST_CASE("geometric image") {
    auto ff = [](std::initializer_list<const char*> xs) {
        std::vector<FunctionFieldElement> out;
        for (auto s : xs) out.push_back(parse_function_field(s));
        return out;
    };
    auto a = geometric_rho_image(ff({"t", "t+1"}), KummerLevel::make(2, 3));
    CHECK(a.image.image.is_full());
    CHECK(a.image.image.modulus() == 8);
    try {
        geometric_rho_image(ff({"t^2", "t"}), KummerLevel::make(2, 1));
        FAIL("expected dependence");
    } catch (const DependentGeneratorsError& e) {
        CHECK(e.witness() == V({1, -2}));
    }
    auto c = geometric_rho_image(ff({"2t"}), KummerLevel::make(5, 2));
    CHECK(c.image.image.is_full());
    CHECK(c.image.image.modulus() == 25);
    CHECK_THROWS_AS(geometric_rho_image(ff({"3"}), KummerLevel::make(2, 1)), DependentGeneratorsError);
    // A square label: open but not full at l = 2.
    auto d = geometric_rho_image(ff({"t^2", "t+1"}), KummerLevel::make(2, 2));
    CHECK(d.image.index == 2);
}

TEST_CASE("geometric theorem on random tuples") {
    std::mt19937_64 rng(3);
    const std::vector<std::string> labels{"t", "t+1", "t^2+1", "t-2", "t^2+t+1"};
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 3;
        std::vector<FunctionFieldElement> elems;
        for (std::size_t j = 0; j < r; ++j) {
            std::string s = std::to_string(1 + rng() % 5);
            for (const auto& lab : labels) {
                long e = static_cast<long>(rng() % 5) - 2;
                if (e != 0 && rng() % 2) s += "*(" + lab + ")^" + std::to_string(e);
            }
            elems.push_back(parse_function_field(s));
        }
        LabelMatrix lm;
        bool constant = std::any_of(elems.begin(), elems.end(), [](const auto& e) { return e.is_constant(); });
        if (constant) continue;
        lm = label_matrix(elems);
        if (integer_kernel<BigInt>(lm.exponents).cols() > 0) continue;
        auto sat = saturation<BigInt>(lm.exponents);
        for (std::uint64_t l : {2, 3}) {
            for (unsigned m = 1; m <= 3; ++m) {
                auto img = geometric_rho_image(elems, KummerLevel::make(l, m));
                // Index is bounded by the saturation index, full when saturated.
                CHECK(sat.index % img.image.index == 0);
                if (sat.index == 1) CHECK(img.image.image.is_full());
            }
        }
    }
}

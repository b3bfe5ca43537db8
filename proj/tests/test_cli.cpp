#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "thumbtack/cli.hpp"
#include "thumbtack/kummer.hpp"

using namespace thumbtack;
using nlohmann::json;

namespace {

struct Result {
    int code;
    json report;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    json report;
    if (!out.str().empty() && out.str()[0] == '{') report = json::parse(out.str());
    return {code, report, err.str()};
}

json payload(json report) {
    report.erase("timing_ms");
    return report;
}

}  // namespace

TEST_CASE("parse gamma") {
    auto g = parse_gamma("2,3");
    CHECK(g.rank() == 2);
    auto h = parse_gamma("-8/9");
    REQUIRE(h.rank() == 1);
    CHECK(h.generators()[0].value() == BigRational(-8, 9));
    CHECK(h.generators()[0].to_string() == "-2^3*3^-2");
    CHECK(parse_gamma("+2^3*3^-2").generators()[0].value() == BigRational(8, 9));
    CHECK(parse_gamma(" 12 , 5/7").generators()[1].value() == BigRational(5, 7));

    std::vector<std::string> warnings;
    auto t = parse_gamma("2,-1", &warnings);
    CHECK(t.rank() == 2);
    CHECK(warnings.size() == 1);

    auto position = [](const char* s) {
        try {
            parse_gamma(s);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    CHECK(position("2,0") == 2);
    CHECK(position("2,3,0/5") == 4);
    CHECK(position("2,x") == 2);
    CHECK(position("2,3/0") == 4);
    CHECK(position("2,,3") == 2);
    CHECK(position("2,3") == -1);
}

TEST_CASE("parse geometric gamma and primes") {
    auto e = parse_gamma_geometric("t,t+1");
    REQUIRE(e.size() == 2);
    CHECK(e[0].factors.size() == 1);
    CHECK(e[1].factors.size() == 1);
    CHECK(parse_gamma_geometric("(t^2+1)*(t-1),t").size() == 2);
    CHECK(parse_primes("2..13") == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13});
    CHECK(parse_primes("5,3") == std::vector<std::uint64_t>{5, 3});
    CHECK_THROWS_AS(parse_primes("4"), ParseError);
    CHECK_THROWS_AS(parse_primes("a..5"), ParseError);
}

TEST_CASE("command examples") {
    auto rho = call({"rho-image", "--gamma", "2", "--l", "2", "--m", "3", "--json-only"});
    CHECK(rho.code == 0);
    CHECK(rho.report["result"]["divisors"] == json::array({"2"}));
    CHECK(rho.report["result"]["index"] == "2");
    CHECK(rho.err.empty());

    auto ind = call({"independent", "--gamma", "2,4"});
    CHECK(ind.code == 0);
    CHECK(ind.report["result"]["verdict"] == "dependent");
    CHECK(ind.report["result"]["witness"] == json::array({"2", "-1"}));
    CHECK(!ind.err.empty());

    auto ver = call({"vertical", "--gamma", "2", "--l", "2", "--mmax", "5", "--json-only"});
    CHECK(ver.code == 0);
    CHECK(ver.report["result"]["stabilized"] == true);
    CHECK(ver.report["result"]["limit"] == json::array({"2"}));
}

TEST_CASE("reports agree with the engine") {
    for (const char* gamma : {"2", "2,3", "-4", "12,18", "-3/5"}) {
        for (std::uint64_t l : {2, 3, 5}) {
            for (unsigned m : {1u, 2u}) {
                auto r = call({"rho-image", "--gamma", gamma, "--l", std::to_string(l), "--m", std::to_string(m), "--json-only"});
                CAPTURE(gamma);
                CAPTURE(l);
                REQUIRE(r.code == 0);
                auto R = relation_lattice_unchecked(parse_gamma(gamma), KummerLevel::make(l, m));
                BigInt total = ipow(BigInt(ipow(BigInt(l), m)), static_cast<std::uint64_t>(parse_gamma(gamma).rank()));
                // index of the image = |R|
                CHECK(BigInt(r.report["result"]["index"].get<std::string>()) == R.subgroup.order());
                auto d = call({"kummer-degree", "--gamma", gamma, "--l", std::to_string(l), "--m", std::to_string(m), "--json-only"});
                CHECK(BigInt(d.report["result"]["degree"].get<std::string>()) * R.subgroup.order() == total);
            }
        }
    }
}

TEST_CASE("every number is a string") {
    std::function<bool(const json&)> strings_only = [&](const json& j) {
        if (j.is_number()) return false;
        if (j.is_array() || j.is_object())
            for (const auto& x : j)
                if (!strings_only(x)) return false;
        return true;
    };
    for (auto args : std::vector<std::vector<std::string>>{{"horizontal", "--gamma", "2,3", "--primes", "2..7"},
                                                            {"h1", "--group", "D4", "--modulus", "4"},
                                                            {"delta-check", "--n", "4", "--gamma", "2"},
                                                            {"geometric", "--gamma", "t,t+1", "--l", "2", "--m", "2"}}) {
        args.push_back("--json-only");
        auto r = call(args);
        CAPTURE(args[0]);
        CHECK(r.code == 0);
        CHECK(strings_only(r.report));
    }
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 1);
    CHECK(call({"nope"}).code == 1);
    CHECK(call({"rho-image", "--gamma", "2"}).code == 1);
    CHECK(call({"rho-image", "--gamma", "2", "--l", "6"}).code == 1);
    auto zero = call({"rho-image", "--gamma", "2,0", "--l", "3"});
    CHECK(zero.code == 1);
    CHECK(zero.report["position"] == "2");
    auto dep = call({"geometric", "--gamma", "t,t^2", "--l", "3"});
    CHECK(dep.code == 1);
    CHECK(dep.report.contains("witness"));
    CHECK(call({"h1", "--group", "C8", "--modulus", "200000"}).code == 2);
    CHECK(call({"delta-check", "--n", "6", "--gamma", "2"}).code == 1);
    std::ostringstream out, err;
    CHECK(run({"--help"}, out, err) == 0);
    CHECK(out.str().find("rho-image") != std::string::npos);
}

TEST_CASE("warnings on torsion generators") {
    auto r = call({"division-index", "--gamma", "-1,2", "--json-only"});
    CHECK(r.code == 0);
    REQUIRE(r.report.contains("warnings"));
    CHECK(r.report["warnings"].size() == 1);
    // Engine commands reject torsion but keep the warning.
    auto k = call({"kummer-degree", "--gamma", "-1,2", "--l", "3", "--json-only"});
    CHECK(k.code == 1);
    CHECK(k.report["warnings"].size() == 1);
}

TEST_CASE("round trip") {
    const std::vector<std::vector<std::string>> runs{
        {"rho-image", "--gamma", "-8/9,12", "--l", "2", "--m", "3"},
        {"division-index", "--gamma", "4,18,-27"},
        {"horizontal", "--gamma", "2", "--primes", "2..11"},
        {"sah-descent", "--gamma", "-4", "--l", "2", "--m", "2"},
        {"injectivity", "--gamma", "6", "--l", "3", "--mmax", "3"},
        {"delta-check", "--n", "5", "--gamma", "2,3"},
        {"factor", "--gamma", "360,-7/12"},
    };
    for (auto args : runs) {
        args.push_back("--json-only");
        auto first = call(args);
        CAPTURE(args[0]);
        REQUIRE(first.code == 0);
        std::string serialized;
        for (const auto& g : first.report["params"]["gamma"]) serialized += (serialized.empty() ? "" : ",") + g.get<std::string>();
        auto again = args;
        for (std::size_t i = 0; i + 1 < again.size(); ++i)
            if (again[i] == "--gamma") again[i + 1] = serialized;
        auto second = call(again);
        CHECK(second.code == 0);
        CHECK(payload(first.report) == payload(second.report));
    }
}

#include "thumbtack/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "thumbtack/serialize.hpp"

namespace thumbtack {

using Json = nlohmann::json;

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// One generator: [+-] factor (* factor)*, factor = n[/d][^e].
class GammaItem {
  public:
    GammaItem(std::string_view text, std::size_t offset) : s_(text), offset_(offset) {}

    BigRational parse() {
        skip();
        int sign = 1;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) sign = s_[pos_++] == '-' ? -1 : 1;
        BigRational value = factor();
        skip();
        while (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            value *= factor();
            skip();
        }
        if (pos_ != s_.size()) fail("unexpected character");
        return value * sign;
    }

  private:
    void skip() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError("gamma: " + what, offset_ + pos_); }

    BigInt digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
        if (start == pos_) fail("expected digits");
        return BigInt(std::string(s_.substr(start, pos_ - start)));
    }

    BigRational factor() {
        BigInt num = digits();
        BigInt den = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t at = pos_;
            den = digits();
            if (den == 0) throw ParseError("gamma: zero denominator", offset_ + at);
        }
        BigRational base = make_rational(num, den);
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip();
            int esign = 1;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) esign = s_[pos_++] == '-' ? -1 : 1;
            std::size_t at = pos_;
            BigInt e = digits();
            if (e > 1000000) throw ParseError("gamma: exponent too large", offset_ + at);
            if (base == 0 && esign < 0) throw ParseError("gamma: zero to a negative power", offset_ + at);
            base = ipow(base, to_int64(e) * esign);
        }
        return base;
    }

    std::string_view s_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

// Splits at commas outside parentheses, keeping offsets.
std::vector<std::pair<std::string_view, std::size_t>> split_top(std::string_view spec) {
    std::vector<std::pair<std::string_view, std::size_t>> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= spec.size(); ++i) {
        if (i < spec.size() && spec[i] == '(') ++depth;
        if (i < spec.size() && spec[i] == ')') --depth;
        if (i == spec.size() || (spec[i] == ',' && depth == 0)) {
            out.push_back({spec.substr(start, i - start), start});
            start = i + 1;
        }
    }
    return out;
}

struct Options {
    std::string gamma;
    std::string poly;
    std::string primes = "3..13";
    std::string group;
    std::string units;
    std::uint64_t l = 0;
    unsigned m = 1;
    unsigned mmax = 3;
    std::uint64_t n = 1;
    std::int64_t modulus = 2;
    int alpha = -1;
    bool geometric = false;
    bool oracle = false;
    bool json_only = false;
    Json* warnings = nullptr;
};

struct Outcome {
    Json params = Json::object();
    Json result = Json::object();
    Json verification = Json::array();
    std::string summary;
};

void verify(Outcome& o, const std::string& check, bool pass) { o.verification.push_back({{"check", check}, {"pass", pass}}); }

std::string join(const std::vector<BigInt>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + to_string(xs[i]);
    return out;
}

EngineOptions engine(const Options& o) {
    EngineOptions e;
    e.force_oracle = o.oracle;
    e.oracle = OracleConfig::from_environment();
    return e;
}

MultSubgroup gamma_of(const Options& o, Outcome& out) {
    if (o.gamma.empty()) throw std::invalid_argument("--gamma is required");
    if (o.geometric) throw std::invalid_argument("--geometric is not supported by this command");
    std::vector<std::string> warnings;
    auto g = parse_gamma(o.gamma, &warnings);
    for (auto& w : warnings) o.warnings->push_back(w);
    out.params["gamma"] = json::gamma(g);
    return g;
}

FactoredRational single_of(const Options& o, Outcome& out) {
    auto g = gamma_of(o, out);
    if (g.rank() != 1) throw std::invalid_argument("--gamma must be a single element for this command");
    return g.generators()[0];
}

KummerLevel level_of(const Options& o, Outcome& out) {
    auto level = KummerLevel::make(o.l, o.m);
    out.params["l"] = json::number(static_cast<std::int64_t>(o.l));
    out.params["m"] = json::number(static_cast<std::int64_t>(o.m));
    return level;
}

Json relation_witness(const std::optional<IntVector>& w) { return w ? json::vector(*w) : Json(nullptr); }

FiniteGroup group_of(const Options& o, Outcome& out) {
    if (o.group.empty()) throw std::invalid_argument("--group is required");
    std::optional<FiniteGroup> g;
    for (auto& ng : small_groups(8))
        if (ng.name == o.group) g = ng.group;
    if (!g && o.group.size() > 1 && (o.group[0] == 'C' || o.group[0] == 'D')) {
        int k = 0;
        try {
            k = std::stoi(o.group.substr(1));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown group " + o.group);
        }
        if (k < 1 || k > 64) throw std::invalid_argument("group parameter must be in 1..64");
        g = o.group[0] == 'C' ? FiniteGroup::cyclic(k) : FiniteGroup::dihedral(k);
    }
    if (!g) throw std::invalid_argument("unknown group " + o.group);
    out.params["group"] = o.group;
    return *g;
}

FiniteModule module_of(const FiniteGroup& g, const Options& o, Outcome& out) {
    if (o.modulus < 1) throw std::invalid_argument("--modulus must be positive");
    std::vector<std::int64_t> wanted;
    std::stringstream ss(o.units);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            wanted.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("--units: not an integer: " + item);
        }
    }
    const auto& gens = g.generators();
    if (wanted.empty()) wanted.assign(gens.size(), 1);
    if (wanted.size() != gens.size())
        throw std::invalid_argument("--units needs one unit per generator (" + std::to_string(gens.size()) + ")");
    for (auto& u : wanted) u = ((u % o.modulus) + o.modulus) % o.modulus;
    for (const auto& act : unit_actions(g, o.modulus)) {
        bool match = true;
        for (std::size_t k = 0; k < gens.size(); ++k) match = match && act[static_cast<std::size_t>(gens[k])] == wanted[k];
        if (!match) continue;
        out.params["modulus"] = json::number(o.modulus);
        Json u = Json::array();
        for (auto x : wanted) u.push_back(json::number(x));
        out.params["units"] = u;
        return FiniteModule::cyclic(g, o.modulus, act);
    }
    throw std::invalid_argument("--units do not define an action of the group on Z/" + std::to_string(o.modulus));
}

using Handler = std::function<Outcome(const Options&)>;

Outcome cmd_factor(const Options& o) {
    Outcome out;
    if (!o.poly.empty()) {
        auto f = parse_function_field(o.poly, 'x');
        auto [num, den] = f.fraction();
        if (den.degree() != 0) throw std::invalid_argument("--poly must be a polynomial");
        RationalPoly p = num * (1 / den.leading());
        out.params["poly"] = json::poly(p);
        out.params["n"] = json::number(static_cast<std::int64_t>(o.n));
        Json factors = Json::array();
        if (o.n <= 2) {
            auto fac = factor_over_rationals(p);
            for (const auto& x : fac.factors)
                factors.push_back({{"poly", json::poly(x.poly)}, {"multiplicity", json::number(static_cast<std::int64_t>(x.multiplicity))}});
            out.result = {{"field", json::number(static_cast<std::int64_t>(o.n))}, {"constant", json::number(fac.constant)}, {"factors", factors}};
            verify(out, "product of factors equals input", expand(fac) == p);
        } else {
            auto field = CyclotomicField::make(o.n);
            auto cp = CycPoly::from_rational(field, p);
            auto fac = factor_over_cyclotomic(cp, OracleConfig::from_environment());
            for (const auto& x : fac.factors)
                factors.push_back({{"poly", json::poly(x.poly)}, {"multiplicity", json::number(static_cast<std::int64_t>(x.multiplicity))}});
            out.result = {{"field", json::number(static_cast<std::int64_t>(o.n))}, {"constant", json::element(fac.constant)}, {"factors", factors}};
            verify(out, "product of factors equals input", expand(fac) == cp);
        }
        out.summary = "factor: " + std::to_string(factors.size()) + " irreducible factor(s) over Q(zeta_" + std::to_string(o.n) + ")";
        return out;
    }
    auto g = gamma_of(o, out);
    Json values = Json::array();
    bool ok = true;
    for (const auto& a : g.generators()) {
        values.push_back(json::number(a.value()));
        ok = ok && factor_rational(a.value()) == a;
    }
    out.result = {{"factored", json::gamma(g)}, {"values", values}};
    verify(out, "factorizations reconstruct their values", ok);
    out.summary = "factor: " + std::to_string(g.rank()) + " rational(s) factored";
    return out;
}

Outcome cmd_independent(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    auto v = independence_check(g);
    out.result = {{"verdict", v.independent ? "independent" : "dependent"}, {"independent", v.independent}, {"witness", relation_witness(v.witness)}};
    if (v.witness) {
        verify(out, "witness evaluates to a root of unity", g.evaluate(*v.witness).is_torsion());
    } else {
        verify(out, "exponent matrix has full column rank", smith_normal_form<BigInt>(g.exponent_matrix()).rank == g.rank());
    }
    out.summary = std::string("independent: ") + (v.independent ? "yes" : "no");
    return out;
}

Outcome cmd_division(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    auto rep = division_group(g);
    Json gens = Json::array();
    for (const auto& d : rep.division_generators) gens.push_back(json::factored(d));
    out.result = {{"index", json::number(rep.index)}, {"division_generators", gens}, {"powers", json::numbers(rep.powers)}};
    bool ok = true;
    for (std::size_t i = 0; i < rep.division_generators.size(); ++i)
        ok = ok && contains(g, rep.division_generators[i].pow(to_int64(rep.powers[i])));
    verify(out, "each division generator has its listed power in Gamma", ok);
    out.summary = "division-index: [Gamma':Gamma] = " + to_string(rep.index);
    return out;
}

Outcome cmd_kummer_degree(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    auto level = level_of(o, out);
    auto R = relation_lattice(g, level, engine(o));
    BigInt degree = R.subgroup.index();
    out.result = {{"degree", json::number(degree)}, {"relations", json::subgroup(R.subgroup)}};
    BigInt total = ipow(level.conductor(), static_cast<std::uint64_t>(g.rank()));
    verify(out, "degree * |R| = (l^m)^r", degree * R.subgroup.order() == total);
    out.summary = "kummer-degree: " + to_string(degree);
    return out;
}

Outcome cmd_rho_image(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    auto level = level_of(o, out);
    auto R = relation_lattice(g, level, engine(o));
    auto img = rho_image_from_relations(R);
    out.result = {{"image", json::subgroup(img.image)},
                  {"divisors", json::numbers(img.image.divisors())},
                  {"index", json::number(img.index)},
                  {"full", img.image.is_full()},
                  {"relations", json::subgroup(R.subgroup)}};
    BigInt total = ipow(level.conductor(), static_cast<std::uint64_t>(g.rank()));
    verify(out, "|image| * |R| = (l^m)^r", img.image.order() * R.subgroup.order() == total);
    verify(out, "image annihilates R", orthogonal_complement_mod(img.image) == R.subgroup);
    out.summary = "rho-image: index " + to_string(img.index) + ", divisors [" + join(img.image.divisors()) + "]";
    return out;
}

Outcome cmd_horizontal(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    auto primes = parse_primes(o.primes);
    out.params["primes"] = o.primes;
    out.params["mmax"] = json::number(static_cast<std::int64_t>(o.mmax));
    auto rep = horizontal_certificate(g, primes, o.mmax, engine(o));
    Json ps = Json::array();
    bool ok = true;
    std::string exceptional;
    for (const auto& p : rep.primes) {
        Json levels = Json::array();
        for (const auto& lv : p.levels)
            levels.push_back({{"m", json::number(static_cast<std::int64_t>(lv.m))}, {"full", lv.full}, {"divisors", json::numbers(lv.divisors)}});
        ps.push_back({{"l", json::number(static_cast<std::int64_t>(p.l))},
                      {"coprime", p.coprime},
                      {"levels", levels},
                      {"exceptional_from", p.exceptional_from ? json::number(static_cast<std::int64_t>(*p.exceptional_from)) : Json(nullptr)},
                      {"witness", relation_witness(p.witness)}});
        if (p.coprime && p.exceptional_from) ok = false;
        if (p.exceptional_from) exceptional += " " + std::to_string(p.l);
    }
    out.result = {{"division_index", json::number(rep.division_index)}, {"l0", json::number(static_cast<std::int64_t>(rep.l0))}, {"primes", ps}};
    verify(out, "image full for every l coprime to 2[Gamma':Gamma]", ok);
    out.summary = "horizontal: " + std::to_string(rep.primes.size()) + " prime(s), exceptional:" + (exceptional.empty() ? " none" : exceptional);
    return out;
}

Outcome cmd_vertical(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    KummerLevel::make(o.l, 1);
    out.params["l"] = json::number(static_cast<std::int64_t>(o.l));
    out.params["mmax"] = json::number(static_cast<std::int64_t>(o.mmax));
    auto c = vertical_certificate(g, o.l, o.mmax, engine(o));
    Json levels = Json::array();
    for (const auto& lv : c.levels)
        levels.push_back({{"m", json::number(static_cast<std::int64_t>(lv.m))}, {"divisors", json::numbers(lv.divisors)}, {"index", json::number(lv.index)}});
    out.result = {{"l", json::number(static_cast<std::int64_t>(c.l))},
                  {"levels", levels},
                  {"tower_compatible", c.tower_compatible},
                  {"saturated", c.saturated},
                  {"stabilized", c.stabilized},
                  {"limit", c.stabilized ? json::numbers(c.limit_divisors) : Json(nullptr)},
                  {"failure_witness", relation_witness(c.failure_witness)}};
    verify(out, "each level's image contains the reduction of the next", c.tower_compatible);
    out.summary = std::string("vertical: ") + (c.stabilized ? "stabilized, limit [" + join(c.limit_divisors) + "]" : "inconclusive within mmax");
    return out;
}

Outcome cmd_sah_descent(const Options& o) {
    Outcome out;
    auto a = single_of(o, out);
    auto level = level_of(o, out);
    auto w = sah_descent_check(a, level, engine(o));
    if (!w) {
        out.result = {{"hypothesis_holds", false}};
        verify(out, "X^{l^m} - a has no root in Q(zeta_{l^m})", true);
        out.summary = "sah-descent: hypothesis fails";
        return out;
    }
    out.result = {{"hypothesis_holds", true},
                  {"kappa", json::number(static_cast<std::int64_t>(w->kappa))},
                  {"c", json::number(w->c)},
                  {"root", w->root},
                  {"uncorrected_holds", w->uncorrected_holds}};
    auto n = static_cast<std::int64_t>(level.conductor_u64());
    verify(out, "c^{l^m} = a^kappa", ipow(w->c, n) == ipow(a.value(), static_cast<std::int64_t>(w->kappa)));
    out.summary = "sah-descent: kappa " + std::to_string(w->kappa) + ", c = " + to_string(w->c);
    return out;
}

Outcome cmd_injectivity(const Options& o) {
    Outcome out;
    auto x = single_of(o, out);
    KummerLevel::make(o.l, 1);
    out.params["l"] = json::number(static_cast<std::int64_t>(o.l));
    out.params["mmax"] = json::number(static_cast<std::int64_t>(o.mmax));
    auto p = injectivity_profile(x, o.l, o.mmax, engine(o));
    out.result = {{"degrees", json::numbers(p.degrees)}, {"increasing_from", json::number(static_cast<std::int64_t>(p.increasing_from))}};
    bool ok = true;
    for (std::size_t i = p.increasing_from; i < p.degrees.size(); ++i) ok = ok && p.degrees[i - 1] < p.degrees[i];
    verify(out, "degrees increase strictly from increasing_from", ok);
    out.summary = "injectivity: degrees [" + join(p.degrees) + "]";
    return out;
}

Outcome cmd_geometric(const Options& o) {
    Outcome out;
    if (o.gamma.empty()) throw std::invalid_argument("--gamma is required");
    auto elems = parse_gamma_geometric(o.gamma);
    Json es = Json::array();
    for (const auto& e : elems) es.push_back(json::function_field(e));
    out.params["gamma"] = es;
    auto level = level_of(o, out);
    auto gi = geometric_rho_image(elems, level);
    Json labels = Json::array();
    for (const auto& p : gi.labels.labels) labels.push_back(label_string(p));
    out.result = {{"labels", labels},
                  {"exponents", json::matrix(gi.labels.exponents)},
                  {"image", json::subgroup(gi.image.image)},
                  {"divisors", json::numbers(gi.image.image.divisors())},
                  {"index", json::number(gi.image.index)},
                  {"full", gi.image.image.is_full()}};
    BigInt total = ipow(level.conductor(), static_cast<std::uint64_t>(elems.size()));
    verify(out, "|image| * |R| = (l^m)^r", gi.image.image.order() * gi.relations.subgroup.order() == total);
    out.summary = "geometric: index " + to_string(gi.image.index);
    return out;
}

Outcome cmd_h1(const Options& o) {
    Outcome out;
    auto g = group_of(o, out);
    auto m = module_of(g, o, out);
    auto r = h1(g, m);
    Json reps = Json::array();
    for (const auto& f : r.representatives) reps.push_back(json::cochain(f));
    out.result = {{"group", json::group(g)},
                  {"module", json::module(m)},
                  {"cocycles", json::number(r.cocycle_count)},
                  {"coboundaries", json::number(r.coboundary_count)},
                  {"invariant_factors", json::numbers(r.invariant_factors)},
                  {"representatives", reps},
                  {"enumeration_checked", r.enumeration_checked}};
    verify(out, "cocycles = coboundaries * |H1|", r.cocycle_count == r.coboundary_count * r.order());
    bool all = true;
    for (const auto& f : r.representatives) all = all && is_cocycle(g, m, f);
    verify(out, "representatives are cocycles", all);
    out.summary = "h1: |H1| = " + to_string(r.order());
    return out;
}

Outcome cmd_sah_verify(const Options& o) {
    Outcome out;
    auto g = group_of(o, out);
    auto m = module_of(g, o, out);
    std::vector<int> alphas;
    if (o.alpha >= 0) {
        alphas.push_back(o.alpha);
        out.params["alpha"] = json::number(static_cast<std::int64_t>(o.alpha));
    } else {
        for (int x = 0; x < g.order(); ++x)
            if (g.is_central(x)) alphas.push_back(x);
    }
    Json rows = Json::array();
    bool ok = true;
    for (int a : alphas) {
        auto r = sah_verify(g, m, a);
        rows.push_back({{"alpha", json::number(static_cast<std::int64_t>(a))},
                        {"pass", r.pass},
                        {"cocycles_checked", json::number(static_cast<std::int64_t>(r.cocycles_checked))},
                        {"witness_cocycle", r.witness_cocycle ? json::cochain(*r.witness_cocycle) : Json(nullptr)},
                        {"witness_element", r.witness_element ? json::number(static_cast<std::int64_t>(*r.witness_element)) : Json(nullptr)}});
        ok = ok && r.pass;
    }
    out.result = {{"group", json::group(g)}, {"module", json::module(m)}, {"alphas", rows}};
    verify(out, "(alpha-1) f(g) = (g-1) f(alpha) for every cocycle", ok);
    out.summary = std::string("sah-verify: ") + (ok ? "pass" : "FAIL") + " for " + std::to_string(alphas.size()) + " central element(s)";
    return out;
}

Outcome cmd_delta(const Options& o) {
    Outcome out;
    auto g = gamma_of(o, out);
    out.params["n"] = json::number(static_cast<std::int64_t>(o.n));
    auto r = kummer_delta_check(o.n, g, engine(o));
    out.result = {{"conductor", json::number(static_cast<std::int64_t>(r.conductor))},
                  {"group_order", json::number(r.group_order)},
                  {"quotient_order", json::number(r.quotient_order)},
                  {"hom_count", json::number(r.hom_count)},
                  {"field_degree", json::number(r.field_degree)},
                  {"multiplier", json::number(static_cast<std::int64_t>(r.multiplier))},
                  {"pass", r.pass}};
    verify(out, "cocycles are homomorphisms into mu_N", r.cocycles_are_homomorphisms);
    verify(out, "pairing is injective on Gamma/(Gamma cap L^{xN})", r.pairing_injective);
    verify(out, "|G| = |Hom(G, mu_N)| = |Gamma/(Gamma cap L^{xN})| = field degree", r.pass);
    out.summary = "delta-check: " + std::string(r.pass ? "pass" : "FAIL") + ", order " + to_string(r.group_order);
    return out;
}

Json error_report(const std::string& command, const std::string& message) {
    return {{"command", command}, {"error", message}};
}

}  // namespace

MultSubgroup parse_gamma(std::string_view spec, std::vector<std::string>* warnings) {
    std::vector<BigRational> values;
    for (auto [item, offset] : split_top(spec)) {
        GammaItem parser(item, offset);
        BigRational v = parser.parse();
        if (v == 0) throw ParseError("gamma: zero is not in Q^x", offset);
        if ((v == 1 || v == -1) && warnings)
            warnings->push_back("generator " + to_string(v) + " at position " + std::to_string(offset) + " is torsion");
        values.push_back(v);
    }
    return MultSubgroup::from_rationals(values);
}

std::vector<FunctionFieldElement> parse_gamma_geometric(std::string_view spec) {
    std::vector<FunctionFieldElement> out;
    for (auto [item, offset] : split_top(spec)) {
        try {
            out.push_back(parse_function_field(item));
        } catch (const ParseError& e) {
            throw ParseError("gamma: bad function-field element", offset + e.position());
        }
    }
    return out;
}

std::vector<std::uint64_t> parse_primes(std::string_view spec) {
    auto number = [&](std::string_view s, std::size_t offset) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), is_digit) || s.size() > 12)
            throw ParseError("primes: expected a number", offset);
        return std::stoull(std::string(s));
    };
    std::vector<std::uint64_t> out;
    auto dots = spec.find("..");
    if (dots != std::string_view::npos) {
        auto lo = number(spec.substr(0, dots), 0);
        auto hi = number(spec.substr(dots + 2), dots + 2);
        if (hi > 100000) throw ParseError("primes: range too large", dots + 2);
        out = primes_in_range(lo, hi);
    } else {
        for (auto [item, offset] : split_top(spec)) {
            auto p = number(item, offset);
            if (!is_prime(p)) throw ParseError("primes: not a prime", offset);
            out.push_back(p);
        }
    }
    if (out.empty()) throw std::invalid_argument("primes: no prime in range");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"thumbtack: finite-level Kummer theory certificates over Q"};
    app.require_subcommand(1, 1);
    Options o;

    const std::map<std::string, std::pair<std::string, Handler>> commands{
        {"factor", {"factor rationals (--gamma) or a polynomial over Q(zeta_n) (--poly, --n)", cmd_factor}},
        {"independent", {"multiplicative independence with a relation witness", cmd_independent}},
        {"division-index", {"division group and [Gamma':Gamma]", cmd_division}},
        {"kummer-degree", {"[Q(zeta_{l^m}, Gamma^{1/l^m}) : Q(zeta_{l^m})]", cmd_kummer_degree}},
        {"rho-image", {"image of rho at level l^m", cmd_rho_image}},
        {"horizontal", {"surjectivity for primes in a range", cmd_horizontal}},
        {"vertical", {"openness certificate at one prime", cmd_vertical}},
        {"sah-descent", {"descent exponent witness for a single a", cmd_sah_descent}},
        {"injectivity", {"Kummer degree profile of a single x", cmd_injectivity}},
        {"geometric", {"image of rho for elements of Q(t)", cmd_geometric}},
        {"h1", {"H^1 of a small group with coefficients in Z/d", cmd_h1}},
        {"sah-verify", {"Sah's lemma on every cocycle", cmd_sah_verify}},
        {"delta-check", {"Kummer pairing against a field-degree computation", cmd_delta}},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) {
        auto* sub = app.add_subcommand(name, entry.first);
        subs[name] = sub;
        sub->add_flag("--oracle", o.oracle, "decide power membership with the factorization oracle");
        sub->add_flag("--json-only", o.json_only, "no summary on standard error");
        if (name == "h1" || name == "sah-verify") {
            sub->add_option("--group", o.group, "C1..C8, C2xC2, C4xC2, C2xC2xC2, S3, D4, Q8, Cn or Dn")->required();
            sub->add_option("--modulus", o.modulus, "module Z/d");
            sub->add_option("--units", o.units, "unit by which each generator acts, comma-separated");
            if (name == "sah-verify") sub->add_option("--alpha", o.alpha, "central element index (default: all)");
            continue;
        }
        sub->add_option("--gamma", o.gamma, "generators, comma-separated");
        if (name == "factor") {
            sub->add_option("--poly", o.poly, "polynomial in x");
            sub->add_option("--n", o.n, "conductor of the coefficient field");
        }
        if (name == "kummer-degree" || name == "rho-image" || name == "sah-descent" || name == "geometric") {
            sub->add_option("--l", o.l, "prime")->required();
            sub->add_option("--m", o.m, "level exponent");
        }
        if (name == "vertical" || name == "injectivity") {
            sub->add_option("--l", o.l, "prime")->required();
            sub->add_option("--mmax", o.mmax, "highest level");
        }
        if (name == "horizontal") {
            sub->add_option("--primes", o.primes, "a..b or a comma list");
            sub->add_option("--mmax", o.mmax, "highest level");
        }
        if (name == "delta-check") sub->add_option("--n", o.n, "prime-power conductor N")->required();
        sub->add_flag("--geometric", o.geometric, "parse --gamma as elements of Q(t)");
    }

    std::string command;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) command = name;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (!args.empty()) command = args[0];
        err << "usage error: " << e.what() << "\n";
        out << error_report(command, e.what()).dump(2) << "\n";
        return 1;
    }

    auto start = std::chrono::steady_clock::now();
    int code = 0;
    Json report;
    Json warnings = Json::array();
    o.warnings = &warnings;
    try {
        if (o.mmax < 1 || o.mmax > 64) throw std::invalid_argument("--mmax must be in 1..64");
        if (o.m < 1 || o.m > 64) throw std::invalid_argument("--m must be in 1..64");
        bool geometric = o.geometric && (command == "rho-image" || command == "kummer-degree");
        Outcome res = geometric ? cmd_geometric(o) : commands.at(command).second(o);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report = {{"command", command}, {"params", res.params}, {"result", res.result}, {"verification", res.verification},
                  {"timing_ms", json::number(static_cast<std::int64_t>(ms))}};

        for (const auto& v : res.verification)
            if (!v["pass"].get<bool>()) code = 3;
        if (!o.json_only) {
            err << res.summary << (code == 3 ? " [verification FAILED]" : "") << "\n";
        }
    } catch (const ParseError& e) {
        report = error_report(command, e.what());
        report["position"] = json::number(static_cast<std::int64_t>(e.position()));
        code = 1;
    } catch (const DependentGeneratorsError& e) {
        report = error_report(command, e.what());
        report["witness"] = json::vector(e.witness());
        code = 1;
    } catch (const std::invalid_argument& e) {
        report = error_report(command, e.what());
        code = 1;
    } catch (const SizeLimitError& e) {
        report = error_report(command, e.what());
        code = 2;
    } catch (const VerificationError& e) {
        report = error_report(command, e.what());
        report["witness"] = e.witness();
        code = 3;
    }
    if (!warnings.empty()) report["warnings"] = warnings;
    if (!o.json_only)
        for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << "\n";
    if (report.contains("error") && !o.json_only) err << command << ": " << report["error"].get<std::string>() << "\n";
    out << report.dump(2) << "\n";
    return code;
}

}  // namespace thumbtack

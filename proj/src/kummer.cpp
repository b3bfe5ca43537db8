#include "thumbtack/kummer.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <sstream>

namespace thumbtack {

namespace {

std::string vector_string(const IntVector& v) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::uint64_t checked_power(std::uint64_t l, unsigned j) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < j; ++i) {
        if (out > UINT64_MAX / l) throw std::invalid_argument("kummer level: l^m does not fit in 64 bits");
        out *= l;
    }
    return out;
}

bool oracle_membership(const FactoredRational& a, std::uint64_t n, const KummerLevel& level,
                       const OracleConfig& config) {
    auto field = CyclotomicField::make(level.conductor_u64());
    return nth_root_in_cyclotomic(a.value(), n, field, config).has_value();
}

bool oracle_pm2(int s, const BigInt& t, unsigned m, unsigned j, const OracleConfig& config) {
    FactoredRational a;
    a.sign = s ? -1 : 1;
    if (t != 0) a.exponents.push_back({BigInt(2), to_int64(t)});
    return oracle_membership(a, checked_power(2, j), KummerLevel{2, m}, config);
}

std::mutex table_mutex;
std::map<std::pair<unsigned, unsigned>, ModSubgroup> table_cache;

ModSubgroup compute_dyadic_table(unsigned m, unsigned j, const OracleConfig& config) {
    const BigInt q = ipow(BigInt(2), j);
    const BigInt half = q / 2;
    if (j == 1 && m >= 3) return ModSubgroup::full(q, 2);
    // H meets 0 x Z/2^j in <2^a>; the sign part then sits over 0 or 2^{a-1}.
    unsigned a = j;
    while (a > 0 && oracle_pm2(0, ipow(BigInt(2), a - 1), m, j, config)) --a;
    std::vector<std::pair<BigInt, BigInt>> gens{{0, ipow(BigInt(2), a) % q}};
    if (oracle_pm2(1, 0, m, j, config))
        gens.push_back({half, 0});
    else if (a >= 1 && oracle_pm2(1, ipow(BigInt(2), a - 1), m, j, config))
        gens.push_back({half, ipow(BigInt(2), a - 1)});
    IntMatrix G(static_cast<Eigen::Index>(gens.size()), 2);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        G(static_cast<Eigen::Index>(i), 0) = gens[i].first;
        G(static_cast<Eigen::Index>(i), 1) = gens[i].second;
    }
    return ModSubgroup::from_generators(G, q, 2);
}

}  // namespace

KummerLevel KummerLevel::make(std::uint64_t l, unsigned m) {
    if (!is_prime(l)) throw std::invalid_argument("kummer level: l must be prime");
    if (m < 1) throw std::invalid_argument("kummer level: m must be at least 1");
    checked_power(l, m);
    return KummerLevel{l, m};
}

std::uint64_t KummerLevel::conductor_u64() const { return checked_power(l, m); }

ModSubgroup dyadic_power_table(unsigned m, unsigned j, const OracleConfig& config) {
    if (m < 1 || j < 1) throw std::invalid_argument("dyadic table: m and j must be positive");
    {
        std::lock_guard lock(table_mutex);
        auto it = table_cache.find({m, j});
        if (it != table_cache.end()) return it->second;
    }
    auto table = compute_dyadic_table(m, j, config);
    std::lock_guard lock(table_mutex);
    return table_cache.emplace(std::make_pair(m, j), std::move(table)).first->second;
}

bool cyclotomic_power_membership(const FactoredRational& a, unsigned j, const KummerLevel& level,
                                 const EngineOptions& options) {
    if (j == 0) return true;
    const std::uint64_t n = checked_power(level.l, j);
    if (options.force_oracle) return oracle_membership(a, n, level, options.oracle);
    const BigInt bn(n);
    for (const auto& [p, e] : a.exponents) {
        if (level.l == 2 && p == 2) continue;
        if (BigInt(e) % bn != 0) return false;
    }
    if (level.l != 2) return true;
    auto table = dyadic_power_table(level.m, j, options.oracle);
    IntVector v(2);
    v << (a.sign < 0 ? bn / 2 : BigInt(0)), mod_floor(BigInt(a.exponent_of(BigInt(2))), bn);
    return table.contains(v);
}

RelationLattice relation_lattice_unchecked(const MultSubgroup& gamma, const KummerLevel& level,
                                           const EngineOptions& options) {
    const BigInt q = level.conductor();
    const IntMatrix& E = gamma.exponent_matrix();
    const Eigen::Index r = gamma.rank();
    IntMatrix A;
    if (level.l != 2) {
        A = E;
    } else {
        const Eigen::Index two = gamma.prime_row(BigInt(2));
        const Eigen::Index odd = E.rows() - (two >= 0 ? 1 : 0);
        // (sign, 2-exponent) pairs must land in the table: test against its annihilator.
        IntMatrix M = IntMatrix::Zero(2, r);
        M.row(0) = gamma.torsion_row().transpose() * (q / 2);
        if (two >= 0) M.row(1) = E.row(two);
        auto C = orthogonal_complement_mod(dyadic_power_table(level.m, level.m, options.oracle)).lattice();
        A.resize(odd + C.rows(), r);
        Eigen::Index row = 0;
        for (Eigen::Index i = 0; i < E.rows(); ++i)
            if (i != two) A.row(row++) = E.row(i);
        A.bottomRows(C.rows()) = C * M;
    }
    auto R = kernel_mod(A, q);
    for (Eigen::Index i = 0; i < R.lattice().rows(); ++i) {
        IntVector v = R.lattice().row(i).transpose();
        bool zero = std::all_of(v.begin(), v.end(), [&](const BigInt& x) { return x % q == 0; });
        if (zero) continue;
        if (!cyclotomic_power_membership(gamma.evaluate(v), level.m, level, options))
            throw VerificationError("relation lattice: generator is not an l^m-th power", vector_string(v));
    }
    return RelationLattice{level, std::move(R)};
}

RelationLattice relation_lattice(const MultSubgroup& gamma, const KummerLevel& level, const EngineOptions& options) {
    auto verdict = independence_check(gamma);
    if (!verdict.independent) throw DependentGeneratorsError("generators are dependent", *verdict.witness);
    return relation_lattice_unchecked(gamma, level, options);
}

BigInt kummer_degree(const MultSubgroup& gamma, const KummerLevel& level, const EngineOptions& options) {
    return relation_lattice(gamma, level, options).subgroup.index();
}

LevelImage rho_image_from_relations(const RelationLattice& relations) {
    auto image = orthogonal_complement_mod(relations.subgroup);
    if (image.order() != relations.subgroup.index())
        throw VerificationError("rho image: |image| differs from the Kummer degree", image.to_string());
    BigInt index = image.index();
    return LevelImage{relations.level, std::move(image), std::move(index)};
}

LevelImage rho_image(const MultSubgroup& gamma, const KummerLevel& level, const EngineOptions& options) {
    return rho_image_from_relations(relation_lattice(gamma, level, options));
}

HorizontalReport horizontal_certificate(const MultSubgroup& gamma, const std::vector<std::uint64_t>& primes,
                                        unsigned m_max, const EngineOptions& options) {
    auto verdict = independence_check(gamma);
    if (!verdict.independent) throw DependentGeneratorsError("generators are dependent", *verdict.witness);
    if (m_max < 1) throw std::invalid_argument("horizontal certificate: m_max must be at least 1");
    HorizontalReport report;
    report.division_index = division_group(gamma).index;

    auto one_prime = [&](std::uint64_t l) {
        HorizontalPrime out;
        out.l = l;
        out.coprime = gcd(BigInt(l), 2 * report.division_index) == 1;
        for (unsigned m = 1; m <= m_max; ++m) {
            auto relations = relation_lattice_unchecked(gamma, KummerLevel::make(l, m), options);
            auto image = rho_image_from_relations(relations);
            out.levels.push_back({m, image.image.is_full(), image.image.divisors()});
            if (!image.image.is_full() && !out.exceptional_from) {
                out.exceptional_from = m;
                out.witness = IntVector(relations.subgroup.generators().row(0).transpose());
            }
        }
        if (out.coprime && out.exceptional_from)
            throw VerificationError("horizontal certificate: coprime prime with non-full image",
                                    "l=" + std::to_string(l) + " e=" + vector_string(*out.witness));
        return out;
    };

    std::vector<std::uint64_t> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto l : sorted) KummerLevel::make(l, 1);
    if (options.parallel && sorted.size() > 1) {
        std::vector<std::future<HorizontalPrime>> jobs;
        for (auto l : sorted) jobs.push_back(std::async(std::launch::async, one_prime, l));
        for (auto& job : jobs) report.primes.push_back(job.get());
    } else {
        for (auto l : sorted) report.primes.push_back(one_prime(l));
    }
    return report;
}

OpennessCertificate vertical_certificate(const MultSubgroup& gamma, std::uint64_t l, unsigned m_max,
                                         const EngineOptions& options) {
    auto verdict = independence_check(gamma);
    if (!verdict.independent) throw DependentGeneratorsError("generators are dependent", *verdict.witness);
    if (m_max < 1) throw std::invalid_argument("vertical certificate: m_max must be at least 1");
    OpennessCertificate cert;
    cert.l = l;
    std::optional<LevelImage> previous;
    std::optional<RelationLattice> last_relations;
    for (unsigned m = 1; m <= m_max; ++m) {
        auto relations = relation_lattice_unchecked(gamma, KummerLevel::make(l, m), options);
        auto image = rho_image_from_relations(relations);
        // Restriction from level m+1 lands inside level m; the base field grows
        // with m, so equality fails exactly where entanglement enters.
        if (previous) {
            auto reduced = image.image.reduce(previous->image.modulus());
            for (Eigen::Index i = 0; i < reduced.lattice().rows(); ++i)
                if (!previous->image.contains(IntVector(reduced.lattice().row(i).transpose()))) cert.tower_compatible = false;
        }
        cert.levels.push_back({m, image.image.divisors(), image.index});
        previous = std::move(image);
        last_relations = std::move(relations);
    }
    const BigInt q = previous->image.modulus();
    cert.limit_divisors = previous->image.divisors();
    cert.saturated = std::all_of(cert.limit_divisors.begin(), cert.limit_divisors.end(),
                                 [&](const BigInt& d) { return d < q; });
    // Divisors are powers of l below l^m, so equal tuples mean equal exponents.
    bool repeated = m_max >= 2 && cert.levels[m_max - 1].divisors == cert.levels[m_max - 2].divisors;
    cert.stabilized = repeated && cert.saturated && cert.tower_compatible;
    if (!cert.saturated && !last_relations->subgroup.is_trivial())
        cert.failure_witness = IntVector(last_relations->subgroup.generators().row(0).transpose());
    return cert;
}

std::uint64_t descent_exponent(std::uint64_t l) {
    if (!is_prime(l)) throw std::invalid_argument("descent exponent: l must be prime");
    return l;
}

std::optional<DescentWitness> sah_descent_check(const FactoredRational& a, const KummerLevel& level,
                                                const EngineOptions& options) {
    const std::uint64_t n = level.conductor_u64();
    auto field = CyclotomicField::make(n);
    auto root = nth_root_in_cyclotomic(a.value(), n, field, options.oracle);
    if (!root) return std::nullopt;
    DescentWitness out;
    out.a = a;
    out.level = level;
    out.kappa = descent_exponent(level.l);
    out.root = root->to_string();
    auto c = exact_rational_root(ipow(a.value(), static_cast<std::int64_t>(out.kappa)), n);
    if (!c) throw VerificationError("descent: a^kappa is not an l^m-th power in Q", a.to_string());
    out.c = *c;
    out.uncorrected_holds =
        exact_rational_root(ipow(a.value(), static_cast<std::int64_t>(out.kappa + 1)), n).has_value();
    return out;
}

InjectivityProfile injectivity_profile(const FactoredRational& x, std::uint64_t l, unsigned m_max,
                                       const EngineOptions& options) {
    if (x.is_torsion()) throw std::invalid_argument("injectivity profile: x must be non-torsion");
    if (m_max < 1) throw std::invalid_argument("injectivity profile: m_max must be at least 1");
    MultSubgroup gamma({x});
    InjectivityProfile out;
    for (unsigned m = 1; m <= m_max; ++m) out.degrees.push_back(kummer_degree(gamma, KummerLevel::make(l, m), options));
    out.increasing_from = m_max;
    while (out.increasing_from > 1 && out.degrees[out.increasing_from - 2] < out.degrees[out.increasing_from - 1])
        --out.increasing_from;
    return out;
}

GeometricImage geometric_rho_image(const std::vector<FunctionFieldElement>& elements, const KummerLevel& level) {
    const Eigen::Index r = static_cast<Eigen::Index>(elements.size());
    if (r == 0) throw std::invalid_argument("geometric image: empty tuple");
    for (Eigen::Index i = 0; i < r; ++i) {
        if (elements[static_cast<std::size_t>(i)].is_constant()) {
            IntVector w = IntVector::Zero(r);
            w[i] = 1;
            throw DependentGeneratorsError("constant element is divisible over an algebraically closed field", w);
        }
    }
    auto labels = label_matrix(elements);
    IntMatrix K = integer_kernel<BigInt>(labels.exponents);
    if (K.cols() > 0) throw DependentGeneratorsError("elements are dependent modulo constants", IntVector(K.col(0)));
    RelationLattice relations{level, kernel_mod(labels.exponents, level.conductor())};
    auto image = rho_image_from_relations(relations);
    return GeometricImage{std::move(image), std::move(labels), std::move(relations)};
}

}  // namespace thumbtack

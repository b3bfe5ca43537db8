#include "thumbtack/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "thumbtack/factorization.hpp"

namespace thumbtack {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t d) {
    std::int64_t r = a % d;
    return r < 0 ? r + d : r;
}

std::string cochain_string(const Cochain& f) {
    std::ostringstream os;
    os << "[";
    for (std::size_t g = 0; g < f.values.size(); ++g) {
        os << (g ? "," : "") << "(";
        for (std::size_t i = 0; i < f.values[g].size(); ++i) os << (i ? "," : "") << f.values[g][i];
        os << ")";
    }
    os << "]";
    return os.str();
}

// Closure of the subgroup generated by gens.
std::vector<bool> closure(const std::vector<std::vector<int>>& cayley, int identity, const std::vector<int>& gens) {
    std::vector<bool> in(cayley.size(), false);
    std::vector<int> stack{identity};
    in[static_cast<std::size_t>(identity)] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int s : gens) {
            int y = cayley[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)];
            if (!in[static_cast<std::size_t>(y)]) {
                in[static_cast<std::size_t>(y)] = true;
                stack.push_back(y);
            }
        }
    }
    return in;
}

// Walks the Cayley graph from the identity along generators, assigning
// value(x s) = step(value(x), x, k) for generator k. Returns false on a clash.
template <class T, class Step>
bool extend_along_generators(const FiniteGroup& g, const T& at_identity, std::vector<std::optional<T>>& value, Step step) {
    value.assign(static_cast<std::size_t>(g.order()), std::nullopt);
    value[static_cast<std::size_t>(g.identity())] = at_identity;
    std::vector<int> queue{g.identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        const auto& gens = g.generators();
        for (std::size_t k = 0; k < gens.size(); ++k) {
            int y = g.mul(x, gens[k]);
            T v = step(*value[static_cast<std::size_t>(x)], x, k);
            auto& slot = value[static_cast<std::size_t>(y)];
            if (!slot) {
                slot = std::move(v);
                queue.push_back(y);
            } else if (*slot != v) {
                return false;
            }
        }
    }
    return true;
}

// Mixed-radix enumeration of all tuples with entries below the given bounds.
template <class F>
void for_each_tuple(const std::vector<std::int64_t>& bounds, F visit) {
    std::vector<std::int64_t> t(bounds.size(), 0);
    for (auto b : bounds)
        if (b <= 0) return;
    while (true) {
        visit(t);
        std::size_t i = 0;
        while (i < t.size() && ++t[i] == bounds[i]) t[i++] = 0;
        if (i == t.size()) return;
    }
}

BigInt product_of(const IntVector& v) {
    BigInt out = 1;
    for (const auto& x : v) out *= x;
    return out;
}

BigInt diagonal_product(const IntMatrix& H) {
    BigInt out = 1;
    for (Eigen::Index i = 0; i < H.rows(); ++i) out *= H(i, i);
    return out;
}

// Coordinates t with t * H = row for a square upper-triangular H.
IntVector solve_upper(const IntMatrix& H, const IntVector& row) {
    const Eigen::Index k = H.rows();
    IntVector t(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        BigInt acc = row[j];
        for (Eigen::Index i = 0; i < j; ++i) acc -= t[i] * H(i, j);
        if (acc % H(j, j) != 0) throw VerificationError("h1: coboundary lattice not inside cocycle lattice", to_string(acc));
        t[j] = acc / H(j, j);
    }
    return t;
}

}  // namespace

FiniteGroup FiniteGroup::make(std::vector<std::vector<int>> cayley) {
    const int n = static_cast<int>(cayley.size());
    if (n == 0) throw std::invalid_argument("group: empty table");
    for (const auto& row : cayley) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group: table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw std::invalid_argument("group: entry out of range");
    }
    auto at = [&](int a, int b) { return cayley[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    FiniteGroup g;
    g.identity_ = -1;
    for (int e = 0; e < n && g.identity_ < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
        if (ok) g.identity_ = e;
    }
    if (g.identity_ < 0) throw std::invalid_argument("group: no identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) throw std::invalid_argument("group: not associative");
    g.inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (at(a, b) == g.identity_ && at(b, a) == g.identity_) g.inverse_[static_cast<std::size_t>(a)] = b;
        if (g.inverse_[static_cast<std::size_t>(a)] < 0) throw std::invalid_argument("group: element without inverse");
    }
    g.cayley_ = std::move(cayley);
    auto in = closure(g.cayley_, g.identity_, {});
    for (int x = 0; x < n; ++x) {
        if (in[static_cast<std::size_t>(x)]) continue;
        g.generators_.push_back(x);
        in = closure(g.cayley_, g.identity_, g.generators_);
    }
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group: order must be positive");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return make(std::move(t));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
    const int m = h.order();
    const int n = g.order() * m;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
    return make(std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int k) {
    if (k < 1) throw std::invalid_argument("dihedral group: k must be positive");
    const int n = 2 * k;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    // s^f r^i, index f * k + i; r^i s = s r^{-i}.
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            int f1 = x / k, i1 = x % k, f2 = y / k, i2 = y % k;
            int f = (f1 + f2) % 2;
            int i = (((f2 ? -i1 : i1) + i2) % k + k) % k;
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = f * k + i;
        }
    }
    return make(std::move(t));
}

FiniteGroup FiniteGroup::quaternion() {
    // Units 1, i, j, k with signs; index = unit + 4 * negative.
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int a = x % 4, b = y % 4;
            int neg = (x / 4 + y / 4 + sign[a][b]) % 2;
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = unit[a][b] + 4 * neg;
        }
    return make(std::move(t));
}

FiniteGroup FiniteGroup::from_subgroup(const std::vector<IntVector>& elements, const BigInt& q) {
    std::map<std::vector<BigInt>, int> index;
    auto key = [&](const IntVector& v) {
        std::vector<BigInt> out;
        for (const auto& x : v) out.push_back(mod_floor(x, q));
        return out;
    };
    for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(key(elements[i]), static_cast<int>(i));
    if (index.size() != elements.size()) throw std::invalid_argument("subgroup: repeated element");
    const std::size_t n = elements.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto it = index.find(key(IntVector(elements[a] + elements[b])));
            if (it == index.end()) throw std::invalid_argument("subgroup: not closed under addition");
            t[a][b] = it->second;
        }
    return make(std::move(t));
}

bool FiniteGroup::is_central(int a) const {
    for (int x = 0; x < order(); ++x)
        if (mul(a, x) != mul(x, a)) return false;
    return true;
}

bool FiniteGroup::is_abelian() const {
    for (int x = 0; x < order(); ++x)
        if (!is_central(x)) return false;
    return true;
}

std::vector<NamedGroup> small_groups(int max_order) {
    if (max_order > 8) throw std::invalid_argument("small groups: tabulated up to order 8");
    using G = FiniteGroup;
    std::vector<NamedGroup> all{
        {"C1", G::cyclic(1)},
        {"C2", G::cyclic(2)},
        {"C3", G::cyclic(3)},
        {"C4", G::cyclic(4)},
        {"C2xC2", G::product(G::cyclic(2), G::cyclic(2))},
        {"C5", G::cyclic(5)},
        {"C6", G::cyclic(6)},
        {"S3", G::dihedral(3)},
        {"C7", G::cyclic(7)},
        {"C8", G::cyclic(8)},
        {"C4xC2", G::product(G::cyclic(4), G::cyclic(2))},
        {"C2xC2xC2", G::product(G::product(G::cyclic(2), G::cyclic(2)), G::cyclic(2))},
        {"D4", G::dihedral(4)},
        {"Q8", G::quaternion()},
    };
    std::vector<NamedGroup> out;
    for (auto& g : all)
        if (g.group.order() <= max_order) out.push_back(std::move(g));
    return out;
}

FiniteModule FiniteModule::make(const FiniteGroup& g, std::vector<std::int64_t> orders, std::vector<SmallMatrix> action) {
    const auto s = static_cast<Eigen::Index>(orders.size());
    for (auto d : orders)
        if (d < 1) throw std::invalid_argument("module: cyclic orders must be positive");
    if (static_cast<int>(action.size()) != g.order()) throw std::invalid_argument("module: one matrix per group element");
    for (const auto& A : action)
        if (A.rows() != s || A.cols() != s) throw std::invalid_argument("module: action matrix has the wrong shape");
    FiniteModule m;
    m.orders_ = std::move(orders);
    m.action_ = std::move(action);
    for (const auto& A : m.action_)
        for (Eigen::Index i = 0; i < s; ++i)
            for (Eigen::Index j = 0; j < s; ++j)
                if (mod(A(i, j) * m.orders_[static_cast<std::size_t>(j)], m.orders_[static_cast<std::size_t>(i)]) != 0)
                    throw std::invalid_argument("module: action not well defined on the cyclic structure");
    for (Eigen::Index j = 0; j < s; ++j) {
        ModuleElement e = m.zero();
        e[static_cast<std::size_t>(j)] = 1;
        e = m.reduce(e);
        if (m.act(g.identity(), e) != e) throw std::invalid_argument("module: identity acts nontrivially");
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (m.act(a, m.act(b, e)) != m.act(g.mul(a, b), e))
                    throw std::invalid_argument("module: action is not a homomorphism");
    }
    return m;
}

FiniteModule FiniteModule::cyclic(const FiniteGroup& g, std::int64_t d, const std::vector<std::int64_t>& units) {
    std::vector<SmallMatrix> action;
    for (auto u : units) action.push_back(SmallMatrix::Constant(1, 1, mod(u, d)));
    return make(g, {d}, std::move(action));
}

FiniteModule FiniteModule::trivial(const FiniteGroup& g, std::vector<std::int64_t> orders) {
    const auto s = static_cast<Eigen::Index>(orders.size());
    std::vector<SmallMatrix> action(static_cast<std::size_t>(g.order()), SmallMatrix::Identity(s, s));
    return make(g, std::move(orders), std::move(action));
}

std::uint64_t FiniteModule::size() const {
    std::uint64_t out = 1;
    for (auto d : orders_) out *= static_cast<std::uint64_t>(d);
    return out;
}

ModuleElement FiniteModule::reduce(ModuleElement x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
    return x;
}

ModuleElement FiniteModule::act(int g, const ModuleElement& x) const {
    const auto& A = action_[static_cast<std::size_t>(g)];
    ModuleElement y(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            acc = mod(acc + mod(A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), orders_[i]) * x[j], orders_[i]);
        y[i] = acc;
    }
    return y;
}

ModuleElement FiniteModule::add(const ModuleElement& x, const ModuleElement& y) const {
    ModuleElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(x[i] + y[i], orders_[i]);
    return z;
}

ModuleElement FiniteModule::sub(const ModuleElement& x, const ModuleElement& y) const {
    ModuleElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(x[i] - y[i], orders_[i]);
    return z;
}

std::vector<ModuleElement> FiniteModule::elements() const {
    if (size() > 1000000) throw SizeLimitError("module: too many elements to enumerate");
    std::vector<ModuleElement> out;
    for_each_tuple(orders_, [&](const std::vector<std::int64_t>& t) { out.push_back(t); });
    return out;
}

std::vector<std::vector<std::int64_t>> unit_actions(const FiniteGroup& g, std::int64_t d) {
    if (d < 1) throw std::invalid_argument("unit actions: modulus must be positive");
    std::vector<std::int64_t> units;
    for (std::int64_t u = 0; u < d; ++u)
        if (std::gcd(u, d) == 1) units.push_back(u);
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> bounds(g.generators().size(), static_cast<std::int64_t>(units.size()));
    for_each_tuple(bounds, [&](const std::vector<std::int64_t>& pick) {
        std::vector<std::optional<std::int64_t>> value;
        bool ok = extend_along_generators<std::int64_t>(g, 1 % d, value, [&](std::int64_t vx, int, std::size_t k) {
            return mod(vx * units[static_cast<std::size_t>(pick[k])], d);
        });
        if (!ok) return;
        std::vector<std::int64_t> images;
        for (const auto& v : value) images.push_back(*v);
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (mod(images[static_cast<std::size_t>(a)] * images[static_cast<std::size_t>(b)], d) !=
                    images[static_cast<std::size_t>(g.mul(a, b))])
                    return;
        out.push_back(std::move(images));
    });
    return out;
}

bool is_cocycle(const FiniteGroup& g, const FiniteModule& m, const Cochain& f) {
    if (static_cast<int>(f.values.size()) != g.order()) return false;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            auto rhs = m.add(f.values[static_cast<std::size_t>(a)], m.act(a, f.values[static_cast<std::size_t>(b)]));
            if (m.reduce(f.values[static_cast<std::size_t>(g.mul(a, b))]) != rhs) return false;
        }
    return true;
}

Cochain coboundary(const FiniteGroup& g, const FiniteModule& m, const ModuleElement& x) {
    Cochain f;
    for (int a = 0; a < g.order(); ++a) f.values.push_back(m.sub(m.act(a, x), x));
    return f;
}

std::vector<Cochain> enumerate_cocycles(const FiniteGroup& g, const FiniteModule& m) {
    const auto elems = m.elements();
    const auto& gens = g.generators();
    double count = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) count *= static_cast<double>(elems.size());
    if (count > 5e6) throw SizeLimitError("cocycle enumeration: too many generator assignments");
    std::vector<Cochain> out;
    std::vector<std::int64_t> bounds(gens.size(), static_cast<std::int64_t>(elems.size()));
    for_each_tuple(bounds, [&](const std::vector<std::int64_t>& pick) {
        std::vector<std::optional<ModuleElement>> value;
        // f(x s) = f(x) + x f(s)
        bool ok = extend_along_generators<ModuleElement>(g, m.zero(), value, [&](const ModuleElement& fx, int x, std::size_t k) {
            return m.add(fx, m.act(x, elems[static_cast<std::size_t>(pick[k])]));
        });
        if (!ok) return;
        Cochain f;
        for (auto& v : value) f.values.push_back(std::move(*v));
        if (!is_cocycle(g, m, f)) throw VerificationError("cocycle enumeration: extension is not a cocycle", cochain_string(f));
        out.push_back(std::move(f));
    });
    return out;
}

std::vector<Cochain> enumerate_coboundaries(const FiniteGroup& g, const FiniteModule& m) {
    std::set<Cochain> seen;
    for (const auto& x : m.elements()) seen.insert(coboundary(g, m, x));
    return {seen.begin(), seen.end()};
}

BigInt H1Report::order() const {
    BigInt out = 1;
    for (const auto& d : invariant_factors) out *= d;
    return out;
}

H1Report h1(const FiniteGroup& g, const FiniteModule& m) {
    if (static_cast<double>(g.order()) * static_cast<double>(m.size()) > 1e6) throw SizeLimitError("h1: |G| |M| above 10^6");
    const int n = g.order();
    const auto s = static_cast<Eigen::Index>(m.rank());
    const Eigen::Index k = n * s;
    const auto& d = m.orders();
    H1Report report;
    if (k == 0) {
        report.cocycle_count = report.coboundary_count = 1;
        report.representatives.push_back(Cochain{std::vector<ModuleElement>(static_cast<std::size_t>(n))});
        return report;
    }
    IntVector D(k);
    for (int a = 0; a < n; ++a)
        for (Eigen::Index i = 0; i < s; ++i) D[a * s + i] = d[static_cast<std::size_t>(i)];

    // f(a s) - f(a) - a f(s) = 0 in M for every a and generator s; this
    // forces the condition for all pairs by induction on word length.
    const auto& group_gens = g.generators();
    const auto ngen = static_cast<Eigen::Index>(group_gens.size());
    const Eigen::Index rows = static_cast<Eigen::Index>(n) * ngen * s + s;
    IntMatrix system = IntMatrix::Zero(rows, k + rows);
    // f(1) = 0, implied by the rest unless G is trivial.
    for (Eigen::Index i = 0; i < s; ++i) {
        Eigen::Index row = rows - s + i;
        system(row, g.identity() * s + i) = 1;
        system(row, k + row) = d[static_cast<std::size_t>(i)];
    }
    for (int a = 0; a < n; ++a)
        for (Eigen::Index t = 0; t < ngen; ++t)
            for (Eigen::Index i = 0; i < s; ++i) {
                const int b = group_gens[static_cast<std::size_t>(t)];
                Eigen::Index row = (static_cast<Eigen::Index>(a) * ngen + t) * s + i;
                system(row, g.mul(a, b) * s + i) += 1;
                system(row, a * s + i) -= 1;
                for (Eigen::Index j = 0; j < s; ++j) system(row, b * s + j) -= m.action()[static_cast<std::size_t>(a)](i, j);
                system(row, k + row) = d[static_cast<std::size_t>(i)];
            }
    IntMatrix kernel = integer_kernel<BigInt>(system);
    IntMatrix z_gens(kernel.cols() + k, k);
    z_gens.topRows(kernel.cols()) = kernel.topRows(k).transpose();
    z_gens.bottomRows(k) = D.asDiagonal();
    IntMatrix Z = hermite_normal_form<BigInt>(z_gens);

    IntMatrix b_gens = IntMatrix::Zero(s + k, k);
    for (Eigen::Index j = 0; j < s; ++j)
        for (int a = 0; a < n; ++a)
            for (Eigen::Index i = 0; i < s; ++i)
                b_gens(j, a * s + i) = m.action()[static_cast<std::size_t>(a)](i, j) - (i == j ? 1 : 0);
    b_gens.bottomRows(k) = D.asDiagonal();
    IntMatrix B = hermite_normal_form<BigInt>(b_gens);
    if (Z.rows() != k || B.rows() != k) throw VerificationError("h1: lattice is not of full rank", "");

    const BigInt total = product_of(D);
    report.cocycle_count = total / diagonal_product(Z);
    report.coboundary_count = total / diagonal_product(B);

    IntMatrix T(k, k);
    for (Eigen::Index i = 0; i < k; ++i) T.row(i) = solve_upper(Z, IntVector(B.row(i).transpose())).transpose();
    auto snf = smith_normal_form<BigInt>(T);
    std::vector<IntVector> gens;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (snf.D(i, i) == 1) continue;
        report.invariant_factors.push_back(snf.D(i, i));
        gens.push_back(IntVector((snf.V_inverse.row(i) * Z).transpose()));
    }
    if (report.cocycle_count != report.coboundary_count * report.order())
        throw VerificationError("h1: cocycles != coboundaries * |H1|", to_string(report.cocycle_count));

    auto to_cochain = [&](const IntVector& v) {
        Cochain f;
        for (int a = 0; a < n; ++a) {
            ModuleElement x(static_cast<std::size_t>(s));
            for (Eigen::Index i = 0; i < s; ++i) x[static_cast<std::size_t>(i)] = to_int64(mod_floor(v[a * s + i], D[a * s + i]));
            f.values.push_back(std::move(x));
        }
        if (!is_cocycle(g, m, f)) throw VerificationError("h1: representative is not a cocycle", cochain_string(f));
        return f;
    };
    if (report.order() <= 256) {
        std::vector<std::int64_t> bounds;
        for (const auto& x : report.invariant_factors) bounds.push_back(to_int64(x));
        for_each_tuple(bounds, [&](const std::vector<std::int64_t>& c) {
            IntVector v = IntVector::Zero(k);
            for (std::size_t i = 0; i < gens.size(); ++i) v += gens[i] * BigInt(c[i]);
            report.representatives.push_back(to_cochain(v));
        });
    } else {
        for (const auto& v : gens) report.representatives.push_back(to_cochain(v));
    }

    double assignments = 1;
    for (std::size_t i = 0; i < g.generators().size(); ++i) assignments *= static_cast<double>(m.size());
    if (assignments <= 200000) {
        auto z = enumerate_cocycles(g, m).size();
        auto b = enumerate_coboundaries(g, m).size();
        if (BigInt(z) != report.cocycle_count || BigInt(b) != report.coboundary_count)
            throw VerificationError("h1: enumeration disagrees with the linear solve",
                                    std::to_string(z) + " cocycles, " + std::to_string(b) + " coboundaries");
        report.enumeration_checked = true;
    }
    return report;
}

SahResult sah_verify(const FiniteGroup& g, const FiniteModule& m, int alpha) {
    if (alpha < 0 || alpha >= g.order()) throw std::invalid_argument("sah: alpha is not a group element");
    if (!g.is_central(alpha)) throw std::invalid_argument("sah: alpha is not central");
    if (static_cast<double>(g.order()) * static_cast<double>(m.size()) > 1e6) throw SizeLimitError("sah: |G| |M| above 10^6");
    auto cobs = enumerate_coboundaries(g, m);
    std::set<Cochain> coboundaries(cobs.begin(), cobs.end());
    SahResult result;
    for (const auto& f : enumerate_cocycles(g, m)) {
        ++result.cocycles_checked;
        const auto& fa = f.values[static_cast<std::size_t>(alpha)];
        Cochain image;
        for (int x = 0; x < g.order(); ++x) {
            const auto& fx = f.values[static_cast<std::size_t>(x)];
            auto lhs = m.sub(m.act(alpha, fx), fx);
            auto rhs = m.sub(m.act(x, fa), fa);
            if (lhs != rhs && result.pass) {
                result.pass = false;
                result.witness_cocycle = f;
                result.witness_element = x;
                result.failure = "(alpha - 1) f(g) != (g - 1) f(alpha)";
            }
            image.values.push_back(std::move(lhs));
        }
        if (!coboundaries.count(image) && result.pass) {
            result.pass = false;
            result.witness_cocycle = f;
            result.failure = "(alpha - 1) f is not a coboundary";
        }
    }
    return result;
}

SahSweep sah_sweep(int max_order, std::int64_t max_modulus, bool parallel) {
    auto groups = small_groups(max_order);
    auto run = [max_modulus](const NamedGroup& ng) {
        SahSweep part;
        const auto& g = ng.group;
        for (std::int64_t d = 2; d <= max_modulus; ++d)
            for (const auto& units : unit_actions(g, d)) {
                auto m = FiniteModule::cyclic(g, d, units);
                for (int alpha = 0; alpha < g.order(); ++alpha) {
                    if (!g.is_central(alpha)) continue;
                    ++part.triples;
                    auto r = sah_verify(g, m, alpha);
                    if (r.pass) continue;
                    ++part.failures;
                    std::ostringstream os;
                    os << ng.name << " Z/" << d << " alpha=" << alpha << ": " << r.failure;
                    part.failure_witnesses.push_back(os.str());
                }
            }
        return part;
    };
    std::vector<SahSweep> parts;
    if (parallel) {
        std::vector<std::future<SahSweep>> jobs;
        for (const auto& ng : groups) jobs.push_back(std::async(std::launch::async, run, std::cref(ng)));
        for (auto& j : jobs) parts.push_back(j.get());
    } else {
        for (const auto& ng : groups) parts.push_back(run(ng));
    }
    SahSweep out;
    for (auto& p : parts) {
        out.triples += p.triples;
        out.failures += p.failures;
        for (auto& w : p.failure_witnesses) out.failure_witnesses.push_back(std::move(w));
    }
    return out;
}

DeltaReport kummer_delta_check(std::uint64_t n, const MultSubgroup& gamma, const EngineOptions& options) {
    auto pp = as_prime_power(n);
    if (!pp) throw std::invalid_argument("delta check: N must be a prime power");
    auto level = KummerLevel::make(pp->first, static_cast<unsigned>(pp->second));
    const BigInt q(n);
    DeltaReport report;
    report.conductor = n;

    auto relations = relation_lattice_unchecked(gamma, level, options).subgroup;
    auto image = orthogonal_complement_mod(relations);
    report.quotient_order = relations.index();
    auto elems = image.elements();
    auto G = FiniteGroup::from_subgroup(elems, q);
    report.group_order = G.order();

    // sigma(b_i) = zeta^{c_i} b_i; the cocycle of b_i is sigma -> c_i in Z/N.
    const Eigen::Index r = gamma.rank();
    report.cocycles_are_homomorphisms = true;
    for (Eigen::Index i = 0; i < r; ++i)
        for (int a = 0; a < G.order(); ++a)
            for (int b = 0; b < G.order(); ++b) {
                const auto& x = elems[static_cast<std::size_t>(a)];
                const auto& y = elems[static_cast<std::size_t>(b)];
                const auto& z = elems[static_cast<std::size_t>(G.mul(a, b))];
                if (mod_floor(x[i] + y[i] - z[i], q) != 0) report.cocycles_are_homomorphisms = false;
            }

    // Hom(G, mu_N) = Z^1(G, Z/N) with trivial action.
    auto mu = FiniteModule::trivial(G, {static_cast<std::int64_t>(n)});
    report.hom_count = enumerate_cocycles(G, mu).size();

    // e -> (sigma -> e . c(sigma)); injective on classes mod the relations.
    std::vector<std::int64_t> bounds(static_cast<std::size_t>(r), static_cast<std::int64_t>(n));
    double classes = std::pow(static_cast<double>(n), static_cast<double>(r));
    if (classes > 1e5) throw SizeLimitError("delta check: too many classes to pair");
    std::set<std::vector<BigInt>> homs;
    std::set<std::vector<BigInt>> kernel;
    for_each_tuple(bounds, [&](const std::vector<std::int64_t>& e) {
        std::vector<BigInt> values;
        for (const auto& c : elems) {
            BigInt acc = 0;
            for (Eigen::Index i = 0; i < r; ++i) acc += BigInt(e[static_cast<std::size_t>(i)]) * c[i];
            values.push_back(mod_floor(acc, q));
        }
        if (std::all_of(values.begin(), values.end(), [](const BigInt& v) { return v == 0; }))
            kernel.insert(std::vector<BigInt>(e.begin(), e.end()));
        homs.insert(std::move(values));
    });
    std::set<std::vector<BigInt>> expected;
    for (const auto& v : relations.elements()) expected.insert(std::vector<BigInt>(v.begin(), v.end()));
    report.pairing_injective = kernel == expected && BigInt(homs.size()) == report.quotient_order;

    // Primitive element sum c^i b_i: P_0 = X^N - a_0, P_{i} = Res_y(P_{i-1}(y), (X - y)^N - c^{iN} a_i).
    auto field = CyclotomicField::make(n);
    std::vector<BigRational> values;
    for (const auto& a : gamma.generators()) values.push_back(a.value());
    for (int c = 1; c <= 5 && report.multiplier == 0; ++c) {
        RationalPoly P = RationalPoly::binomial(n, values.empty() ? BigRational(1) : values[0]);
        for (std::size_t i = 1; i < values.size(); ++i) {
            BigRational shift = ipow(BigRational(ipow(BigInt(c), i)), static_cast<std::int64_t>(n)) * values[i];
            const long deg = P.degree() * static_cast<long>(n);
            std::vector<BigRational> xs, ys;
            for (long x = 0; x <= deg; ++x) {
                RationalPoly Q = pow(RationalPoly{BigRational(x), BigRational(-1)}, n) - RationalPoly::constant(shift);
                xs.push_back(x);
                ys.push_back(resultant(P, Q));
            }
            P = interpolate(xs, ys).monic();
        }
        if (!is_squarefree(P)) continue;
        auto fac = factor_over_cyclotomic(CycPoly::from_rational(field, P), options.oracle);
        std::set<long> degrees;
        for (const auto& f : fac.factors) degrees.insert(f.poly.degree());
        if (degrees.size() != 1)
            throw VerificationError("delta check: conjugate orbits of unequal size", P.to_string());
        report.multiplier = c;
        report.field_degree = *degrees.begin();
    }
    if (report.multiplier == 0) throw VerificationError("delta check: no squarefree primitive element", gamma.to_strings()[0]);

    report.pass = report.cocycles_are_homomorphisms && report.pairing_injective &&
                  report.group_order == report.quotient_order && report.hom_count == report.group_order &&
                  report.field_degree == report.group_order;
    return report;
}

}  // namespace thumbtack

#include "thumbtack/multgroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "thumbtack/factorization.hpp"

namespace thumbtack {

BigRational FactoredRational::value() const {
    BigRational out = sign;
    for (const auto& [p, e] : exponents) out *= ipow(BigRational(p), e);
    return out;
}

std::int64_t FactoredRational::exponent_of(const BigInt& prime) const {
    for (const auto& [p, e] : exponents)
        if (p == prime) return e;
    return 0;
}

std::string FactoredRational::to_string() const {
    std::ostringstream os;
    os << (sign < 0 ? "-" : "+");
    if (exponents.empty()) os << "1";
    for (std::size_t i = 0; i < exponents.size(); ++i)
        os << (i ? "*" : "") << exponents[i].first << "^" << exponents[i].second;
    return os.str();
}

FactoredRational FactoredRational::pow(std::int64_t e) const {
    FactoredRational out;
    out.sign = (sign < 0 && e % 2 != 0) ? -1 : 1;
    if (e == 0) return out;
    for (const auto& [p, k] : exponents) out.exponents.emplace_back(p, k * e);
    return out;
}

FactoredRational operator*(const FactoredRational& a, const FactoredRational& b) {
    std::map<BigInt, std::int64_t> acc;
    for (const auto& [p, e] : a.exponents) acc[p] += e;
    for (const auto& [p, e] : b.exponents) acc[p] += e;
    FactoredRational out;
    out.sign = a.sign * b.sign;
    for (const auto& [p, e] : acc)
        if (e != 0) out.exponents.emplace_back(p, e);
    return out;
}

FactoredRational factor_rational(const BigRational& q) {
    if (q == 0) throw std::invalid_argument("factor_rational: zero has no factorization");
    FactoredRational out;
    out.sign = q < 0 ? -1 : 1;
    std::map<BigInt, std::int64_t> acc;
    for (const auto& [p, e] : factor_integer(mp::abs(numerator_of(q)))) acc[p] += e;
    for (const auto& [p, e] : factor_integer(denominator_of(q))) acc[p] -= e;
    for (const auto& [p, e] : acc)
        if (e != 0) out.exponents.emplace_back(p, e);
    if (out.value() != q) throw VerificationError("factor_rational: reconstruction differs", to_string(q));
    return out;
}

MultSubgroup::MultSubgroup(std::vector<FactoredRational> generators) : generators_(std::move(generators)) {
    std::vector<BigInt> primes;
    for (const auto& g : generators_)
        for (const auto& [p, e] : g.exponents) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    support_ = std::move(primes);
    const auto r = rank();
    exponents_ = IntMatrix::Zero(static_cast<Eigen::Index>(support_.size()), r);
    torsion_ = IntVector::Zero(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        const auto& g = generators_[static_cast<std::size_t>(j)];
        if (g.sign < 0) torsion_(j) = 1;
        for (const auto& [p, e] : g.exponents) exponents_(prime_row(p), j) = e;
    }
}

MultSubgroup MultSubgroup::from_rationals(const std::vector<BigRational>& values) {
    std::vector<FactoredRational> gens;
    for (const auto& v : values) gens.push_back(factor_rational(v));
    return MultSubgroup(std::move(gens));
}

Eigen::Index MultSubgroup::prime_row(const BigInt& p) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), p);
    if (it == support_.end() || *it != p) return -1;
    return static_cast<Eigen::Index>(it - support_.begin());
}

FactoredRational MultSubgroup::evaluate(const IntVector& e) const {
    if (e.size() != rank()) throw std::invalid_argument("evaluate: exponent vector length differs from rank");
    FactoredRational out;
    for (Eigen::Index j = 0; j < rank(); ++j) out = out * generators_[static_cast<std::size_t>(j)].pow(to_int64(e(j)));
    return out;
}

std::vector<std::string> MultSubgroup::to_strings() const {
    std::vector<std::string> out;
    for (const auto& g : generators_) out.push_back(g.to_string());
    return out;
}

IndependenceVerdict independence_check(const MultSubgroup& gamma) {
    if (gamma.rank() < 1) throw std::invalid_argument("independence_check: empty tuple");
    IntMatrix K = integer_kernel<BigInt>(gamma.exponent_matrix());
    IndependenceVerdict out;
    if (K.cols() == 0) return out;
    out.independent = false;
    out.witness = K.col(0);
    if (!gamma.evaluate(*out.witness).is_torsion())
        throw VerificationError("independence witness is not a root of unity", lattice_detail::matrix_string(K));
    return out;
}

namespace {

// Echelon-form row lattice membership (rows from hermite_normal_form).
bool row_lattice_contains(const IntMatrix& H, IntVector v) {
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        Eigen::Index c = 0;
        while (H(i, c) == 0) ++c;
        if (v(c) % H(i, c) != 0) return false;
        BigInt q = v(c) / H(i, c);
        if (q != 0) v -= q * H.row(i).transpose();
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Z (sign, with relation 2) + Z^support image of Gamma, as Hermite rows.
IntMatrix gamma_lattice(const MultSubgroup& gamma) {
    const auto s = static_cast<Eigen::Index>(gamma.support().size());
    const auto r = gamma.rank();
    IntMatrix G = IntMatrix::Zero(r + 1, s + 1);
    G(0, 0) = 2;
    for (Eigen::Index j = 0; j < r; ++j) {
        G(j + 1, 0) = gamma.torsion_row()(j);
        G.block(j + 1, 1, 1, s) = gamma.exponent_matrix().col(j).transpose();
    }
    return hermite_normal_form<BigInt>(G);
}

}  // namespace

bool contains(const MultSubgroup& gamma, const FactoredRational& x) {
    const auto s = static_cast<Eigen::Index>(gamma.support().size());
    IntVector v = IntVector::Zero(s + 1);
    v(0) = x.sign < 0 ? 1 : 0;
    for (const auto& [p, e] : x.exponents) {
        auto row = gamma.prime_row(p);
        if (row < 0) return false;
        v(row + 1) = e;
    }
    return row_lattice_contains(gamma_lattice(gamma), v);
}

DivisionGroupReport division_group(const MultSubgroup& gamma) {
    const IntMatrix& E = gamma.exponent_matrix();
    const auto r = gamma.rank();
    auto sat = saturation<BigInt>(E);
    const IntMatrix& B = sat.basis;
    const auto k = B.cols();

    // Coordinates of each generator's free part in the saturated basis.
    IntMatrix W(k, r);
    if (k > 0) {
        auto snf = smith_normal_form<BigInt>(B);
        IntMatrix y = snf.U * E;
        W = snf.V * IntMatrix(y.topRows(k));
        if (IntMatrix(B * W) != E) throw VerificationError("division group: coordinates do not reproduce Gamma", "");
    }
    // Gamma'/Gamma = (Z/2 + Z^k) / <(sign_j, w_j)>.
    IntMatrix P = IntMatrix::Zero(1 + k, 1 + r);
    P(0, 0) = 2;
    for (Eigen::Index j = 0; j < r; ++j) {
        P(0, j + 1) = gamma.torsion_row()(j);
        if (k > 0) P.block(1, j + 1, k, 1) = W.col(j);
    }
    auto snf = smith_normal_form<BigInt>(P);
    if (snf.rank != 1 + k) throw VerificationError("division group: presentation is not of full rank", "");
    DivisionGroupReport out;
    out.index = 1;
    for (Eigen::Index i = 0; i < snf.rank; ++i) out.index *= snf.D(i, i);

    out.division_generators.push_back(FactoredRational{-1, {}});
    for (Eigen::Index c = 0; c < k; ++c) {
        FactoredRational d;
        for (Eigen::Index i = 0; i < B.rows(); ++i)
            if (B(i, c) != 0) d.exponents.emplace_back(gamma.support()[static_cast<std::size_t>(i)], to_int64(B(i, c)));
        out.division_generators.push_back(std::move(d));
    }
    for (const auto& d : out.division_generators) {
        BigInt n = 1;
        while (!contains(gamma, d.pow(to_int64(n)))) {
            if (n > out.index) throw VerificationError("division generator has no power in Gamma", d.to_string());
            ++n;
        }
        out.powers.push_back(n);
    }
    return out;
}

PowerIntersectionVerdict power_intersection_check(const MultSubgroup& gamma, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("power_intersection_check: n must be positive");
    PowerIntersectionVerdict out;
    out.index = division_group(gamma).index;
    if (gcd(BigInt(n), 2 * out.index) != 1) {
        out.status = PowerIntersectionVerdict::Status::not_applicable;
        return out;
    }
    const IntMatrix& E = gamma.exponent_matrix();
    const auto s = E.rows();
    const auto r = gamma.rank();
    const BigInt N(n);

    // a^e in Q^{x n}: E e = 0 mod n, and an even sign count when n is even.
    IntMatrix A(s + (n % 2 == 0 ? 1 : 0), r);
    A.topRows(s) = E;
    if (n % 2 == 0) A.row(s) = gamma.torsion_row().transpose() * BigInt(n / 2);
    auto powers = kernel_mod_any(A, N);
    out.power_classes = powers.generators();

    // Gamma^n mod n is the image of the relation module {e : a^e = 1}.
    IntMatrix R = IntMatrix::Zero(s + 1, r + 1);
    R.topLeftCorner(s, r) = E;
    R.block(s, 0, 1, r) = gamma.torsion_row().transpose();
    R(s, r) = 2;
    IntMatrix K = integer_kernel<BigInt>(R);
    IntMatrix relations = K.topRows(r).transpose();
    auto trivial_classes = ModSubgroup::from_generators(relations, N, r);
    for (Eigen::Index i = 0; i < powers.lattice().rows(); ++i) {
        IntVector v = powers.lattice().row(i).transpose();
        if (!trivial_classes.contains(v)) {
            out.status = PowerIntersectionVerdict::Status::fail;
            for (auto& x : v) x = mod_floor(x, N);
            out.counterexample = v;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Function field

std::pair<RationalPoly, RationalPoly> FunctionFieldElement::fraction() const {
    RationalPoly num = RationalPoly::constant(constant), den = RationalPoly::constant(1);
    for (const auto& [f, e] : factors) {
        if (e > 0) num *= pow(f, static_cast<unsigned>(e));
        else den *= pow(f, static_cast<unsigned>(-e));
    }
    return {num, den};
}

std::string label_string(const RationalPoly& p, const std::string& var) {
    std::string s = p.to_string(var);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

std::string FunctionFieldElement::to_string(const std::string& var) const {
    std::ostringstream os;
    os << thumbtack::to_string(constant);
    for (const auto& [f, e] : factors) {
        os << "*(" << label_string(f, var) << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

FunctionFieldElement make_function_field_element(const RationalPoly& num, const RationalPoly& den) {
    if (num.is_zero()) throw std::invalid_argument("function field: the zero function has no factorization");
    if (den.is_zero()) throw std::invalid_argument("function field: zero denominator");
    auto fn = factor_over_rationals(num);
    auto fd = factor_over_rationals(den);
    FunctionFieldElement out;
    out.constant = fn.constant / fd.constant;
    std::vector<std::pair<RationalPoly, std::int64_t>> acc;
    auto add = [&](const RationalPoly& f, std::int64_t e) {
        for (auto& [g, k] : acc)
            if (g == f) {
                k += e;
                return;
            }
        acc.emplace_back(f, e);
    };
    for (const auto& f : fn.factors) add(f.poly, static_cast<std::int64_t>(f.multiplicity));
    for (const auto& f : fd.factors) add(f.poly, -static_cast<std::int64_t>(f.multiplicity));
    for (auto& [f, e] : acc)
        if (e != 0) out.factors.emplace_back(std::move(f), e);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return canonical_compare(a.first, b.first) < 0; });
    auto [n2, d2] = out.fraction();
    if (n2 * den != num * d2) throw VerificationError("function field: factorization does not reconstruct", "");
    return out;
}

namespace {

struct Fraction {
    RationalPoly num, den;
};

class Parser {
  public:
    Parser(std::string_view text, char var) : text_(text), var_(var) {}

    Fraction parse() {
        skip();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        Fraction f = expr();
        skip();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return f;
    }

  private:
    std::string_view text_;
    char var_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool starts_primary() {
        skip();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c == var_ || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }

    static Fraction mul(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }
    Fraction div(const Fraction& a, const Fraction& b, std::size_t at) {
        if (b.num.is_zero()) throw ParseError("division by zero", at);
        return {a.num * b.den, a.den * b.num};
    }

    Fraction expr() {
        Fraction acc = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                Fraction t = term();
                acc = {acc.num * t.den + t.num * acc.den, acc.den * t.den};
            } else if (peek('-')) {
                ++pos_;
                Fraction t = term();
                acc = {acc.num * t.den - t.num * acc.den, acc.den * t.den};
            } else {
                return acc;
            }
        }
    }

    Fraction term() {
        Fraction acc = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = mul(acc, unary());
            } else if (peek('/')) {
                std::size_t at = pos_++;
                acc = div(acc, unary(), at);
            } else if (starts_primary()) {
                acc = mul(acc, power());
            } else {
                return acc;
            }
        }
    }

    Fraction unary() {
        if (peek('-')) {
            ++pos_;
            Fraction f = unary();
            return {f.num * RationalPoly::constant(-1), f.den};
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Fraction power() {
        std::size_t at = pos_;
        Fraction base = primary();
        if (!peek('^')) return base;
        ++pos_;
        skip();
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected an integer exponent", pos_);
        if (pos_ - start > 4) throw ParseError("exponent too large", start);
        unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
        Fraction out{pow(base.num, e), pow(base.den, e)};
        if (negative) {
            if (out.num.is_zero()) throw ParseError("zero raised to a negative power", at);
            std::swap(out.num, out.den);
        }
        return out;
    }

    Fraction primary() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == var_) {
            ++pos_;
            return {RationalPoly({0, 1}), RationalPoly::constant(1)};
        }
        if (c == '(') {
            ++pos_;
            Fraction f = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            BigInt v(std::string(text_.substr(start, pos_ - start)));
            return {RationalPoly::constant(BigRational(v)), RationalPoly::constant(1)};
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }
};

}  // namespace

FunctionFieldElement parse_function_field(std::string_view expr, char var) {
    Fraction f = Parser(expr, var).parse();
    if (f.num.is_zero()) throw ParseError("the zero function is not invertible", 0);
    return make_function_field_element(f.num, f.den);
}

std::vector<RationalPoly> coprime_base(const std::vector<RationalPoly>& polys) {
    std::vector<RationalPoly> work;
    for (const auto& p : polys)
        if (p.degree() >= 1) work.push_back(p.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size() && !changed; ++i) {
            RationalPoly g = gcd(work[i], work[i].derivative());
            if (g.degree() >= 1) {
                RationalPoly rest = exact_div(work[i], g);
                work[i] = rest;
                work.push_back(g);
                changed = true;
            }
        }
        for (std::size_t i = 0; i < work.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
                if (work[i] == work[j]) {
                    work.erase(work.begin() + static_cast<long>(j));
                    changed = true;
                    break;
                }
                RationalPoly g = gcd(work[i], work[j]);
                if (g.degree() < 1) continue;
                RationalPoly a = exact_div(work[i], g), b = exact_div(work[j], g);
                work.erase(work.begin() + static_cast<long>(j));
                work.erase(work.begin() + static_cast<long>(i));
                for (auto* p : {&a, &b, &g})
                    if (p->degree() >= 1) work.push_back(p->monic());
                changed = true;
            }
    }
    std::sort(work.begin(), work.end(), [](const auto& a, const auto& b) { return canonical_compare(a, b) < 0; });
    return work;
}

LabelMatrix label_matrix(const std::vector<FunctionFieldElement>& elements) {
    std::vector<RationalPoly> all;
    for (const auto& el : elements)
        for (const auto& [f, e] : el.factors) all.push_back(f);
    LabelMatrix out;
    out.labels = coprime_base(all);
    const auto rows = static_cast<Eigen::Index>(out.labels.size());
    const auto cols = static_cast<Eigen::Index>(elements.size());
    out.exponents = IntMatrix::Zero(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (const auto& [f, e] : elements[static_cast<std::size_t>(j)].factors) {
            RationalPoly rest = f;
            for (Eigen::Index i = 0; i < rows; ++i) {
                const auto& b = out.labels[static_cast<std::size_t>(i)];
                while (rest.degree() >= b.degree()) {
                    auto [q, rem] = divmod(rest, b);
                    if (!rem.is_zero()) break;
                    rest = q;
                    out.exponents(i, j) += e;
                }
            }
            if (rest.degree() != 0) throw VerificationError("label basis does not cover a factor", label_string(f));
        }
    return out;
}

}  // namespace thumbtack

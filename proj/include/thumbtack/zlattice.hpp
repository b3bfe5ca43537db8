#ifndef THUMBTACK_ZLATTICE_HPP
#define THUMBTACK_ZLATTICE_HPP

// Integer matrix normal forms and subgroups of (Z/q)^r.
//
// Everything dense is an Eigen matrix over an exact integer scalar; the
// library instantiates BigInt, tests also use std::int64_t.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thumbtack/bigint.hpp"

namespace thumbtack {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

namespace lattice_detail {

template <class S>
S abs_value(const S& x) {
    return x < 0 ? S(-x) : x;
}

template <class S>
S floor_div(const S& a, const S& b) {
    S q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

template <class S>
S gcd_value(S a, S b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        S t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

template <class S>
std::string matrix_string(const Matrix<S>& A) {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (Eigen::Index j = 0; j < A.cols(); ++j) os << (j ? "," : "") << A(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace lattice_detail

/// Fraction-free (Bareiss) determinant.
template <class S>
S determinant(Matrix<S> A) {
    const Eigen::Index n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("determinant: matrix is not square");
    if (n == 0) return S(1);
    S sign = 1, prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            Eigen::Index swap = k + 1;
            while (swap < n && A(swap, k) == 0) ++swap;
            if (swap == n) return S(0);
            A.row(k).swap(A.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

template <class S>
struct SmithDecomposition {
    Matrix<S> U, D, V;
    Matrix<S> U_inverse, V_inverse;
    Eigen::Index rank = 0;

    /// d_1 | d_2 | ... over min(rows, cols) entries, zeros last.
    std::vector<S> diagonal() const {
        std::vector<S> out;
        for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
        return out;
    }
};

/// D = U A V with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
/// Pivots are the smallest nonzero absolute value, ties by row-major
/// position. The decomposition is checked before returning.
template <class S>
SmithDecomposition<S> smith_normal_form(const Matrix<S>& A) {
    using lattice_detail::abs_value;
    const Eigen::Index m = A.rows(), n = A.cols();
    SmithDecomposition<S> out;
    Matrix<S>& D = out.D;
    D = A;
    out.U = Matrix<S>::Identity(m, m);
    out.U_inverse = Matrix<S>::Identity(m, m);
    out.V = Matrix<S>::Identity(n, n);
    out.V_inverse = Matrix<S>::Identity(n, n);

    // row_i += k row_j
    auto add_row = [&](Eigen::Index i, Eigen::Index j, const S& k) {
        D.row(i) += k * D.row(j);
        out.U.row(i) += k * out.U.row(j);
        out.U_inverse.col(j) -= k * out.U_inverse.col(i);
    };
    // col_i += k col_j
    auto add_col = [&](Eigen::Index i, Eigen::Index j, const S& k) {
        D.col(i) += k * D.col(j);
        out.V.col(i) += k * out.V.col(j);
        out.V_inverse.row(j) -= k * out.V_inverse.row(i);
    };
    auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        D.row(i).swap(D.row(j));
        out.U.row(i).swap(out.U.row(j));
        out.U_inverse.col(i).swap(out.U_inverse.col(j));
    };
    auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        D.col(i).swap(D.col(j));
        out.V.col(i).swap(out.V.col(j));
        out.V_inverse.row(i).swap(out.V_inverse.row(j));
    };

    Eigen::Index t = 0;
    for (; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block.
        Eigen::Index pi = -1, pj = -1;
        for (Eigen::Index i = t; i < m; ++i)
            for (Eigen::Index j = t; j < n; ++j)
                if (D(i, j) != 0 && (pi < 0 || abs_value(D(i, j)) < abs_value(D(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        while (true) {
            bool dirty = false;
            for (Eigen::Index i = t + 1; i < m; ++i)
                if (D(i, t) != 0) {
                    add_row(i, t, S(-(D(i, t) / D(t, t))));
                    if (D(i, t) != 0) dirty = true;
                }
            for (Eigen::Index j = t + 1; j < n; ++j)
                if (D(t, j) != 0) {
                    add_col(j, t, S(-(D(t, j) / D(t, t))));
                    if (D(t, j) != 0) dirty = true;
                }
            if (dirty) {
                // A remainder smaller than the pivot survived: move it in.
                Eigen::Index bi = t, bj = t;
                for (Eigen::Index i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && abs_value(D(i, t)) < abs_value(D(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs_value(D(t, j)) < abs_value(D(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            add_row(t, bad, S(1));
        }
        if (D(t, t) < 0) {
            D.row(t) *= S(-1);
            out.U.row(t) *= S(-1);
            out.U_inverse.col(t) *= S(-1);
        }
    }
    out.rank = t;

    // Checks.
    const std::string witness = lattice_detail::matrix_string(A);
    if (Matrix<S>(out.U * A * out.V) != D) throw VerificationError("smith: D != U A V", witness);
    if (Matrix<S>(out.U * out.U_inverse) != Matrix<S>::Identity(m, m) ||
        Matrix<S>(out.V * out.V_inverse) != Matrix<S>::Identity(n, n))
        throw VerificationError("smith: transform inverse mismatch", witness);
    if (abs_value(determinant<S>(out.U)) != 1 || abs_value(determinant<S>(out.V)) != 1)
        throw VerificationError("smith: transform not unimodular", witness);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && D(i, j) != 0) throw VerificationError("smith: off-diagonal entry", witness);
    auto d = out.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if (d[i] < 0) throw VerificationError("smith: negative divisor", witness);
        if (d[i] == 0 ? d[i + 1] != 0 : d[i + 1] % d[i] != 0)
            throw VerificationError("smith: divisor chain broken", witness);
    }
    return out;
}

/// Row Hermite normal form: the nonzero rows of an echelon basis of the
/// row lattice, pivots positive, entries above each pivot in [0, pivot).
template <class S>
Matrix<S> hermite_normal_form(Matrix<S> A) {
    using lattice_detail::abs_value;
    using lattice_detail::floor_div;
    const Eigen::Index m = A.rows(), n = A.cols();
    Eigen::Index r = 0;
    std::vector<Eigen::Index> pivots;
    for (Eigen::Index c = 0; c < n && r < m; ++c) {
        while (true) {
            Eigen::Index best = -1;
            for (Eigen::Index i = r; i < m; ++i)
                if (A(i, c) != 0 && (best < 0 || abs_value(A(i, c)) < abs_value(A(best, c)))) best = i;
            if (best < 0) break;
            if (best != r) A.row(r).swap(A.row(best));
            bool clean = true;
            for (Eigen::Index i = r + 1; i < m; ++i) {
                if (A(i, c) == 0) continue;
                S q = A(i, c) / A(r, c);
                A.row(i) -= q * A.row(r);
                if (A(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r >= m || A(r, c) == 0) continue;
        if (A(r, c) < 0) A.row(r) *= S(-1);
        for (Eigen::Index i = 0; i < r; ++i) {
            S q = floor_div(A(i, c), A(r, c));
            if (q != 0) A.row(i) -= q * A.row(r);
        }
        pivots.push_back(c);
        ++r;
    }
    return A.topRows(r);
}

/// Basis (as columns) of {x in Z^n : A x = 0}, normalized by the Hermite
/// form of its transpose. For [1 2] this is the single column (2, -1).
template <class S>
Matrix<S> integer_kernel(const Matrix<S>& A) {
    auto snf = smith_normal_form<S>(A);
    const Eigen::Index n = A.cols();
    Matrix<S> rows = snf.V.rightCols(n - snf.rank).transpose();
    Matrix<S> basis = hermite_normal_form<S>(rows).transpose();
    if (A.rows() > 0 && basis.cols() > 0 && Matrix<S>(A * basis) != Matrix<S>::Zero(A.rows(), basis.cols()))
        throw VerificationError("integer kernel: A K != 0", lattice_detail::matrix_string(A));
    return basis;
}

template <class S>
struct Saturation {
    /// Columns span {v : k v in L for some k >= 1}.
    Matrix<S> basis;
    /// [saturation : L], the product of the nonzero elementary divisors.
    S index;
};

/// Saturation of the lattice spanned by the columns of L.
template <class S>
Saturation<S> saturation(const Matrix<S>& L) {
    auto snf = smith_normal_form<S>(L);
    Matrix<S> cols = snf.U_inverse.leftCols(snf.rank);
    Saturation<S> out{hermite_normal_form<S>(Matrix<S>(cols.transpose())).transpose(), S(1)};
    for (Eigen::Index i = 0; i < snf.rank; ++i) out.index *= snf.D(i, i);
    return out;
}

/// A subgroup S of (Z/q)^r. Stored through the full-rank lattice
/// S + q Z^r in row Hermite form, which is unique for the subgroup, so
/// equality is structural.
class ModSubgroup {
  public:
    /// Subgroup generated by the rows of G.
    static ModSubgroup from_generators(const IntMatrix& G, const BigInt& modulus, Eigen::Index rank);
    static ModSubgroup trivial(const BigInt& modulus, Eigen::Index rank);
    static ModSubgroup full(const BigInt& modulus, Eigen::Index rank);

    const BigInt& modulus() const noexcept { return modulus_; }
    Eigen::Index rank() const noexcept { return static_cast<Eigen::Index>(lattice_.rows()); }
    /// Elementary divisors d_1 | ... | d_r of S + qZ^r, each dividing q.
    const std::vector<BigInt>& divisors() const noexcept { return divisors_; }
    /// Hermite basis of S + qZ^r (r x r).
    const IntMatrix& lattice() const noexcept { return lattice_; }
    /// Rows of the Hermite basis that are nonzero modulo q.
    IntMatrix generators() const;

    BigInt order() const;
    /// q^r / |S| = prod d_i.
    BigInt index() const;
    bool is_trivial() const;
    bool is_full() const;
    bool contains(const IntVector& v) const;
    /// Image under (Z/q)^r -> (Z/q')^r for q' dividing q.
    ModSubgroup reduce(const BigInt& new_modulus) const;
    /// All elements, for small subgroups (tests and the cohomology lab).
    std::vector<IntVector> elements() const;

    std::string to_string() const;
    friend bool operator==(const ModSubgroup& a, const ModSubgroup& b) {
        return a.modulus_ == b.modulus_ && a.lattice_ == b.lattice_;
    }

  private:
    ModSubgroup(BigInt modulus, IntMatrix lattice);
    BigInt modulus_;
    IntMatrix lattice_;
    std::vector<BigInt> divisors_;
};

/// {e in (Z/q)^cols : A e = 0 mod q}. The modulus must be a prime power.
ModSubgroup kernel_mod(const IntMatrix& A, const BigInt& modulus);
/// As kernel_mod, for any modulus >= 1.
ModSubgroup kernel_mod_any(const IntMatrix& A, const BigInt& modulus);

/// {c : c . e = 0 mod q for every e in S}.
ModSubgroup orthogonal_complement_mod(const ModSubgroup& S);

}  // namespace thumbtack

#endif  // THUMBTACK_ZLATTICE_HPP

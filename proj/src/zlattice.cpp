#include "thumbtack/zlattice.hpp"

namespace thumbtack {

ModSubgroup::ModSubgroup(BigInt modulus, IntMatrix lattice) : modulus_(std::move(modulus)), lattice_(std::move(lattice)) {
    auto snf = smith_normal_form<BigInt>(lattice_);
    divisors_ = snf.diagonal();
    for (const auto& d : divisors_)
        if (d == 0 || modulus_ % d != 0)
            throw VerificationError("subgroup: elementary divisor does not divide the modulus", to_string());
}

ModSubgroup ModSubgroup::from_generators(const IntMatrix& G, const BigInt& modulus, Eigen::Index rank) {
    if (modulus < 1) throw std::invalid_argument("subgroup: modulus must be positive");
    if (G.rows() > 0 && G.cols() != rank) throw std::invalid_argument("subgroup: generator width differs from rank");
    IntMatrix stacked(G.rows() + rank, rank);
    if (G.rows() > 0) stacked.topRows(G.rows()) = G;
    stacked.bottomRows(rank) = IntMatrix::Identity(rank, rank) * modulus;
    return ModSubgroup(modulus, hermite_normal_form<BigInt>(stacked));
}

ModSubgroup ModSubgroup::trivial(const BigInt& modulus, Eigen::Index rank) {
    return from_generators(IntMatrix(0, rank), modulus, rank);
}

ModSubgroup ModSubgroup::full(const BigInt& modulus, Eigen::Index rank) {
    return from_generators(IntMatrix::Identity(rank, rank), modulus, rank);
}

IntMatrix ModSubgroup::generators() const {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < lattice_.rows(); ++i)
        if (lattice_(i, i) != modulus_) keep.push_back(i);
    IntMatrix out(static_cast<Eigen::Index>(keep.size()), rank());
    for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = lattice_.row(keep[k]);
    return out;
}

BigInt ModSubgroup::order() const {
    BigInt out = 1;
    for (const auto& d : divisors_) out *= modulus_ / d;
    return out;
}

BigInt ModSubgroup::index() const {
    BigInt out = 1;
    for (const auto& d : divisors_) out *= d;
    return out;
}

bool ModSubgroup::is_trivial() const { return order() == 1; }
bool ModSubgroup::is_full() const { return index() == 1; }

bool ModSubgroup::contains(const IntVector& v) const {
    if (v.size() != rank()) throw std::invalid_argument("subgroup: vector length differs from rank");
    IntVector w = v;
    for (Eigen::Index i = 0; i < rank(); ++i) {
        if (w(i) % lattice_(i, i) != 0) return false;
        BigInt q = w(i) / lattice_(i, i);
        if (q != 0) w -= q * lattice_.row(i).transpose();
    }
    return true;
}

ModSubgroup ModSubgroup::reduce(const BigInt& new_modulus) const {
    if (new_modulus < 1 || modulus_ % new_modulus != 0)
        throw std::invalid_argument("subgroup: new modulus must divide the old one");
    return from_generators(lattice_, new_modulus, rank());
}

std::vector<IntVector> ModSubgroup::elements() const {
    // Mixed-radix walk over the triangular basis: coefficient k_i < q / d_ii.
    std::vector<IntVector> out;
    const Eigen::Index r = rank();
    std::vector<BigInt> bounds(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) bounds[static_cast<std::size_t>(i)] = modulus_ / lattice_(i, i);
    if (order() > 1000000) throw SizeLimitError("subgroup too large to enumerate");
    std::vector<BigInt> k(static_cast<std::size_t>(r), BigInt(0));
    while (true) {
        IntVector v = IntVector::Zero(r);
        for (Eigen::Index i = 0; i < r; ++i) v += k[static_cast<std::size_t>(i)] * lattice_.row(i).transpose();
        for (Eigen::Index i = 0; i < r; ++i) v(i) = mod_floor(v(i), modulus_);
        out.push_back(std::move(v));
        Eigen::Index pos = r - 1;
        while (pos >= 0) {
            auto& c = k[static_cast<std::size_t>(pos)];
            if (++c < bounds[static_cast<std::size_t>(pos)]) break;
            c = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

std::string ModSubgroup::to_string() const {
    std::ostringstream os;
    os << "mod " << modulus_ << " basis " << lattice_detail::matrix_string(lattice_);
    return os.str();
}

ModSubgroup kernel_mod_any(const IntMatrix& A, const BigInt& modulus) {
    const Eigen::Index r = A.cols();
    if (A.rows() == 0) return ModSubgroup::full(modulus, r);
    auto snf = smith_normal_form<BigInt>(A);
    // A e = 0 iff d_i (V^-1 e)_i = 0 mod q for every i.
    IntMatrix gens = snf.V;
    for (Eigen::Index i = 0; i < r; ++i) {
        BigInt d = i < snf.rank ? snf.D(i, i) : BigInt(0);
        gens.col(i) *= modulus / gcd(d, modulus);
    }
    auto out = ModSubgroup::from_generators(IntMatrix(gens.transpose()), modulus, r);
    for (Eigen::Index i = 0; i < out.lattice().rows(); ++i) {
        IntVector image = A * out.lattice().row(i).transpose();
        for (const auto& x : image)
            if (x % modulus != 0) throw VerificationError("kernel_mod: basis vector not in kernel", out.to_string());
    }
    return out;
}

ModSubgroup kernel_mod(const IntMatrix& A, const BigInt& modulus) {
    if (modulus < 2 || factor_integer(modulus).size() != 1) throw std::invalid_argument("kernel_mod: modulus must be a prime power");
    return kernel_mod_any(A, modulus);
}

ModSubgroup orthogonal_complement_mod(const ModSubgroup& S) {
    auto out = kernel_mod_any(S.lattice(), S.modulus());
    BigInt total = ipow(S.modulus(), static_cast<std::uint64_t>(S.rank()));
    if (S.order() * out.order() != total)
        throw VerificationError("complement: |S| |S^perp| != q^r", S.to_string());
    return out;
}

}  // namespace thumbtack

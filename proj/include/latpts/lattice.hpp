#pragma once

// Full-rank lattices, sublattices given by integer coefficient matrices, their
// residue classes, and the left Hermite normal form used to align witnesses.

#include "latpts/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace latpts {

/// Lattice A*Z^d; the columns of `basis()` are the basis vectors.
class Lattice {
  public:
    explicit Lattice(RationalMatrix basis) : basis_(std::move(basis)) {
        if (!basis_.square())
            throw DimensionError("lattice basis must be square");
        Rational det = latpts::determinant(basis_);
        if (det == 0)
            throw RankError("lattice basis is singular");
        determinant_ = abs(det);
    }

    static Lattice standard(std::size_t d) { return Lattice(RationalMatrix::identity(d)); }

    std::size_t dim() const { return basis_.rows(); }
    const RationalMatrix &basis() const { return basis_; }
    const Rational &determinant() const { return determinant_; }

    /// Ambient point B*y for basis coordinates y.
    RationalVector point(const IntegerVector &coords) const { return basis_ * to_rational(coords); }

    /// Basis coordinates of v, or nullopt when v is not a lattice vector.
    std::optional<IntegerVector> coordinates(const RationalVector &v) const {
        if (v.size() != dim())
            throw DimensionError("vector dimension does not match lattice");
        RationalVector x = inverse(basis_) * v;
        IntegerVector out;
        out.reserve(x.size());
        for (const auto &xi : x) {
            if (!is_integer(xi))
                return std::nullopt;
            out.push_back(xi.get_num());
        }
        return out;
    }

    bool contains(const RationalVector &v) const { return coordinates(v).has_value(); }

    friend bool operator==(const Lattice &a, const Lattice &b) { return a.basis_ == b.basis_; }

  private:
    RationalMatrix basis_;
    Rational determinant_;
};

inline Rational determinant(const Lattice &lat) { return lat.determinant(); }

inline bool lattice_membership(const Lattice &lat, const RationalVector &v) { return lat.contains(v); }

struct HermiteForm {
    IntegerMatrix u;  // unimodular
    IntegerMatrix h;  // u * z, upper triangular, positive diagonal
};

/// Left Hermite normal form of a nonsingular integer matrix: h = u*z is upper
/// triangular with positive diagonal and entries above each pivot reduced into
/// [0, pivot).
inline HermiteForm hnf_left(const IntegerMatrix &z) {
    if (!z.square())
        throw DimensionError("hnf_left requires a square matrix");
    const std::size_t n = z.rows();
    IntegerMatrix h = z;
    IntegerMatrix u = IntegerMatrix::identity(n);
    auto axpy_row = [&](std::size_t dst, std::size_t src, const Integer &q) {
        for (std::size_t j = 0; j < n; ++j) {
            h(dst, j) -= q * h(src, j);
            u(dst, j) -= q * u(src, j);
        }
    };
    for (std::size_t c = 0; c < n; ++c) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t i = c; i < n; ++i)
                if (h(i, c) != 0 && (best == n || abs(h(i, c)) < abs(h(best, c))))
                    best = i;
            if (best == n)
                throw RankError("hnf_left: matrix is singular");
            if (best != c) {
                h.swap_rows(c, best);
                u.swap_rows(c, best);
            }
            bool done = true;
            for (std::size_t i = c + 1; i < n; ++i) {
                if (h(i, c) == 0)
                    continue;
                axpy_row(i, c, floor_div(h(i, c), h(c, c)));
                done = done && h(i, c) == 0;
            }
            if (done)
                break;
        }
        if (h(c, c) < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                h(c, j) = -h(c, j);
                u(c, j) = -u(c, j);
            }
        }
        for (std::size_t i = 0; i < c; ++i)
            if (h(i, c) != 0)
                axpy_row(i, c, floor_div(h(i, c), h(c, c)));
    }
    return {std::move(u), std::move(h)};
}

/// Unimodular U with U*z^i in lin{e^1..e^i} for every i. The z^i must be
/// linearly independent integer vectors.
inline IntegerMatrix align_witnesses(const std::vector<IntegerVector> &witnesses) {
    if (witnesses.empty())
        throw DimensionError("align_witnesses: no vectors");
    const std::size_t d = witnesses.size();
    for (const auto &w : witnesses)
        if (w.size() != d)
            throw DimensionError("align_witnesses: need d vectors of dimension d");
    try {
        return hnf_left(IntegerMatrix::from_columns(witnesses)).u;
    } catch (const RankError &) {
        throw RankError("align_witnesses: vectors are linearly dependent");
    }
}

/// Inverse of a unimodular integer matrix, as an integer matrix.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix &u) {
    return to_integer(inverse(to_rational(u)));
}

/// Full-rank sublattice of `parent`; the columns of `coeff` are its basis
/// vectors written in parent coordinates.
class Sublattice {
  public:
    Sublattice(Lattice parent, IntegerMatrix coeff) : parent_(std::move(parent)), coeff_(std::move(coeff)) {
        if (!coeff_.square() || coeff_.rows() != parent_.dim())
            throw DimensionError("sublattice coefficient matrix has wrong shape");
        Integer det = determinant(coeff_);
        if (det == 0)
            throw RankError("sublattice coefficient matrix is singular");
        index_ = abs(det);
        // coeff*Z^d = L*Z^d with L lower triangular, L = (U*coeff^T)^T.
        lower_ = hnf_left(coeff_.transpose()).h.transpose();
    }

    const Lattice &parent() const { return parent_; }
    const IntegerMatrix &coeff() const { return coeff_; }
    const Integer &index() const { return index_; }

    /// The sublattice as a lattice in its own right (basis = parent basis * coeff).
    Lattice as_lattice() const { return Lattice(parent_.basis() * to_rational(coeff_)); }

    /// Canonical representative of a's coset: the unique r = a mod coeff*Z^d
    /// with 0 <= r_i < L_ii.
    IntegerVector reduce(IntegerVector a) const {
        check_dim(a);
        const std::size_t d = a.size();
        for (std::size_t j = 0; j < d; ++j) {
            Integer q = floor_div(a[j], lower_(j, j));
            if (q == 0)
                continue;
            for (std::size_t i = j; i < d; ++i)
                a[i] -= q * lower_(i, j);
        }
        return a;
    }

    /// One vector from each residue class, as mixed-radix digits under the
    /// diagonal of the triangular form. Lexicographic order.
    std::vector<IntegerVector> representatives() const {
        const std::size_t d = coeff_.rows();
        std::vector<IntegerVector> reps;
        IntegerVector digit(d, Integer(0));
        for (;;) {
            reps.push_back(digit);
            std::size_t k = d;
            while (k > 0) {
                --k;
                ++digit[k];
                if (digit[k] < lower_(k, k))
                    break;
                digit[k] = 0;
                if (k == 0)
                    return reps;
            }
        }
    }

    /// a - b in coeff*Z^d (a, b in parent coordinates).
    bool same_residue(const IntegerVector &a, const IntegerVector &b) const {
        check_dim(a);
        check_dim(b);
        RationalVector diff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            diff[i] = Rational(a[i] - b[i]);
        RationalVector x = inverse(to_rational(coeff_)) * diff;
        for (const auto &xi : x)
            if (!is_integer(xi))
                return false;
        return true;
    }

  private:
    void check_dim(const IntegerVector &v) const {
        if (v.size() != coeff_.rows())
            throw DimensionError("vector dimension does not match sublattice");
    }

    Lattice parent_;
    IntegerMatrix coeff_;
    Integer index_;
    IntegerMatrix lower_;
};

inline Integer sublattice_index(const Sublattice &s) { return s.index(); }
inline std::vector<IntegerVector> residue_representatives(const Sublattice &s) { return s.representatives(); }
inline bool same_residue(const Sublattice &s, const IntegerVector &a, const IntegerVector &b) {
    return s.same_residue(a, b);
}

}  // namespace latpts

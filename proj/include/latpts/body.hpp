#pragma once

// 0-symmetric convex bodies with an exact gauge.

#include "latpts/gauge.hpp"
#include "latpts/matrix.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <variant>

namespace latpts {

/// {x : |x_i| <= w_i}
struct Box {
    RationalVector halfwidths;
};

/// {x : |<a_i, x>| <= 1 for every row a_i}
struct HPolytope {
    RationalMatrix normals;
};

/// {x : x^T Q x <= 1}
struct Ellipsoid {
    RationalMatrix gram;
};

namespace detail {
struct SlicePlan;
struct SliceMemo {
    std::once_flag once;
    std::shared_ptr<const SlicePlan> plan;
};
}  // namespace detail

class SymmetricBody {
  public:
    using Shape = std::variant<Box, HPolytope, Ellipsoid>;

    static SymmetricBody box(RationalVector halfwidths) {
        if (halfwidths.empty())
            throw DimensionError("box dimension must be positive");
        for (const auto &w : halfwidths)
            if (w <= 0)
                throw InvariantError("box halfwidths must be positive");
        std::size_t d = halfwidths.size();
        return SymmetricBody(d, Box{std::move(halfwidths)});
    }

    static SymmetricBody hpolytope(RationalMatrix normals) {
        const std::size_t d = normals.cols();
        for (std::size_t i = 0; i < normals.rows(); ++i) {
            bool zero = true;
            for (std::size_t j = 0; j < d && zero; ++j)
                zero = normals(i, j) == 0;
            if (zero)
                throw InvariantError("hpolytope has a zero normal row");
        }
        if (rank(normals) != d)
            throw InvariantError("hpolytope normals must have rank d (body unbounded)");
        return SymmetricBody(d, HPolytope{std::move(normals)});
    }

    static SymmetricBody ellipsoid(RationalMatrix gram) {
        if (!gram.square())
            throw DimensionError("ellipsoid gram matrix must be square");
        const std::size_t d = gram.rows();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (gram(i, j) != gram(j, i))
                    throw InvariantError("ellipsoid gram matrix must be symmetric");
        for (std::size_t k = 1; k <= d; ++k) {
            RationalMatrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    minor(i, j) = gram(i, j);
            if (determinant(minor) <= 0)
                throw InvariantError("ellipsoid gram matrix must be positive definite");
        }
        return SymmetricBody(d, Ellipsoid{std::move(gram)});
    }

    std::size_t dim() const { return dim_; }
    const Shape &shape() const { return shape_; }

    bool is_box() const { return std::holds_alternative<Box>(shape_); }
    bool is_hpolytope() const { return std::holds_alternative<HPolytope>(shape_); }
    bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(shape_); }

    std::string kind_name() const {
        return is_box() ? "box" : (is_hpolytope() ? "hpolytope" : "ellipsoid");
    }

    detail::SliceMemo &slice_memo() const { return *memo_; }

    friend bool operator==(const SymmetricBody &a, const SymmetricBody &b) {
        if (a.dim_ != b.dim_ || a.shape_.index() != b.shape_.index())
            return false;
        if (a.is_box())
            return std::get<Box>(a.shape_).halfwidths == std::get<Box>(b.shape_).halfwidths;
        if (a.is_hpolytope())
            return std::get<HPolytope>(a.shape_).normals == std::get<HPolytope>(b.shape_).normals;
        return std::get<Ellipsoid>(a.shape_).gram == std::get<Ellipsoid>(b.shape_).gram;
    }

  private:
    SymmetricBody(std::size_t d, Shape s)
        : dim_(d), shape_(std::move(s)), memo_(std::make_shared<detail::SliceMemo>()) {}

    std::size_t dim_;
    Shape shape_;
    // Lazily built slicing data (Fourier-Motzkin projections / Schur
    // complements), shared by copies of the same body.
    std::shared_ptr<detail::SliceMemo> memo_;
};

inline void check_dim(const SymmetricBody &k, std::size_t n) {
    if (n != k.dim())
        throw DimensionError("vector dimension " + std::to_string(n) + " does not match body dimension " +
                             std::to_string(k.dim()));
}

inline GaugeValue gauge(const SymmetricBody &k, const RationalVector &x) {
    check_dim(k, x.size());
    const std::size_t d = k.dim();
    if (const auto *b = std::get_if<Box>(&k.shape())) {
        Rational g(0);
        for (std::size_t i = 0; i < d; ++i) {
            Rational v = abs(x[i]) / b->halfwidths[i];
            if (v > g)
                g = v;
        }
        return GaugeValue::rational(g);
    }
    if (const auto *p = std::get_if<HPolytope>(&k.shape())) {
        Rational g(0);
        for (std::size_t i = 0; i < p->normals.rows(); ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < d; ++j)
                s += p->normals(i, j) * x[j];
            s = abs(s);
            if (s > g)
                g = s;
        }
        return GaugeValue::rational(g);
    }
    const auto &q = std::get<Ellipsoid>(k.shape()).gram;
    Rational s(0);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == 0)
            continue;
        Rational row(0);
        for (std::size_t j = 0; j < d; ++j)
            row += q(i, j) * x[j];
        s += x[i] * row;
    }
    return GaugeValue::sqrt_of(s);
}

inline GaugeValue gauge(const SymmetricBody &k, const IntegerVector &x) { return gauge(k, to_rational(x)); }

/// x in lambda*K (or in its interior when strict).
inline bool contains(const SymmetricBody &k, const GaugeValue &lambda, const RationalVector &x, bool strict) {
    GaugeValue g = gauge(k, x);
    return strict ? g < lambda : g <= lambda;
}

/// mu * K.
inline SymmetricBody scale(const SymmetricBody &k, const Rational &mu) {
    if (mu <= 0)
        throw InvariantError("scale factor must be positive");
    if (const auto *b = std::get_if<Box>(&k.shape())) {
        RationalVector w = b->halfwidths;
        for (auto &wi : w)
            wi *= mu;
        return SymmetricBody::box(std::move(w));
    }
    if (const auto *p = std::get_if<HPolytope>(&k.shape())) {
        RationalMatrix a = p->normals;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(i, j) /= mu;
        return SymmetricBody::hpolytope(std::move(a));
    }
    RationalMatrix q = std::get<Ellipsoid>(k.shape()).gram;
    Rational mu2 = mu * mu;
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            q(i, j) /= mu2;
    return SymmetricBody::ellipsoid(std::move(q));
}

/// A^{-1} K = {y : A y in K}, so gauge(result, y) = gauge(K, A y). Boxes stay
/// boxes under monomial A and become H-polytopes otherwise.
inline SymmetricBody preimage_body(const SymmetricBody &k, const RationalMatrix &a) {
    if (!a.square() || a.rows() != k.dim())
        throw DimensionError("preimage_body: matrix shape does not match body");
    if (determinant(a) == 0)
        throw RankError("preimage_body: matrix is singular");
    const std::size_t d = k.dim();
    if (const auto *b = std::get_if<Box>(&k.shape())) {
        bool monomial = true;
        RationalVector w(d);
        std::vector<bool> used(d, false);
        for (std::size_t i = 0; i < d && monomial; ++i) {
            std::size_t nz = 0, col = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (a(i, j) != 0) {
                    ++nz;
                    col = j;
                }
            if (nz != 1 || used[col]) {
                monomial = false;
                break;
            }
            used[col] = true;
            w[col] = b->halfwidths[i] / abs(a(i, col));
        }
        if (monomial)
            return SymmetricBody::box(std::move(w));
        RationalMatrix n(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                n(i, j) = a(i, j) / b->halfwidths[i];
        return SymmetricBody::hpolytope(std::move(n));
    }
    if (const auto *p = std::get_if<HPolytope>(&k.shape()))
        return SymmetricBody::hpolytope(p->normals * a);
    const auto &q = std::get<Ellipsoid>(k.shape()).gram;
    return SymmetricBody::ellipsoid(a.transpose() * q * a);
}

/// Exact volume of a box, prod 2 w_i.
inline Rational volume_box(const SymmetricBody &k) {
    const auto *b = std::get_if<Box>(&k.shape());
    if (!b)
        throw InvariantError("volume_box requires a box");
    Rational v(1);
    for (const auto &w : b->halfwidths)
        v *= 2 * w;
    return v;
}

/// A rational rho > 0 with rho*[-1,1]^d contained in K.
inline Rational inradius_lower_bound(const SymmetricBody &k) {
    const std::size_t d = k.dim();
    if (const auto *b = std::get_if<Box>(&k.shape())) {
        Rational m = b->halfwidths[0];
        for (const auto &w : b->halfwidths)
            if (w < m)
                m = w;
        return m;
    }
    if (const auto *p = std::get_if<HPolytope>(&k.shape())) {
        Rational worst(0);
        for (std::size_t i = 0; i < p->normals.rows(); ++i) {
            Rational l1(0);
            for (std::size_t j = 0; j < d; ++j)
                l1 += abs(p->normals(i, j));
            if (l1 > worst)
                worst = l1;
        }
        return 1 / worst;
    }
    // Largest x^T Q x over the cube's vertices, then a rational upper bound on
    // its square root.
    const auto &q = std::get<Ellipsoid>(k.shape()).gram;
    Rational worst(0);
    for (unsigned long mask = 0; mask < (1ul << (d - 1)); ++mask) {
        RationalVector v(d, Rational(1));
        for (std::size_t i = 1; i < d; ++i)
            if (mask & (1ul << (i - 1)))
                v[i] = -1;
        Rational s(0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                s += v[i] * q(i, j) * v[j];
        if (s > worst)
            worst = s;
    }
    const unsigned bits = 20;
    Integer scaled = ceil(worst * Rational(pow2(2 * bits)));
    Integer root = isqrt(scaled);
    if (root * root < scaled)
        ++root;
    return make_rational(pow2(bits), root);
}

}  // namespace latpts

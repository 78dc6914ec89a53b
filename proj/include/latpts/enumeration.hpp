#pragma once

// Exact enumeration and counting of lattice points in mu*K.

#include "latpts/lattice.hpp"
#include "latpts/slicing.hpp"

namespace latpts {

/// Lattice points as integer coordinates with respect to `lattice`'s basis, in
/// lexicographic order.
struct PointSet {
    std::size_t dim = 0;
    std::vector<IntegerVector> points;
    Lattice lattice;

    std::size_t size() const { return points.size(); }
};

namespace detail {

inline bool is_identity(const RationalMatrix &m) { return m == RationalMatrix::identity(m.rows()); }

/// The body in basis coordinates: gauge(result, y) = gauge(K, B y).
inline SymmetricBody body_in_coordinates(const SymmetricBody &k, const Lattice &lat) {
    if (lat.dim() != k.dim())
        throw DimensionError("lattice and body dimensions differ");
    if (is_identity(lat.basis()))
        return k;
    return preimage_body(k, lat.basis());
}

/// Depth-first walk over integer prefixes of points of mu*K; `leaf` receives
/// the full (d-1)-prefix and the integer range of the last coordinate.
template <class Leaf>
void walk(const SymmetricBody &k, const GaugeValue &mu, bool strict, IntegerVector &prefix, Leaf &&leaf) {
    IntegerRange range = integer_slice(k, prefix, mu, strict);
    if (range.empty())
        return;
    if (prefix.size() + 1 == k.dim()) {
        leaf(prefix, range);
        return;
    }
    prefix.emplace_back();
    for (Integer t = range.lo; t <= range.hi; ++t) {
        prefix.back() = t;
        walk(k, mu, strict, prefix, leaf);
    }
    prefix.pop_back();
}

/// Count of Z^d points in mu*K for a body already in lattice coordinates.
inline Integer count_standard(const SymmetricBody &k, const GaugeValue &mu, bool strict) {
    IntegerVector prefix;
    if (k.is_box()) {
        // Slices of a box do not depend on the prefix.
        Integer total = 1;
        for (std::size_t i = 0; i < k.dim(); ++i) {
            IntegerRange r = integer_slice(k, IntegerVector(i, Integer(0)), mu, strict);
            total *= r.size();
        }
        return total;
    }
    Integer total = 0;
    walk(k, mu, strict, prefix, [&](const IntegerVector &, const IntegerRange &r) { total += r.size(); });
    return total;
}

inline std::vector<IntegerVector> enumerate_standard(const SymmetricBody &k, const GaugeValue &mu, bool strict) {
    std::vector<IntegerVector> out;
    IntegerVector prefix;
    walk(k, mu, strict, prefix, [&](const IntegerVector &p, const IntegerRange &r) {
        IntegerVector v = p;
        v.emplace_back();
        for (Integer t = r.lo; t <= r.hi; ++t) {
            v.back() = t;
            out.push_back(v);
        }
    });
    return out;
}

}  // namespace detail

/// All v in lat with gauge(v) <= mu (< mu when strict).
inline PointSet enumerate(const SymmetricBody &k, const Lattice &lat, const GaugeValue &mu, bool strict) {
    SymmetricBody y = detail::body_in_coordinates(k, lat);
    return PointSet{k.dim(), detail::enumerate_standard(y, mu, strict), lat};
}

/// |enumerate(k, lat, mu, strict)| without materializing the points.
inline Integer count(const SymmetricBody &k, const Lattice &lat, const GaugeValue &mu, bool strict) {
    return detail::count_standard(detail::body_in_coordinates(k, lat), mu, strict);
}

inline Integer count(const SymmetricBody &k, const Lattice &lat) {
    return count(k, lat, GaugeValue::rational(1), false);
}

/// Exhaustive scan of basis coordinates in [-box_radius, box_radius]^d with a
/// gauge test per point. Shares no code with the sliced enumeration.
inline Integer count_oracle(const SymmetricBody &k, const Lattice &lat, const GaugeValue &mu, bool strict,
                            const Integer &box_radius) {
    const std::size_t d = k.dim();
    if (lat.dim() != d)
        throw DimensionError("lattice and body dimensions differ");
    IntegerVector y(d, Integer(-box_radius));
    Integer total = 0;
    if (box_radius < 0)
        return total;
    for (;;) {
        if (contains(k, mu, lat.point(y), strict))
            ++total;
        std::size_t i = 0;
        while (i < d && y[i] == box_radius) {
            y[i] = -box_radius;
            ++i;
        }
        if (i == d)
            return total;
        ++y[i];
    }
}

/// An integer R such that every lattice point of mu*K has basis coordinates in
/// [-R, R].
inline Integer coordinate_radius(const SymmetricBody &k, const Lattice &lat, const GaugeValue &mu) {
    SymmetricBody y = detail::body_in_coordinates(k, lat);
    const std::size_t d = k.dim();
    Integer radius = 0;
    for (std::size_t i = 0; i < d; ++i) {
        RationalMatrix swap = RationalMatrix::identity(d);
        if (i != 0) {
            swap(0, 0) = 0;
            swap(i, i) = 0;
            swap(0, i) = 1;
            swap(i, 0) = 1;
        }
        auto extent = coordinate_bounds(preimage_body(y, swap), {});
        Rational e = extent->hi > -extent->lo ? extent->hi : Rational(-extent->lo);
        QuadraticSurd m = mu.as_surd();
        Integer r = QuadraticSurd{m.a * e, m.b * e, m.r}.ceil();
        if (r > radius)
            radius = r;
    }
    return radius;
}

/// r^d * #(K cap r*lat) * det(lat), converging to vol(K) as r -> 0.
inline Rational volume_estimate(const SymmetricBody &k, const Lattice &lat, const Rational &r) {
    if (r <= 0)
        throw InvariantError("volume_estimate: resolution must be positive");
    RationalMatrix b = lat.basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            b(i, j) *= r;
    Integer n = count(k, Lattice(std::move(b)));
    return pow(r, static_cast<unsigned>(k.dim())) * Rational(n) * lat.determinant();
}

}  // namespace latpts

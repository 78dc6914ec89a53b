#pragma once

// Independent oracles and random inputs shared by the unit tests.

#include "latpts/harness.hpp"

namespace latpts::testing {

inline Rational R(long p, long q = 1) { return make_rational(p, q); }

inline RationalVector rvec(std::initializer_list<Rational> xs) { return RationalVector(xs); }

inline IntegerVector ivec(std::initializer_list<long> xs) {
    IntegerVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline RationalMatrix rmat(std::initializer_list<std::initializer_list<Rational>> rows) {
    return RationalMatrix(rows);
}

/// Laplace expansion along the first row.
inline Rational cofactor_determinant(const RationalMatrix &m) {
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0);
    Rational det(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0)
            continue;
        RationalMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c)
                    minor(i - 1, k++) = m(i, j);
        Rational term = m(0, c) * cofactor_determinant(minor);
        det += (c % 2 == 0) ? term : Rational(-term);
    }
    return det;
}

inline Rational random_rational(SplitMix64 &rng, long range) {
    return make_rational(rng.uniform(-range, range), rng.uniform(1, range));
}

inline RationalMatrix random_matrix(SplitMix64 &rng, std::size_t rows, std::size_t cols, long range) {
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = random_rational(rng, range);
    return m;
}

inline RationalVector random_vector(SplitMix64 &rng, std::size_t d, long range) {
    RationalVector v(d);
    for (auto &x : v)
        x = random_rational(rng, range);
    return v;
}

inline IntegerVector random_integer_vector(SplitMix64 &rng, std::size_t d, long range) {
    IntegerVector v(d);
    for (auto &x : v)
        x = rng.uniform(-range, range);
    return v;
}

/// Unimodular matrix from random elementary row operations.
inline IntegerMatrix random_unimodular(SplitMix64 &rng, std::size_t d, int steps) {
    IntegerMatrix u = IntegerMatrix::identity(d);
    if (d == 1)
        return u;
    for (int s = 0; s < steps; ++s) {
        std::size_t i = rng.uniform(0, d - 1);
        std::size_t j = rng.uniform(0, d - 2);
        if (j >= i)
            ++j;
        Integer f = rng.uniform(-2, 2);
        for (std::size_t c = 0; c < d; ++c)
            u(i, c) += f * u(j, c);
    }
    return u;
}

/// Specs cycling through every body and lattice kind.
inline std::vector<InstanceSpec> mixed_specs(std::size_t n, std::size_t dim, long range, std::uint64_t seed0) {
    std::vector<InstanceSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
        specs.push_back(InstanceSpec{seed0 + i, dim, static_cast<BodyKind>(i % 3), range,
                                     static_cast<LatticeKind>((i / 3) % 3)});
    return specs;
}

/// Every point of the cube [-radius, radius]^d in basis coordinates with
/// gauge <= mu, by direct scan.
inline std::vector<IntegerVector> scan_points(const SymmetricBody &k, const Lattice &lat, const GaugeValue &mu,
                                              long radius) {
    const std::size_t d = k.dim();
    std::vector<IntegerVector> out;
    IntegerVector y(d, Integer(-radius));
    for (;;) {
        if (gauge(k, lat.point(y)) <= mu)
            out.push_back(y);
        std::size_t i = 0;
        while (i < d && y[i] == radius) {
            y[i] = -radius;
            ++i;
        }
        if (i == d)
            return out;
        ++y[i];
    }
}

}  // namespace latpts::testing

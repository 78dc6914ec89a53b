#pragma once

// Successive minima with witnesses, and the unimodular canonicalization that
// puts the i-th witness into lin{e^1, ..., e^i}.

#include "latpts/enumeration.hpp"

#include <algorithm>
#include <tuple>

namespace latpts {

struct MinimaResult {
    std::vector<GaugeValue> minima;
    std::vector<IntegerVector> witnesses;  // basis coordinates

    std::size_t dim() const { return minima.size(); }

    friend bool operator==(const MinimaResult &, const MinimaResult &) = default;
};

namespace detail {

/// Incremental row echelon basis for independence tests.
class EchelonBasis {
  public:
    explicit EchelonBasis(std::size_t d) : d_(d) {}

    std::size_t rank() const { return rows_.size(); }

    /// Adds v if it is independent of the current span; returns whether it was.
    bool insert(const IntegerVector &v) {
        RationalVector r = to_rational(v);
        reduce(r);
        std::size_t p = 0;
        while (p < d_ && r[p] == 0)
            ++p;
        if (p == d_)
            return false;
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

    bool in_span(const IntegerVector &v) const {
        RationalVector r = to_rational(v);
        reduce(r);
        return std::all_of(r.begin(), r.end(), [](const Rational &x) { return x == 0; });
    }

  private:
    void reduce(RationalVector &r) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const std::size_t p = pivots_[k];
            if (r[p] == 0)
                continue;
            Rational f = r[p] / rows_[k][p];
            for (std::size_t j = 0; j < d_; ++j)
                r[j] -= f * rows_[k][j];
        }
    }

    std::size_t d_;
    std::vector<RationalVector> rows_;
    std::vector<std::size_t> pivots_;
};

inline bool sign_canonical(const IntegerVector &v) {
    for (const auto &x : v)
        if (x != 0)
            return x > 0;
    return false;  // zero vector
}

struct Candidate {
    GaugeValue gauge;
    std::size_t last_nonzero;
    Integer norm2;
    IntegerVector coords;
};

// Ties in gauge: prefer vectors supported on fewer leading coordinates, then
// shorter, then lexicographically smaller.
inline bool candidate_less(const Candidate &a, const Candidate &b) {
    if (a.gauge != b.gauge)
        return a.gauge < b.gauge;
    return std::tie(a.last_nonzero, a.norm2, a.coords) < std::tie(b.last_nonzero, b.norm2, b.coords);
}

// Dilations are halved from 1 until the point count drops to this size before
// any points are materialized.
inline constexpr long kMaterializeLimit = 4096;

}  // namespace detail

/// lambda_1 <= ... <= lambda_d with linearly independent witnesses z^i,
/// gauge(z^i) = lambda_i. Collects all lattice points of mu*K for a dyadic mu
/// large enough to hold d independent points, then sweeps them in gauge order
/// keeping each point independent of those already kept.
inline MinimaResult successive_minima(const SymmetricBody &k, const Lattice &lat) {
    const std::size_t d = k.dim();
    SymmetricBody y = detail::body_in_coordinates(k, lat);
    Rational mu(1);
    while (detail::count_standard(y, GaugeValue::rational(mu), false) > detail::kMaterializeLimit)
        mu /= 2;
    for (;;) {
        std::vector<detail::Candidate> cands;
        for (auto &p : detail::enumerate_standard(y, GaugeValue::rational(mu), false)) {
            if (!detail::sign_canonical(p))
                continue;
            detail::Candidate c;
            c.gauge = gauge(y, p);
            c.last_nonzero = 0;
            c.norm2 = 0;
            for (std::size_t i = 0; i < d; ++i)
                if (p[i] != 0) {
                    c.last_nonzero = i;
                    c.norm2 += p[i] * p[i];
                }
            c.coords = std::move(p);
            cands.push_back(std::move(c));
        }
        std::sort(cands.begin(), cands.end(), detail::candidate_less);
        detail::EchelonBasis basis(d);
        MinimaResult res;
        for (const auto &c : cands) {
            if (!basis.insert(c.coords))
                continue;
            res.minima.push_back(c.gauge);
            res.witnesses.push_back(c.coords);
            if (res.minima.size() == d)
                return res;
        }
        mu *= 2;
    }
}

struct CanonicalInstance {
    SymmetricBody body;          // over Z^d
    MinimaResult minima;         // witness i lies in lin{e^1..e^i}
    IntegerMatrix unimodular;    // U: lattice coordinates -> canonical coordinates
};

/// Maps (K, Lambda) to (U B^{-1} K, Z^d) with U aligning the witnesses.
inline CanonicalInstance canonicalize(const SymmetricBody &k, const Lattice &lat, const MinimaResult &minima) {
    IntegerMatrix u = align_witnesses(minima.witnesses);
    SymmetricBody y = detail::body_in_coordinates(k, lat);
    SymmetricBody body = preimage_body(y, to_rational(unimodular_inverse(u)));
    MinimaResult mapped;
    mapped.minima = minima.minima;
    for (const auto &z : minima.witnesses)
        mapped.witnesses.push_back(u * z);
    return CanonicalInstance{std::move(body), std::move(mapped), std::move(u)};
}

inline CanonicalInstance canonicalize(const SymmetricBody &k, const Lattice &lat) {
    return canonicalize(k, lat, successive_minima(k, lat));
}

/// Brute-force lambda_1: minimum gauge over nonzero lattice points of growing
/// coordinate cubes, stopping once the cube provably contains every point of
/// that gauge.
inline GaugeValue first_minimum_oracle(const SymmetricBody &k, const Lattice &lat) {
    const std::size_t d = k.dim();
    for (Integer radius = 1;; radius *= 2) {
        std::optional<GaugeValue> best;
        IntegerVector y(d, Integer(-radius));
        for (;;) {
            bool zero = std::all_of(y.begin(), y.end(), [](const Integer &x) { return x == 0; });
            if (!zero) {
                GaugeValue g = gauge(k, lat.point(y));
                if (!best || g < *best)
                    best = g;
            }
            std::size_t i = 0;
            while (i < d && y[i] == radius) {
                y[i] = -radius;
                ++i;
            }
            if (i == d)
                break;
            ++y[i];
        }
        if (coordinate_radius(k, lat, *best) <= radius)
            return *best;
    }
}

/// Strict enumeration at lambda_i stays inside lin{z^1..z^{i-1}} for every i.
inline bool witnesses_minimal(const SymmetricBody &k, const Lattice &lat, const MinimaResult &m) {
    SymmetricBody y = detail::body_in_coordinates(k, lat);
    detail::EchelonBasis span(k.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (const auto &p : detail::enumerate_standard(y, m.minima[i], true))
            if (!span.in_span(p))
                return false;
        span.insert(m.witnesses[i]);
    }
    return true;
}

}  // namespace latpts

#pragma once

// Per-coordinate slicing of a body: given exact values of x_1..x_j, the range
// of x_{j+1} over the body. Polytopes use Fourier-Motzkin projections onto the
// leading coordinates, ellipsoids use successive Schur complements, boxes are
// closed form. The projections are built once per body and memoized.

#include "latpts/body.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>

namespace latpts {

namespace detail {

/// |<coeffs, x>| <= bound, coefficients scaled to integers.
struct SliceRow {
    IntegerVector coeffs;
    Rational bound;
};

struct SlicePlan {
    std::size_t dim = 0;
    // polytope_levels[k] constrains x_0..x_k (k + 1 leading coordinates).
    std::vector<std::vector<SliceRow>> polytope_levels;
    // schur[k] is the gram matrix of the projection onto x_0..x_k.
    std::vector<RationalMatrix> schur;
};

struct FmRow {
    RationalVector c;  // first nonzero entry is 1
    Rational bound;
    std::uint64_t history;
};

/// Normalizes and inserts a row, keeping only the tightest row per direction.
inline void insert_row(std::map<RationalVector, FmRow> &rows, RationalVector c, Rational bound,
                       std::uint64_t history) {
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == 0)
        ++lead;
    if (lead == c.size())
        return;  // 0 <= bound: vacuous
    Rational s = c[lead];
    for (auto &ci : c)
        ci /= s;
    bound /= abs(s);
    auto it = rows.find(c);
    if (it == rows.end()) {
        RationalVector key = c;
        rows.emplace(std::move(key), FmRow{std::move(c), std::move(bound), history});
        return;
    }
    if (bound < it->second.bound ||
        (bound == it->second.bound && std::popcount(history) < std::popcount(it->second.history))) {
        it->second.bound = std::move(bound);
        it->second.history = history;
    }
}

inline std::vector<SliceRow> to_slice_rows(const std::map<RationalVector, FmRow> &rows) {
    std::vector<SliceRow> out;
    out.reserve(rows.size());
    for (const auto &[key, row] : rows) {
        Integer l = 1;
        for (const auto &ci : row.c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ci.get_den_mpz_t());
        SliceRow sr;
        for (const auto &ci : row.c)
            sr.coeffs.push_back(Rational(ci * l).get_num());
        sr.bound = row.bound * l;
        out.push_back(std::move(sr));
    }
    return out;
}

/// Fourier-Motzkin elimination of x_{d-1}, x_{d-2}, ..., x_1 on the symmetric
/// system |A x| <= 1. Eliminating x_v from |u_i x| <= b_i and |u_j x| <= b_j
/// (both normalized to coefficient 1 in x_v) yields |(u_i - u_j) x| <= b_i + b_j.
/// Rows combined from more than (eliminated + 1) original rows are dropped
/// (Chernikov's rule); such rows are always implied by the others.
inline std::vector<std::vector<SliceRow>> fourier_motzkin_levels(const RationalMatrix &normals) {
    const std::size_t d = normals.cols();
    const std::size_t m = normals.rows();
    const bool track = m <= 64;
    std::map<RationalVector, FmRow> current;
    for (std::size_t i = 0; i < m; ++i)
        insert_row(current, normals.row(i), Rational(1), track ? (std::uint64_t{1} << i) : 0);

    std::vector<std::vector<SliceRow>> levels(d);
    levels[d - 1] = to_slice_rows(current);
    for (std::size_t v = d - 1; v >= 1; --v) {
        const std::size_t eliminated = d - v;
        std::vector<const FmRow *> with_v;
        std::map<RationalVector, FmRow> next;
        for (const auto &[key, row] : current) {
            if (row.c[v] == 0)
                insert_row(next, RationalVector(row.c.begin(), row.c.begin() + v), row.bound, row.history);
            else
                with_v.push_back(&row);
        }
        for (std::size_t i = 0; i < with_v.size(); ++i)
            for (std::size_t j = i + 1; j < with_v.size(); ++j) {
                const FmRow &ri = *with_v[i];
                const FmRow &rj = *with_v[j];
                std::uint64_t hist = ri.history | rj.history;
                if (track && static_cast<std::size_t>(std::popcount(hist)) > eliminated + 1)
                    continue;
                RationalVector c(v);
                for (std::size_t t = 0; t < v; ++t)
                    c[t] = ri.c[t] / ri.c[v] - rj.c[t] / rj.c[v];
                Rational bound = ri.bound / abs(ri.c[v]) + rj.bound / abs(rj.c[v]);
                insert_row(next, std::move(c), std::move(bound), hist);
            }
        current = std::move(next);
        levels[v - 1] = to_slice_rows(current);
    }
    for (std::size_t k = 0; k < d; ++k) {
        if (levels[k].empty())
            throw InvariantError("projection onto leading coordinates is unbounded");
        RationalMatrix a(levels[k].size(), k + 1);
        for (std::size_t i = 0; i < levels[k].size(); ++i)
            for (std::size_t j = 0; j <= k; ++j)
                a(i, j) = Rational(levels[k][i].coeffs[j]);
        if (rank(a) != k + 1)
            throw InvariantError("projection onto leading coordinates is unbounded");
    }
    return levels;
}

inline std::vector<RationalMatrix> schur_levels(const RationalMatrix &gram) {
    const std::size_t d = gram.rows();
    std::vector<RationalMatrix> levels(d);
    levels[d - 1] = gram;
    for (std::size_t k = d - 1; k >= 1; --k) {
        const RationalMatrix &s = levels[k];
        RationalMatrix t(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                t(i, j) = s(i, j) - s(i, k) * s(k, j) / s(k, k);
        levels[k - 1] = std::move(t);
    }
    return levels;
}

inline const SlicePlan &slice_plan(const SymmetricBody &k) {
    SliceMemo &memo = k.slice_memo();
    std::call_once(memo.once, [&] {
        auto plan = std::make_shared<SlicePlan>();
        plan->dim = k.dim();
        if (const auto *p = std::get_if<HPolytope>(&k.shape()))
            plan->polytope_levels = fourier_motzkin_levels(p->normals);
        else if (const auto *e = std::get_if<Ellipsoid>(&k.shape()))
            plan->schur = schur_levels(e->gram);
        memo.plan = std::move(plan);
    });
    return *memo.plan;
}

}  // namespace detail

/// Integer range [lo, hi]; empty when lo > hi.
struct IntegerRange {
    Integer lo;
    Integer hi;
    bool empty() const { return lo > hi; }
    Integer size() const { return empty() ? Integer(0) : Integer(hi - lo + 1); }
};

namespace detail {

inline Integer lower_integer(const QuadraticSurd &x, bool strict) {
    return strict ? Integer(x.floor() + 1) : x.ceil();
}
inline Integer upper_integer(const QuadraticSurd &x, bool strict) {
    return strict ? Integer(x.ceil() - 1) : x.floor();
}

inline QuadraticSurd scaled(const QuadraticSurd &x, const Rational &f) { return {x.a * f, x.b * f, x.r}; }

}  // namespace detail

/// Integers t such that (prefix, t) lies in the projection of mu*K (its
/// interior when strict) onto the first prefix.size() + 1 coordinates.
inline IntegerRange integer_slice(const SymmetricBody &k, const IntegerVector &prefix, const GaugeValue &mu,
                                  bool strict) {
    const std::size_t level = prefix.size();
    if (level >= k.dim())
        throw DimensionError("integer_slice: prefix too long");
    const QuadraticSurd m = mu.as_surd();
    if (const auto *b = std::get_if<Box>(&k.shape())) {
        QuadraticSurd w = detail::scaled(m, b->halfwidths[level]);
        Integer hi = detail::upper_integer(w, strict);
        return {-hi, hi};
    }
    const detail::SlicePlan &plan = detail::slice_plan(k);
    if (k.is_hpolytope()) {
        Integer lo, hi;
        bool have_lo = false, have_hi = false;
        for (const auto &row : plan.polytope_levels[level]) {
            Integer s = 0;
            for (std::size_t i = 0; i < level; ++i)
                if (prefix[i] != 0 && row.coeffs[i] != 0)
                    s += row.coeffs[i] * prefix[i];
            const Integer &ct = row.coeffs[level];
            if (m.is_rational()) {
                // Integer-only path: the range is ct*t in [-P/Q - s, P/Q - s].
                Rational bmr = m.a * row.bound;
                const Integer &pp = bmr.get_num();
                const Integer &qq = bmr.get_den();
                if (ct == 0) {
                    Integer lhs = abs(s) * qq;
                    if (lhs > pp || (strict && lhs == pp))
                        return {1, 0};
                    continue;
                }
                Integer sq = s * qq;
                Integer lo_n = -pp - sq;
                Integer hi_n = pp - sq;
                if (ct < 0) {
                    std::swap(lo_n, hi_n);
                    lo_n = -lo_n;
                    hi_n = -hi_n;
                }
                Integer den = qq * abs(ct);
                Integer l, h;
                if (strict) {
                    mpz_fdiv_q(l.get_mpz_t(), lo_n.get_mpz_t(), den.get_mpz_t());
                    l += 1;
                    mpz_cdiv_q(h.get_mpz_t(), hi_n.get_mpz_t(), den.get_mpz_t());
                    h -= 1;
                } else {
                    mpz_cdiv_q(l.get_mpz_t(), lo_n.get_mpz_t(), den.get_mpz_t());
                    mpz_fdiv_q(h.get_mpz_t(), hi_n.get_mpz_t(), den.get_mpz_t());
                }
                if (!have_lo || l > lo) {
                    lo = l;
                    have_lo = true;
                }
                if (!have_hi || h < hi) {
                    hi = h;
                    have_hi = true;
                }
                if (lo > hi)
                    return {1, 0};
                continue;
            }
            QuadraticSurd bm = detail::scaled(m, row.bound);
            if (ct == 0) {
                QuadraticSurd slack = bm - Rational(abs(s));
                int sg = slack.sign();
                if (sg < 0 || (strict && sg == 0))
                    return {1, 0};
                continue;
            }
            Rational inv = Rational(1) / Rational(ct);
            QuadraticSurd e1 = detail::scaled(-bm - Rational(s), inv);
            QuadraticSurd e2 = detail::scaled(bm - Rational(s), inv);
            if (ct < 0)
                std::swap(e1, e2);
            Integer l = detail::lower_integer(e1, strict);
            Integer h = detail::upper_integer(e2, strict);
            if (!have_lo || l > lo) {
                lo = l;
                have_lo = true;
            }
            if (!have_hi || h < hi) {
                hi = h;
                have_hi = true;
            }
            if (lo > hi)
                return {1, 0};
        }
        if (!have_lo || !have_hi)
            throw InvariantError("unbounded slice");
        return {lo, hi};
    }
    const RationalMatrix &s = plan.schur[level];
    const Rational &a = s(level, level);
    Rational bq(0), c(0);
    for (std::size_t i = 0; i < level; ++i) {
        if (prefix[i] == 0)
            continue;
        bq += s(level, i) * prefix[i];
        Rational row(0);
        for (std::size_t j = 0; j < level; ++j)
            if (prefix[j] != 0)
                row += s(i, j) * prefix[j];
        c += row * prefix[i];
    }
    Rational disc = bq * bq - a * (c - mu.squared());
    if (disc < 0 || (strict && disc == 0))
        return {1, 0};
    Rational center = -bq / a;
    Rational half = 1 / a;
    QuadraticSurd lo{center, -half, disc};
    QuadraticSurd hi{center, half, disc};
    return {detail::lower_integer(lo, strict), detail::upper_integer(hi, strict)};
}

struct Interval {
    Rational lo;
    Rational hi;
};

namespace detail {

// Largest rational of the form n/2^k that is <= x and > ceil(x) - 1.
inline Rational enclosing_lower(const QuadraticSurd &x) {
    if (x.is_rational())
        return x.a;
    Integer base = x.ceil() - 1;
    for (unsigned k = 1;; ++k) {
        Rational step(pow2(k));
        Rational cand = make_rational(scaled(x, step).floor(), pow2(k));
        if (cand > base)
            return cand;
    }
}

}  // namespace detail

/// Exact range of coordinate prefix.size() over K intersected with
/// {x : leading coordinates = prefix}; nullopt when that slice is empty. For
/// ellipsoids the endpoints are irrational in general: the returned rational
/// interval encloses the true one and holds exactly the same integers.
inline std::optional<Interval> coordinate_bounds(const SymmetricBody &k, const RationalVector &prefix) {
    const std::size_t level = prefix.size();
    if (level >= k.dim())
        throw DimensionError("coordinate_bounds: prefix must be shorter than the dimension");
    if (const auto *b = std::get_if<Box>(&k.shape())) {
        for (std::size_t i = 0; i < level; ++i)
            if (abs(prefix[i]) > b->halfwidths[i])
                return std::nullopt;
        return Interval{-b->halfwidths[level], b->halfwidths[level]};
    }
    const detail::SlicePlan &plan = detail::slice_plan(k);
    if (k.is_hpolytope()) {
        std::optional<Rational> lo, hi;
        for (const auto &row : plan.polytope_levels[level]) {
            Rational s(0);
            for (std::size_t i = 0; i < level; ++i)
                s += row.coeffs[i] * prefix[i];
            const Integer &ct = row.coeffs[level];
            if (ct == 0) {
                if (abs(s) > row.bound)
                    return std::nullopt;
                continue;
            }
            Rational e1 = (-row.bound - s) / ct;
            Rational e2 = (row.bound - s) / ct;
            if (ct < 0)
                std::swap(e1, e2);
            if (!lo || e1 > *lo)
                lo = e1;
            if (!hi || e2 < *hi)
                hi = e2;
        }
        if (*lo > *hi)
            return std::nullopt;
        return Interval{*lo, *hi};
    }
    const RationalMatrix &s = plan.schur[level];
    const Rational &a = s(level, level);
    Rational bq(0), c(0);
    for (std::size_t i = 0; i < level; ++i) {
        bq += s(level, i) * prefix[i];
        for (std::size_t j = 0; j < level; ++j)
            c += prefix[i] * s(i, j) * prefix[j];
    }
    Rational disc = bq * bq - a * (c - 1);
    if (disc < 0)
        return std::nullopt;
    Rational center = -bq / a;
    Rational half = 1 / a;
    QuadraticSurd lo{center, -half, disc};
    QuadraticSurd hi{center, half, disc};
    Rational lo_enc = detail::enclosing_lower(lo);
    Rational hi_enc = -detail::enclosing_lower(-hi);
    return Interval{lo_enc, hi_enc};
}

}  // namespace latpts

#pragma once

// Floor-product bounds on #(K cap Lambda), the divisor chain and its diagonal
// sublattice, and the Minkowski inequalities.

#include "latpts/succmin.hpp"

namespace latpts {

/// q_i = floor(2 / lambda_i + 1), nonincreasing.
struct FloorTerms {
    IntegerVector q;

    friend bool operator==(const FloorTerms &, const FloorTerms &) = default;
};

/// n_d = q_d, q_i <= n_i < 2 q_i, n_{i+1} | n_i.
struct DivisorChain {
    IntegerVector n;

    friend bool operator==(const DivisorChain &, const DivisorChain &) = default;
};

/// floor(2 / lambda + 1) for lambda > 0, exact for both gauge kinds.
inline Integer floor_term(const GaugeValue &lambda) {
    if (lambda.is_zero())
        throw InvariantError("floor_term: zero minimum");
    if (lambda.kind() == GaugeValue::Kind::Rational)
        return floor(Rational(2 / lambda.stored())) + 1;
    // lambda = sqrt(s): 1 + max{k >= 0 : k^2 s <= 4}.
    const Rational &s = lambda.stored();
    Integer k = floor(Rational(4 / s));
    k = isqrt(k);  // k^2 <= floor(4/s), so k^2 s <= 4
    while (Rational((k + 1) * (k + 1)) * s <= 4)
        ++k;
    while (Rational(k * k) * s > 4)
        --k;
    return k + 1;
}

inline FloorTerms floor_terms(const MinimaResult &m) {
    FloorTerms t;
    for (const auto &l : m.minima)
        t.q.push_back(floor_term(l));
    return t;
}

inline Integer product(const IntegerVector &v) {
    Integer p = 1;
    for (const auto &x : v)
        p *= x;
    return p;
}

/// floor(2/lambda_1 + 1)^d.
inline Integer first_bound_rhs(const MinimaResult &m) {
    Integer q1 = floor_term(m.minima.at(0));
    Integer r = 1;
    for (std::size_t i = 0; i < m.dim(); ++i)
        r *= q1;
    return r;
}

/// prod_i floor(2/lambda_i + 1).
inline Integer conjecture_rhs(const MinimaResult &m) { return product(floor_terms(m).q); }

/// 2^{d-1} prod_i floor(2/lambda_i + 1); defined for d >= 2.
inline Integer main_bound_rhs(const MinimaResult &m) {
    if (m.dim() < 2)
        throw DimensionError("main_bound_rhs requires d >= 2");
    return pow2(static_cast<unsigned>(m.dim() - 1)) * conjecture_rhs(m);
}

/// Builds n_d, ..., n_1: n_k = n_{k+1} when n_{k+1} >= q_k, otherwise
/// n_k = q_k + n_{k+1} - (q_k mod n_{k+1}), the next multiple of n_{k+1} above q_k.
inline DivisorChain divisor_chain(const FloorTerms &terms) {
    const auto &q = terms.q;
    if (q.empty())
        throw InvariantError("divisor_chain: empty input");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 1)
            throw InvariantError("divisor_chain: terms must be positive");
        if (i + 1 < q.size() && q[i] < q[i + 1])
            throw InvariantError("divisor_chain: terms must be nonincreasing");
    }
    const std::size_t d = q.size();
    DivisorChain chain;
    chain.n.assign(d, Integer(0));
    chain.n[d - 1] = q[d - 1];
    for (std::size_t k = d - 1; k-- > 0;) {
        const Integer &next = chain.n[k + 1];
        if (next >= q[k]) {
            chain.n[k] = next;
        } else {
            Integer r = q[k] % next;
            chain.n[k] = q[k] + next - r;
        }
    }
    return chain;
}

/// The divisor-chain invariants against the terms it was built from.
inline bool chain_valid(const FloorTerms &terms, const DivisorChain &chain) {
    const auto &q = terms.q;
    const auto &n = chain.n;
    if (q.size() != n.size() || n.empty() || n.back() != q.back())
        return false;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < q[i] || n[i] >= 2 * q[i])
            return false;
        if (i + 1 < n.size() && n[i] % n[i + 1] != 0)
            return false;
    }
    return true;
}

/// Sublattice of Z^d spanned by n_1 e^1, ..., n_d e^d.
inline Sublattice chain_sublattice(const DivisorChain &chain) {
    return Sublattice(Lattice::standard(chain.n.size()), IntegerMatrix::diagonal(chain.n));
}

/// 2K' cap (chain sublattice) = {0} for a canonical body K' over Z^d.
inline bool kernel_check(const SymmetricBody &canonical_body, const DivisorChain &chain) {
    Lattice sub = chain_sublattice(chain).as_lattice();
    return count(canonical_body, sub, GaugeValue::rational(2), false) == 1;
}

struct LemmaBound {
    Integer lhs;  // #(K cap Lambda)
    Integer rhs;  // index * #(2K cap sublattice)
    bool holds() const { return lhs <= rhs; }

    friend bool operator==(const LemmaBound &, const LemmaBound &) = default;
};

/// The residue-class counting bound #(K cap Lambda) <= index * #(2K cap sub).
/// `sub.parent()` must be `lat`.
inline LemmaBound lemma_bound(const SymmetricBody &k, const Lattice &lat, const Sublattice &sub) {
    if (!(sub.parent() == lat))
        throw InvariantError("lemma_bound: sublattice parent differs from lattice");
    LemmaBound b;
    b.lhs = count(k, lat);
    b.rhs = sub.index() * count(k, sub.as_lattice(), GaugeValue::rational(2), false);
    return b;
}

namespace detail {

// lhs_sq <= rhs with lhs_sq the square of a product of gauges and everything
// else nonnegative: compare lhs_sq * vol^2 against (2^d det)^2.
inline bool squared_product_check(const Rational &gauge_product_sq, const Rational &vol, const Rational &det,
                                  std::size_t d) {
    Rational rhs = Rational(pow2(static_cast<unsigned>(d))) * det;
    return gauge_product_sq * vol * vol <= rhs * rhs;
}

}  // namespace detail

/// lambda_1^d vol <= 2^d det.
inline bool minkowski_first_check(const MinimaResult &m, const Rational &vol, const Rational &det) {
    Rational sq = pow(m.minima.at(0).squared(), static_cast<unsigned>(m.dim()));
    return detail::squared_product_check(sq, vol, det, m.dim());
}

/// lambda_1 ... lambda_d vol <= 2^d det.
inline bool minkowski_second_check(const MinimaResult &m, const Rational &vol, const Rational &det) {
    Rational sq(1);
    for (const auto &l : m.minima)
        sq *= l.squared();
    return detail::squared_product_check(sq, vol, det, m.dim());
}

/// prod lambda_i * vol, exact when all minima are rational.
inline std::optional<Rational> minkowski_second_product(const MinimaResult &m, const Rational &vol) {
    Rational p = vol;
    for (const auto &l : m.minima) {
        if (l.kind() != GaugeValue::Kind::Rational)
            return std::nullopt;
        p *= l.stored();
    }
    return p;
}

}  // namespace latpts

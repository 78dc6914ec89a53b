#pragma once

// Seeded instance generation, the per-instance verification pipeline, and
// campaigns over many instances.

#include "latpts/bounds.hpp"
#include "latpts/random.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

namespace latpts {

enum class BodyKind { Box, HPolytope, Ellipsoid };
enum class LatticeKind { Identity, Diagonal, UnimodularDiagonal };

inline constexpr std::size_t kMaxDim = 6;
inline constexpr long kMaxCoeffRange = 16;

inline std::string to_string(BodyKind k) {
    switch (k) {
    case BodyKind::Box:
        return "box";
    case BodyKind::HPolytope:
        return "hpolytope";
    case BodyKind::Ellipsoid:
        return "ellipsoid";
    }
    return "?";
}

inline std::string to_string(LatticeKind k) {
    switch (k) {
    case LatticeKind::Identity:
        return "identity";
    case LatticeKind::Diagonal:
        return "diagonal";
    case LatticeKind::UnimodularDiagonal:
        return "unimodular-diagonal";
    }
    return "?";
}

inline BodyKind parse_body_kind(const std::string &s) {
    if (s == "box")
        return BodyKind::Box;
    if (s == "hpolytope")
        return BodyKind::HPolytope;
    if (s == "ellipsoid")
        return BodyKind::Ellipsoid;
    throw ParseError("unknown body kind '" + s + "'");
}

inline LatticeKind parse_lattice_kind(const std::string &s) {
    if (s == "identity")
        return LatticeKind::Identity;
    if (s == "diagonal")
        return LatticeKind::Diagonal;
    if (s == "unimodular-diagonal")
        return LatticeKind::UnimodularDiagonal;
    throw ParseError("unknown lattice kind '" + s + "'");
}

struct InstanceSpec {
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    BodyKind body_kind = BodyKind::Box;
    long coeff_range = 4;
    LatticeKind lattice_kind = LatticeKind::Identity;

    friend bool operator==(const InstanceSpec &, const InstanceSpec &) = default;
};

struct Instance {
    SymmetricBody body;
    Lattice lattice;
};

class GenerationError : public Error {
  public:
    using Error::Error;
};

inline void validate(const InstanceSpec &spec) {
    if (spec.dim < 1 || spec.dim > kMaxDim)
        throw ParseError("dimension must be in 1.." + std::to_string(kMaxDim));
    if (spec.coeff_range < 1 || spec.coeff_range > kMaxCoeffRange)
        throw ParseError("coefficient range must be in 1.." + std::to_string(kMaxCoeffRange));
}

namespace detail {

inline Rational positive_rational(SplitMix64 &rng, long range) {
    Integer p(static_cast<long>(rng.uniform(1, range)));
    Integer q(static_cast<long>(rng.uniform(1, range)));
    return make_rational(p, q);
}

inline Rational signed_rational(SplitMix64 &rng, long range) {
    Integer p(static_cast<long>(rng.uniform(-range, range)));
    Integer q(static_cast<long>(rng.uniform(1, range)));
    return make_rational(p, q);
}

inline constexpr int kGenerationRetries = 64;

}  // namespace detail

/// Deterministic in the full spec. Degenerate draws (rank-deficient normals,
/// singular factors) are discarded and redrawn from the same stream.
///
/// box:        halfwidths p/q, 1 <= p, q <= range
/// hpolytope:  d..d+2 rows with entries p/q, |p| <= range, 1 <= q <= range
/// ellipsoid:  Q = M^T M + diag(1/p_i), M entries as for hpolytope rows
/// lattices:   diagonal entries p/q as for box halfwidths; the unimodular
///             factor is a product of 2d elementary row operations (+-1).
inline Instance generate(const InstanceSpec &spec) {
    validate(spec);
    SplitMix64 rng(spec.seed);
    const std::size_t d = spec.dim;
    const long range = spec.coeff_range;

    std::optional<SymmetricBody> body;
    for (int attempt = 0; attempt < detail::kGenerationRetries && !body; ++attempt) {
        try {
            switch (spec.body_kind) {
            case BodyKind::Box: {
                RationalVector w(d);
                for (auto &wi : w)
                    wi = detail::positive_rational(rng, range);
                body = SymmetricBody::box(std::move(w));
                break;
            }
            case BodyKind::HPolytope: {
                std::size_t m = d + static_cast<std::size_t>(rng.uniform(0, 2));
                RationalMatrix a(m, d);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        a(i, j) = detail::signed_rational(rng, range);
                body = SymmetricBody::hpolytope(std::move(a));
                break;
            }
            case BodyKind::Ellipsoid: {
                RationalMatrix mm(d, d);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        mm(i, j) = detail::signed_rational(rng, range);
                RationalMatrix q = mm.transpose() * mm;
                for (std::size_t i = 0; i < d; ++i)
                    q(i, i) += make_rational(1, static_cast<long>(rng.uniform(1, range)));
                body = SymmetricBody::ellipsoid(std::move(q));
                break;
            }
            }
        } catch (const InvariantError &) {
        }
    }
    if (!body)
        throw GenerationError("instance generation exhausted its retry budget");

    RationalMatrix basis = RationalMatrix::identity(d);
    if (spec.lattice_kind != LatticeKind::Identity) {
        for (std::size_t i = 0; i < d; ++i)
            basis(i, i) = detail::positive_rational(rng, range);
        if (spec.lattice_kind == LatticeKind::UnimodularDiagonal && d > 1) {
            RationalMatrix u = RationalMatrix::identity(d);
            for (std::size_t step = 0; step < 2 * d; ++step) {
                std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(d) - 1));
                std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(d) - 2));
                if (j >= i)
                    ++j;
                Rational f(rng.uniform(0, 1) ? 1 : -1);
                for (std::size_t c = 0; c < d; ++c)
                    u(i, c) += f * u(j, c);
            }
            basis = u * basis;
        }
    }
    return Instance{std::move(*body), Lattice(std::move(basis))};
}

// ---------------------------------------------------------------------------
// Verification

enum class CheckStatus { Pass, Fail, Reported, Skipped, BugAlarm };

inline std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Reported:
        return "reported";
    case CheckStatus::Skipped:
        return "skipped";
    case CheckStatus::BugAlarm:
        return "bug-alarm";
    }
    return "?";
}

inline CheckStatus parse_check_status(const std::string &s) {
    for (auto st : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Reported, CheckStatus::Skipped,
                    CheckStatus::BugAlarm})
        if (to_string(st) == s)
            return st;
    throw ParseError("unknown check status '" + s + "'");
}

/// Report check names, in CSV column order.
namespace checks {
inline const std::string kMonotoneMinima = "monotone-minima";
inline const std::string kWitnessValidity = "witness-validity";
inline const std::string kLemma = "lemma-2.1";
inline const std::string kKernel = "kernel";
inline const std::string kMainBound = "thm-1.4";
inline const std::string kFirstBound = "eq-1.4";
inline const std::string kMinkowskiFirst = "mink-1";
inline const std::string kMinkowskiSecond = "mink-2";
inline const std::string kConjecturePlane = "conj-d2";

inline const std::vector<std::string> &all() {
    static const std::vector<std::string> names{kMonotoneMinima, kWitnessValidity, kLemma,
                                                kKernel,         kMainBound,       kFirstBound,
                                                kMinkowskiFirst, kMinkowskiSecond, kConjecturePlane};
    return names;
}
}  // namespace checks

struct CheckResult {
    CheckStatus status = CheckStatus::Skipped;
    std::optional<bool> holds;  // the inequality's truth value, when evaluated

    friend bool operator==(const CheckResult &, const CheckResult &) = default;
};

/// Bounds on vol(K) used by the Minkowski checks: exact for boxes, otherwise
/// from a grid count of K scaled to cube inradius 1. The checks use the lower
/// bound, so they can only miss violations smaller than upper - lower.
struct VolumeInfo {
    std::string method;        // "exact" | "riemann"
    Rational resolution{0};    // grid spacing r after normalization (riemann)
    Rational inradius{0};      // rho with rho*[-1,1]^d in K (riemann)
    Rational lower_bound{0};
    Rational upper_bound{0};

    friend bool operator==(const VolumeInfo &, const VolumeInfo &) = default;
};

struct VerificationReport {
    std::optional<InstanceSpec> spec;
    SymmetricBody body;
    Lattice lattice;
    MinimaResult minima;
    Integer count;
    Integer first_bound;
    Integer conjecture_bound;
    std::optional<Integer> main_bound;  // d >= 2
    FloorTerms floor_terms;
    DivisorChain chain;
    LemmaBound lemma;
    VolumeInfo volume;
    std::map<std::string, CheckResult> checks;
    std::optional<Rational> tightness_ratio;  // count / main_bound

    bool has_bug_alarm() const {
        return std::any_of(checks.begin(), checks.end(),
                           [](const auto &kv) { return kv.second.status == CheckStatus::BugAlarm; });
    }
    bool has_failure() const {
        return std::any_of(checks.begin(), checks.end(),
                           [](const auto &kv) { return kv.second.status == CheckStatus::Fail; });
    }

    friend bool operator==(const VerificationReport &, const VerificationReport &) = default;
};

struct VerifyOptions {
    /// Grid spacing for the volume bounds of non-box bodies (halved further
    /// for bodies whose cube inradius bound is below 2r).
    Rational volume_resolution{1, 32};
};

namespace detail {

inline CheckResult asserted(bool holds) { return {holds ? CheckStatus::Pass : CheckStatus::Fail, holds}; }

/// With rho*[-1,1]^d in K, grid spacing r and s = r/(2 rho), the cells
/// x + [-r/2,r/2]^d of grid points x in (1-s)K are disjoint and lie in K, and
/// they cover (1-2s)K. With n such points: r^d n <= vol(K) <= r^d n / (1-2s)^d.
/// r is halved until s <= 1/4.
inline VolumeInfo volume_for_checks(const SymmetricBody &k, const VerifyOptions &opt) {
    VolumeInfo v;
    if (k.is_box()) {
        v.method = "exact";
        v.lower_bound = v.upper_bound = volume_box(k);
        return v;
    }
    if (opt.volume_resolution <= 0)
        throw InvariantError("volume resolution must be positive");
    const unsigned d = static_cast<unsigned>(k.dim());
    v.method = "riemann";
    v.inradius = inradius_lower_bound(k);
    Rational r = opt.volume_resolution;
    while (r > v.inradius / 2)
        r /= 2;
    v.resolution = r;
    Rational s = r / (2 * v.inradius);
    v.lower_bound = volume_estimate(scale(k, Rational(1 - s)), Lattice::standard(k.dim()), r);
    v.upper_bound = v.lower_bound / pow(Rational(1 - 2 * s), d);
    return v;
}

}  // namespace detail

/// Runs the whole pipeline on one instance: successive minima, canonical form,
/// floor terms, divisor chain, kernel check, counting bound, and every
/// inequality. The plane conjecture is asserted only for d = 2 and reported
/// otherwise; the strict main bound is skipped for d = 1.
inline VerificationReport verify(const SymmetricBody &k, const Lattice &lat, const VerifyOptions &opt = {}) {
    using namespace checks;
    const std::size_t d = k.dim();
    VerificationReport rep{std::nullopt, k, lat, {}, 0, 0, 0, std::nullopt, {}, {}, {}, {}, {}, std::nullopt};

    rep.minima = successive_minima(k, lat);
    const auto &mins = rep.minima.minima;
    bool monotone = mins.size() == d && !mins[0].is_zero();
    for (std::size_t i = 1; i < mins.size(); ++i)
        monotone = monotone && mins[i - 1] <= mins[i];
    rep.checks[kMonotoneMinima] = detail::asserted(monotone);

    bool witnesses_ok = rank([&] {
                            std::vector<RationalVector> v;
                            for (const auto &z : rep.minima.witnesses)
                                v.push_back(to_rational(z));
                            return v;
                        }()) == d;
    for (std::size_t i = 0; i < d && witnesses_ok; ++i)
        witnesses_ok = gauge(k, lat.point(rep.minima.witnesses[i])) == mins[i];
    witnesses_ok = witnesses_ok && witnesses_minimal(k, lat, rep.minima);

    CanonicalInstance canon = canonicalize(k, lat, rep.minima);
    for (std::size_t i = 0; i < d && witnesses_ok; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            witnesses_ok = witnesses_ok && canon.minima.witnesses[i][j] == 0;
    rep.checks[kWitnessValidity] = detail::asserted(witnesses_ok);

    rep.count = count(k, lat);
    rep.floor_terms = latpts::floor_terms(rep.minima);
    rep.chain = divisor_chain(rep.floor_terms);
    rep.first_bound = first_bound_rhs(rep.minima);
    rep.conjecture_bound = conjecture_rhs(rep.minima);

    bool kernel = chain_valid(rep.floor_terms, rep.chain) && kernel_check(canon.body, rep.chain);
    rep.checks[kKernel] = kernel ? CheckResult{CheckStatus::Pass, true} : CheckResult{CheckStatus::BugAlarm, false};

    rep.lemma = lemma_bound(canon.body, Lattice::standard(d), chain_sublattice(rep.chain));
    if (rep.lemma.lhs != rep.count)
        throw BugAlarm("count changed under canonicalization");
    rep.checks[kLemma] = detail::asserted(rep.lemma.holds());

    if (d >= 2) {
        rep.main_bound = main_bound_rhs(rep.minima);
        bool chain_below = product(rep.chain.n) < *rep.main_bound;
        rep.checks[kMainBound] = detail::asserted(rep.count < *rep.main_bound && chain_below);
        rep.tightness_ratio = Rational(rep.count) / Rational(*rep.main_bound);
    } else {
        rep.checks[kMainBound] = CheckResult{CheckStatus::Skipped, std::nullopt};
    }
    rep.checks[kFirstBound] = detail::asserted(rep.count <= rep.first_bound);

    rep.volume = detail::volume_for_checks(k, opt);
    rep.checks[kMinkowskiFirst] =
        detail::asserted(minkowski_first_check(rep.minima, rep.volume.lower_bound, lat.determinant()));
    rep.checks[kMinkowskiSecond] =
        detail::asserted(minkowski_second_check(rep.minima, rep.volume.lower_bound, lat.determinant()));

    bool conj = rep.count <= rep.conjecture_bound;
    rep.checks[kConjecturePlane] = d == 2 ? detail::asserted(conj) : CheckResult{CheckStatus::Reported, conj};
    return rep;
}

inline VerificationReport verify(const InstanceSpec &spec, const VerifyOptions &opt = {}) {
    Instance inst = generate(spec);
    VerificationReport rep = verify(inst.body, inst.lattice, opt);
    rep.spec = spec;
    return rep;
}

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignSummary {
    std::size_t instances = 0;
    std::size_t failures = 0;  // reports with at least one asserted failure
    std::map<std::string, std::map<std::string, std::size_t>> status_counts;
    std::optional<Rational> max_ratio;
    std::optional<std::size_t> max_ratio_index;
    std::vector<std::size_t> bug_alarms;              // report indices
    std::vector<std::size_t> conjecture_violations;   // d >= 3, reported only

    friend bool operator==(const CampaignSummary &, const CampaignSummary &) = default;
};

struct CampaignResult {
    std::vector<VerificationReport> reports;
    CampaignSummary summary;
};

inline CampaignSummary summarize(const std::vector<VerificationReport> &reports) {
    CampaignSummary s;
    s.instances = reports.size();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto &r = reports[i];
        for (const auto &[name, res] : r.checks)
            ++s.status_counts[name][to_string(res.status)];
        if (r.has_failure())
            ++s.failures;
        if (r.has_bug_alarm())
            s.bug_alarms.push_back(i);
        if (r.tightness_ratio && (!s.max_ratio || *r.tightness_ratio > *s.max_ratio)) {
            s.max_ratio = r.tightness_ratio;
            s.max_ratio_index = i;
        }
        const auto &conj = r.checks.at(checks::kConjecturePlane);
        if (conj.status == CheckStatus::Reported && conj.holds == false)
            s.conjecture_violations.push_back(i);
    }
    return s;
}

namespace detail {

/// Applies fn(i) for i in [0, n) on up to `threads` workers; fn writes only
/// its own slot, so results are schedule-independent.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < n; i = next++)
                    fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
                next = n;
            }
        });
    for (auto &th : pool)
        th.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace detail

inline CampaignResult campaign(const std::vector<InstanceSpec> &specs, unsigned threads = 1,
                               const VerifyOptions &opt = {}) {
    std::vector<std::optional<VerificationReport>> slots(specs.size());
    detail::parallel_for(specs.size(), threads, [&](std::size_t i) { slots[i] = verify(specs[i], opt); });
    CampaignResult res;
    for (auto &s : slots)
        res.reports.push_back(std::move(*s));
    res.summary = summarize(res.reports);
    return res;
}

struct OracleMismatch {
    std::size_t index;
    std::string what;
};

struct OracleResult {
    std::size_t checked = 0;
    std::vector<OracleMismatch> mismatches;
    bool agree() const { return mismatches.empty(); }
};

/// For every instance with d <= 3: sliced count == exhaustive count, and the
/// first minimum equals the brute-force minimum gauge.
inline OracleResult oracle_campaign(const std::vector<InstanceSpec> &specs, unsigned threads = 1) {
    std::vector<std::optional<OracleMismatch>> slots(specs.size());
    std::vector<char> checked(specs.size(), 0);
    detail::parallel_for(specs.size(), threads, [&](std::size_t i) {
        if (specs[i].dim > 3)
            return;
        checked[i] = 1;
        Instance inst = generate(specs[i]);
        const GaugeValue one = GaugeValue::rational(1);
        Integer fast = count(inst.body, inst.lattice);
        Integer slow =
            count_oracle(inst.body, inst.lattice, one, false, coordinate_radius(inst.body, inst.lattice, one));
        if (fast != slow) {
            slots[i] = OracleMismatch{i, "count " + to_string(fast) + " vs oracle " + to_string(slow)};
            return;
        }
        GaugeValue l1 = successive_minima(inst.body, inst.lattice).minima[0];
        GaugeValue o1 = first_minimum_oracle(inst.body, inst.lattice);
        if (l1 != o1)
            slots[i] = OracleMismatch{i, "first minimum differs from brute force"};
    });
    OracleResult res;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        res.checked += checked[i];
        if (slots[i])
            res.mismatches.push_back(*slots[i]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// CSV

/// Column order of fuzz CSV output.
inline std::vector<std::string> csv_columns() {
    std::vector<std::string> cols{"seed",        "dim",        "kind",          "lattice",
                                  "range",       "count",      "first_bound",   "conjecture_bound",
                                  "main_bound",  "chain_product", "ratio"};
    for (const auto &c : checks::all())
        cols.push_back(c);
    return cols;
}

inline void write_csv(std::ostream &out, const std::vector<VerificationReport> &reports) {
    const auto cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto &r : reports) {
        const InstanceSpec spec = r.spec.value_or(InstanceSpec{});
        out << spec.seed << ',' << r.body.dim() << ',' << r.body.kind_name() << ','
            << (r.spec ? to_string(spec.lattice_kind) : std::string("file")) << ','
            << (r.spec ? std::to_string(spec.coeff_range) : std::string()) << ',' << to_string(r.count) << ','
            << to_string(r.first_bound) << ',' << to_string(r.conjecture_bound) << ','
            << (r.main_bound ? to_string(*r.main_bound) : std::string()) << ',' << to_string(product(r.chain.n))
            << ',' << (r.tightness_ratio ? to_string(*r.tightness_ratio) : std::string());
        for (const auto &c : checks::all())
            out << ',' << to_string(r.checks.at(c).status);
        out << "\n";
    }
}

inline std::string summary_line(const CampaignSummary &s, const std::vector<VerificationReport> &reports) {
    std::ostringstream os;
    os << "instances=" << s.instances << " failures=" << s.failures << " bug_alarms=" << s.bug_alarms.size()
       << " conjecture_violations_d3plus=" << s.conjecture_violations.size();
    if (s.max_ratio) {
        os << " max_ratio=" << to_string(*s.max_ratio);
        const auto &r = reports[*s.max_ratio_index];
        if (r.spec)
            os << " (seed " << r.spec->seed << ")";
    }
    return os.str();
}

}  // namespace latpts

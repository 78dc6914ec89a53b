#pragma once

// JSON wire formats: instance files and verification reports. Every rational
// is a string "p" or "p/q"; sqrt-kind gauges are {"sqrt": "p/q"}.

#include "latpts/harness.hpp"

#include <json.hpp>

#include <string>

namespace latpts {

using Json = nlohmann::json;

namespace detail {

inline Rational rational_from_json(const Json &j, const std::string &where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError &e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer())
        return Rational(Integer(j.dump()));
    throw ParseError(where + ": expected a rational string or an integer");
}

inline Integer integer_from_json(const Json &j, const std::string &where) {
    Rational r = rational_from_json(j, where);
    if (!is_integer(r))
        throw ParseError(where + ": expected an integer");
    return r.get_num();
}

inline const Json &member(const Json &j, const char *key, const std::string &where) {
    if (!j.is_object())
        throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(where + ": missing key \"" + key + "\"");
    return *it;
}

inline RationalVector vector_from_json(const Json &j, std::size_t n, const std::string &where) {
    if (!j.is_array() || j.size() != n)
        throw ParseError(where + ": expected an array of length " + std::to_string(n));
    RationalVector v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline RationalMatrix matrix_from_json(const Json &j, std::size_t cols, const std::string &where,
                                       std::optional<std::size_t> rows = std::nullopt) {
    if (!j.is_array() || j.empty() || (rows && j.size() != *rows))
        throw ParseError(where + ": expected " + (rows ? std::to_string(*rows) : std::string("a nonempty")) +
                         " array of rows");
    RationalMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        RationalVector row = vector_from_json(j[i], cols, where + "[" + std::to_string(i) + "]");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = row[c];
    }
    return m;
}

inline Json to_json(const RationalVector &v) {
    Json a = Json::array();
    for (const auto &x : v)
        a.push_back(to_string(x));
    return a;
}

inline Json to_json(const IntegerVector &v) {
    Json a = Json::array();
    for (const auto &x : v)
        a.push_back(to_string(x));
    return a;
}

inline Json to_json(const RationalMatrix &m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(to_json(m.row(i)));
    return a;
}

inline IntegerVector integer_vector_from_json(const Json &j, const std::string &where) {
    if (!j.is_array())
        throw ParseError(where + ": expected an array");
    IntegerVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::optional<bool> optional_bool(const Json &j) {
    if (j.is_null())
        return std::nullopt;
    if (!j.is_boolean())
        throw ParseError("expected a boolean or null");
    return j.get<bool>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gauges

inline Json to_json(const GaugeValue &g) {
    if (g.kind() == GaugeValue::Kind::Sqrt)
        return Json{{"sqrt", to_string(g.stored())}};
    return to_string(g.stored());
}

inline GaugeValue gauge_from_json(const Json &j, const std::string &where = "gauge") {
    if (j.is_object())
        return GaugeValue::sqrt_of(detail::rational_from_json(detail::member(j, "sqrt", where), where + ".sqrt"));
    return GaugeValue::rational(detail::rational_from_json(j, where));
}

/// "p/q" or "sqrt(p/q)".
inline GaugeValue parse_gauge(const std::string &text) {
    if (text.rfind("sqrt(", 0) == 0) {
        if (text.back() != ')')
            throw ParseError("unterminated sqrt( in '" + text + "'");
        return GaugeValue::sqrt_of(parse_rational(text.substr(5, text.size() - 6)));
    }
    return GaugeValue::rational(parse_rational(text));
}

// ---------------------------------------------------------------------------
// Instance files

struct InstanceFile {
    SymmetricBody body;
    Lattice lattice;

    friend bool operator==(const InstanceFile &, const InstanceFile &) = default;
};

inline Json body_to_json(const SymmetricBody &k) {
    Json b{{"kind", k.kind_name()}};
    if (const auto *box = std::get_if<Box>(&k.shape()))
        b["halfwidths"] = detail::to_json(box->halfwidths);
    else if (const auto *p = std::get_if<HPolytope>(&k.shape()))
        b["normals"] = detail::to_json(p->normals);
    else
        b["gram"] = detail::to_json(std::get<Ellipsoid>(k.shape()).gram);
    return b;
}

inline Json to_json(const InstanceFile &f) {
    return Json{{"dim", f.body.dim()}, {"body", body_to_json(f.body)}, {"lattice", {{"basis", detail::to_json(f.lattice.basis())}}}};
}

/// Shape and syntax problems throw ParseError; well-formed data violating a
/// body or lattice invariant throws InvariantError / RankError.
inline InstanceFile instance_from_json(const Json &j) {
    const Json &dj = detail::member(j, "dim", "instance");
    if (!dj.is_number_integer() || dj.get<long long>() < 1)
        throw ParseError("instance.dim: expected a positive integer");
    const std::size_t d = dj.get<std::size_t>();
    const Json &bj = detail::member(j, "body", "instance");
    const Json &kj = detail::member(bj, "kind", "body");
    if (!kj.is_string())
        throw ParseError("body.kind: expected a string");
    const std::string kind = kj.get<std::string>();

    std::optional<SymmetricBody> body;
    if (kind == "box")
        body = SymmetricBody::box(
            detail::vector_from_json(detail::member(bj, "halfwidths", "body"), d, "body.halfwidths"));
    else if (kind == "hpolytope")
        body = SymmetricBody::hpolytope(
            detail::matrix_from_json(detail::member(bj, "normals", "body"), d, "body.normals"));
    else if (kind == "ellipsoid")
        body = SymmetricBody::ellipsoid(
            detail::matrix_from_json(detail::member(bj, "gram", "body"), d, "body.gram", d));
    else
        throw ParseError("body.kind: unknown kind '" + kind + "'");

    RationalMatrix basis = RationalMatrix::identity(d);
    if (j.contains("lattice"))
        basis = detail::matrix_from_json(detail::member(j["lattice"], "basis", "lattice"), d, "lattice.basis", d);
    return InstanceFile{std::move(*body), Lattice(std::move(basis))};
}

inline InstanceFile parse_instance(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// Minima

inline Json to_json(const MinimaResult &m) {
    Json mins = Json::array();
    Json wits = Json::array();
    for (const auto &g : m.minima)
        mins.push_back(to_json(g));
    for (const auto &w : m.witnesses)
        wits.push_back(detail::to_json(w));
    return Json{{"minima", mins}, {"witnesses", wits}};
}

inline MinimaResult minima_from_json(const Json &j) {
    MinimaResult m;
    const Json &mins = detail::member(j, "minima", "minima");
    const Json &wits = detail::member(j, "witnesses", "minima");
    if (!mins.is_array() || !wits.is_array() || mins.size() != wits.size())
        throw ParseError("minima: arrays of equal length expected");
    for (std::size_t i = 0; i < mins.size(); ++i) {
        m.minima.push_back(gauge_from_json(mins[i], "minima[" + std::to_string(i) + "]"));
        m.witnesses.push_back(detail::integer_vector_from_json(wits[i], "witnesses[" + std::to_string(i) + "]"));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const InstanceSpec &s) {
    return Json{{"seed", s.seed},
                {"dim", s.dim},
                {"body_kind", to_string(s.body_kind)},
                {"coeff_range", s.coeff_range},
                {"lattice_kind", to_string(s.lattice_kind)}};
}

inline InstanceSpec spec_from_json(const Json &j) {
    InstanceSpec s;
    try {
        s.seed = j.at("seed").get<std::uint64_t>();
        s.dim = j.at("dim").get<std::size_t>();
        s.body_kind = parse_body_kind(j.at("body_kind").get<std::string>());
        s.coeff_range = j.at("coeff_range").get<long>();
        s.lattice_kind = parse_lattice_kind(j.at("lattice_kind").get<std::string>());
    } catch (const Json::exception &e) {
        throw ParseError(std::string("instance spec: ") + e.what());
    }
    return s;
}

inline Json to_json(const VolumeInfo &v) {
    return Json{{"method", v.method},
                {"resolution", to_string(v.resolution)},
                {"inradius", to_string(v.inradius)},
                {"lower_bound", to_string(v.lower_bound)},
                {"upper_bound", to_string(v.upper_bound)}};
}

inline Json to_json(const VerificationReport &r) {
    Json checks = Json::object();
    Json reported = Json::object();
    for (const auto &[name, res] : r.checks) {
        checks[name] = to_string(res.status);
        reported[name] = res.holds ? Json(*res.holds) : Json(nullptr);
    }
    Json j = to_json(InstanceFile{r.body, r.lattice});
    j = Json{{"spec", r.spec ? to_json(*r.spec) : Json(nullptr)},
             {"input", j},
             {"minima", to_json(r.minima)},
             {"count", to_string(r.count)},
             {"bounds",
              {{"first", to_string(r.first_bound)},
               {"conjecture", to_string(r.conjecture_bound)},
               {"main", r.main_bound ? Json(to_string(*r.main_bound)) : Json(nullptr)}}},
             {"floor_terms", detail::to_json(r.floor_terms.q)},
             {"chain", detail::to_json(r.chain.n)},
             {"lemma", {{"lhs", to_string(r.lemma.lhs)}, {"rhs", to_string(r.lemma.rhs)}}},
             {"volume", to_json(r.volume)},
             {"checks", checks},
             {"holds", reported},
             {"tightness_ratio", r.tightness_ratio ? Json(to_string(*r.tightness_ratio)) : Json(nullptr)}};
    return j;
}

inline VerificationReport report_from_json(const Json &j) {
    using detail::member;
    auto rat = [](const Json &x, const std::string &w) { return detail::rational_from_json(x, w); };
    auto integer = [](const Json &x, const std::string &w) { return detail::integer_from_json(x, w); };

    InstanceFile inst = instance_from_json(member(j, "input", "report"));
    VerificationReport r{std::nullopt, inst.body, inst.lattice, {}, 0, 0, 0, std::nullopt, {}, {}, {}, {}, {},
                         std::nullopt};
    const Json &spec = member(j, "spec", "report");
    if (!spec.is_null())
        r.spec = spec_from_json(spec);
    r.minima = minima_from_json(member(j, "minima", "report"));
    r.count = integer(member(j, "count", "report"), "count");
    const Json &b = member(j, "bounds", "report");
    r.first_bound = integer(member(b, "first", "bounds"), "bounds.first");
    r.conjecture_bound = integer(member(b, "conjecture", "bounds"), "bounds.conjecture");
    if (!member(b, "main", "bounds").is_null())
        r.main_bound = integer(b["main"], "bounds.main");
    r.floor_terms.q = detail::integer_vector_from_json(member(j, "floor_terms", "report"), "floor_terms");
    r.chain.n = detail::integer_vector_from_json(member(j, "chain", "report"), "chain");
    const Json &l = member(j, "lemma", "report");
    r.lemma.lhs = integer(member(l, "lhs", "lemma"), "lemma.lhs");
    r.lemma.rhs = integer(member(l, "rhs", "lemma"), "lemma.rhs");
    const Json &v = member(j, "volume", "report");
    if (!member(v, "method", "volume").is_string())
        throw ParseError("volume.method: expected a string");
    r.volume.method = v["method"].get<std::string>();
    r.volume.resolution = rat(member(v, "resolution", "volume"), "volume.resolution");
    r.volume.inradius = rat(member(v, "inradius", "volume"), "volume.inradius");
    r.volume.lower_bound = rat(member(v, "lower_bound", "volume"), "volume.lower_bound");
    r.volume.upper_bound = rat(member(v, "upper_bound", "volume"), "volume.upper_bound");
    const Json &checks = member(j, "checks", "report");
    const Json &holds = member(j, "holds", "report");
    for (const auto &name : checks::all()) {
        const Json &s = member(checks, name.c_str(), "checks");
        if (!s.is_string())
            throw ParseError("checks." + name + ": expected a string");
        r.checks[name] = CheckResult{parse_check_status(s.get<std::string>()),
                                     detail::optional_bool(member(holds, name.c_str(), "holds"))};
    }
    const Json &t = member(j, "tightness_ratio", "report");
    if (!t.is_null())
        r.tightness_ratio = rat(t, "tightness_ratio");
    return r;
}

inline Json to_json(const CampaignSummary &s, const std::vector<VerificationReport> &reports) {
    Json counts = Json::object();
    for (const auto &[name, m] : s.status_counts)
        for (const auto &[status, n] : m)
            counts[name][status] = n;
    Json seeds = Json::array();
    for (auto i : s.conjecture_violations)
        seeds.push_back(reports[i].spec ? Json(reports[i].spec->seed) : Json(i));
    Json alarms = Json::array();
    for (auto i : s.bug_alarms)
        alarms.push_back(reports[i].spec ? Json(reports[i].spec->seed) : Json(i));
    Json j{{"instances", s.instances},
           {"failures", s.failures},
           {"status_counts", counts},
           {"bug_alarm_seeds", alarms},
           {"conjecture_violation_seeds_d3plus", seeds},
           {"max_ratio", s.max_ratio ? Json(to_string(*s.max_ratio)) : Json(nullptr)},
           {"max_ratio_seed", nullptr}};
    if (s.max_ratio_index && reports[*s.max_ratio_index].spec)
        j["max_ratio_seed"] = reports[*s.max_ratio_index].spec->seed;
    return j;
}

}  // namespace latpts

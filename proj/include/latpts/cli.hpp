#pragma once

// The `latpts` command line: count, succmin, verify, fuzz.

#include "latpts/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace latpts::cli {

enum ExitCode : int {
    kPass = 0,
    kAssertionFailure = 1,
    kInputError = 2,
    kInvariantViolation = 3,
    kBugAlarm = 4,
};

inline const char *kCsvHelp =
    "fuzz CSV columns, in order:\n"
    "  seed, dim, kind, lattice, range,\n"
    "  count, first_bound, conjecture_bound, main_bound, chain_product, ratio,\n"
    "  monotone-minima, witness-validity, lemma-2.1, kernel, thm-1.4, eq-1.4,\n"
    "  mink-1, mink-2, conj-d2\n"
    "Bounds are exact integers, ratio is count/main_bound as p/q, and each\n"
    "check column is pass|fail|reported|skipped|bug-alarm.\n"
    "\n"
    "Exit codes: 0 pass, 1 assertion failure, 2 input error,\n"
    "            3 invariant violation, 4 bug alarm.";

struct Options {
    std::string input;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string mu = "1";
    bool strict = false;
    std::size_t dim = 2;
    std::size_t count = 100;
    std::string kind = "all";
    long range = 4;
    std::string lattice = "all";
    std::string out = "csv";
};

namespace detail {

inline std::string read_input(const std::string &path, std::istream &in) {
    if (path.empty() || path == "-")
        return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open input file '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(f), {});
}

inline void diagnostic(std::ostream &err, bool color, const std::string &label, const std::string &msg) {
    if (color)
        err << "\033[1;31m" << label << ":\033[0m " << msg << "\n";
    else
        err << label << ": " << msg << "\n";
}

inline std::vector<InstanceSpec> fuzz_specs(const Options &o) {
    std::vector<BodyKind> kinds;
    if (o.kind == "all")
        kinds = {BodyKind::Box, BodyKind::HPolytope, BodyKind::Ellipsoid};
    else
        kinds = {parse_body_kind(o.kind)};
    std::vector<LatticeKind> lats;
    if (o.lattice == "all")
        lats = {LatticeKind::Identity, LatticeKind::Diagonal, LatticeKind::UnimodularDiagonal};
    else
        lats = {parse_lattice_kind(o.lattice)};
    std::vector<InstanceSpec> specs;
    for (std::size_t i = 0; i < o.count; ++i) {
        InstanceSpec s;
        s.seed = o.seed + i;
        s.dim = o.dim;
        s.body_kind = kinds[i % kinds.size()];
        s.lattice_kind = lats[(i / kinds.size()) % lats.size()];
        s.coeff_range = o.range;
        validate(s);
        specs.push_back(s);
    }
    return specs;
}

inline int report_exit(const VerificationReport &r) {
    if (r.has_bug_alarm())
        return kBugAlarm;
    return r.has_failure() ? kAssertionFailure : kPass;
}

inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

inline int cmd_count(const Options &o, std::istream &in, std::ostream &out) {
    InstanceFile f = parse_instance(read_input(o.input, in));
    GaugeValue mu = parse_gauge(o.mu);
    Integer n = latpts::count(f.body, f.lattice, mu, o.strict);
    out << dump(Json{{"count", to_string(n)}});
    return kPass;
}

inline int cmd_succmin(const Options &o, std::istream &in, std::ostream &out) {
    InstanceFile f = parse_instance(read_input(o.input, in));
    out << dump(to_json(successive_minima(f.body, f.lattice)));
    return kPass;
}

inline int cmd_verify(const Options &o, std::istream &in, std::ostream &out) {
    InstanceFile f = parse_instance(read_input(o.input, in));
    VerificationReport r = verify(f.body, f.lattice);
    out << dump(to_json(r));
    return report_exit(r);
}

inline int cmd_fuzz(const Options &o, std::ostream &out, std::ostream &err, bool color) {
    std::vector<InstanceSpec> specs = fuzz_specs(o);
    if (specs.empty())
        return kPass;
    CampaignResult res = campaign(specs, o.threads);
    OracleResult oracle = oracle_campaign(specs, o.threads);

    if (o.out == "json") {
        Json reports = Json::array();
        for (const auto &r : res.reports)
            reports.push_back(to_json(r));
        Json summary = to_json(res.summary, res.reports);
        summary["oracle_checked"] = oracle.checked;
        summary["oracle_mismatches"] = oracle.mismatches.size();
        out << dump(Json{{"reports", reports}, {"summary", summary}});
    } else {
        std::ostringstream csv;
        write_csv(csv, res.reports);
        out << csv.str();
    }
    err << summary_line(res.summary, res.reports) << " oracle_checked=" << oracle.checked
        << " oracle_mismatches=" << oracle.mismatches.size() << "\n";
    for (const auto &m : oracle.mismatches)
        diagnostic(err, color, "oracle mismatch", "seed " + std::to_string(specs[m.index].seed) + ": " + m.what);

    if (!res.summary.bug_alarms.empty() || !oracle.agree())
        return kBugAlarm;
    return res.summary.failures ? kAssertionFailure : kPass;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name. Output documents are
/// written to `out` in one piece; diagnostics go to `err`.
inline int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err,
               bool color) {
    Options o;
    CLI::App app{"Exact successive minima and lattice point counts of symmetric convex bodies", "latpts"};
    app.footer(kCsvHelp);
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--input", o.input, "Instance JSON file (default: stdin)");
    app.add_option("--seed", o.seed, "Base seed for fuzz instances");
    app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));

    auto *count = app.add_subcommand("count", "Count lattice points in mu*K");
    count->add_option("--mu", o.mu, "Dilation: p/q or sqrt(p/q)");
    count->add_flag("--strict", o.strict, "Count the interior only");
    app.add_subcommand("succmin", "Successive minima and witnesses");
    app.add_subcommand("verify", "Run every check on one instance");
    auto *fuzz = app.add_subcommand("fuzz", "Seeded campaign with CSV or JSON output");
    fuzz->add_option("--dim", o.dim, "Dimension (1..6)");
    fuzz->add_option("--count", o.count, "Number of instances");
    fuzz->add_option("--kind", o.kind, "box|hpolytope|ellipsoid|all");
    fuzz->add_option("--range", o.range, "Numerator/denominator bound (1..16)");
    fuzz->add_option("--lattice", o.lattice, "identity|diagonal|unimodular-diagonal|all");
    fuzz->add_option("--out", o.out, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError &e) {
        detail::diagnostic(err, color, "error", e.what());
        return kInputError;
    }

    try {
        if (count->parsed())
            return detail::cmd_count(o, in, out);
        if (app.got_subcommand("succmin"))
            return detail::cmd_succmin(o, in, out);
        if (app.got_subcommand("verify"))
            return detail::cmd_verify(o, in, out);
        return detail::cmd_fuzz(o, out, err, color);
    } catch (const ParseError &e) {
        detail::diagnostic(err, color, "input error", e.what());
        return kInputError;
    } catch (const DimensionError &e) {
        detail::diagnostic(err, color, "input error", e.what());
        return kInputError;
    } catch (const BugAlarm &e) {
        detail::diagnostic(err, color, "bug alarm", e.what());
        return kBugAlarm;
    } catch (const GenerationError &e) {
        detail::diagnostic(err, color, "invariant violation", e.what());
        return kInvariantViolation;
    } catch (const Error &e) {
        detail::diagnostic(err, color, "invariant violation", e.what());
        return kInvariantViolation;
    }
}

}  // namespace latpts::cli

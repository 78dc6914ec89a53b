#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace latpts;
using namespace latpts::testing;

namespace {

std::string csv_of(const std::vector<VerificationReport> &reports) {
    std::ostringstream os;
    write_csv(os, reports);
    return os.str();
}

}  // namespace

TEST(Generate, DeterministicAndInRange) {
    InstanceSpec spec{7, 2, BodyKind::Box, 4, LatticeKind::Identity};
    Instance a = generate(spec), b = generate(spec);
    EXPECT_EQ(a.body, b.body);
    EXPECT_EQ(a.lattice, b.lattice);
    EXPECT_EQ(a.lattice, Lattice::standard(2));
    for (const auto &w : std::get<Box>(a.body.shape()).halfwidths) {
        EXPECT_GT(w, 0);
        EXPECT_LE(w, 4);
    }
    for (const auto &s : mixed_specs(30, 3, 5, 77)) {
        Instance x = generate(s), y = generate(s);
        EXPECT_EQ(x.body, y.body);
        EXPECT_EQ(x.lattice, y.lattice);
        EXPECT_EQ(to_string(s.body_kind), x.body.kind_name());
    }
}

TEST(Generate, ValidatesSpec) {
    EXPECT_THROW(generate({1, 7, BodyKind::Box, 4, LatticeKind::Identity}), ParseError);
    EXPECT_THROW(generate({1, 0, BodyKind::Box, 4, LatticeKind::Identity}), ParseError);
    EXPECT_THROW(generate({1, 2, BodyKind::Box, 17, LatticeKind::Identity}), ParseError);
    EXPECT_THROW(parse_body_kind("sphere"), ParseError);
    EXPECT_EQ(parse_lattice_kind("unimodular-diagonal"), LatticeKind::UnimodularDiagonal);
}

TEST(Generate, DistinctSeedsUsuallyDiffer) {
    int same = 0;
    for (std::uint64_t s = 0; s < 20; ++s)
        same += generate({s, 3, BodyKind::HPolytope, 4, LatticeKind::Diagonal}).body ==
                generate({s + 1000, 3, BodyKind::HPolytope, 4, LatticeKind::Diagonal}).body;
    RecordProperty("identical_pairs", same);
    EXPECT_LT(same, 20);
}

TEST(Verify, UnitSquare) {
    auto r = verify(SymmetricBody::box(rvec({1, 1})), Lattice::standard(2));
    EXPECT_EQ(r.count, 9);
    EXPECT_EQ(r.conjecture_bound, 9);
    EXPECT_EQ(*r.main_bound, 18);
    EXPECT_EQ(r.tightness_ratio, R(1, 2));
    EXPECT_EQ(r.checks.size(), checks::all().size());
    for (const auto &[name, res] : r.checks)
        EXPECT_EQ(res.status, CheckStatus::Pass) << name;
}

TEST(Verify, Box13) {
    auto r = verify(SymmetricBody::box(rvec({1, 3})), Lattice::standard(2));
    EXPECT_EQ(r.count, 21);
    EXPECT_EQ(r.conjecture_bound, 21);
    EXPECT_EQ(*r.main_bound, 42);
    EXPECT_EQ(r.floor_terms.q, ivec({7, 3}));
    EXPECT_EQ(r.chain.n, ivec({9, 3}));  // 7 = 2*3 + 1, so n_1 = 7 + 3 - 1
    EXPECT_EQ(r.lemma.rhs, 27);
    EXPECT_EQ(r.checks.at(checks::kMainBound).status, CheckStatus::Pass);
    EXPECT_FALSE(r.has_failure());
}

TEST(Verify, DimensionOneGate) {
    auto r = verify(SymmetricBody::box(rvec({R(5, 2)})), Lattice::standard(1));
    EXPECT_EQ(r.checks.at(checks::kMainBound).status, CheckStatus::Skipped);
    EXPECT_FALSE(r.checks.at(checks::kMainBound).holds);
    EXPECT_EQ(r.checks.at(checks::kFirstBound).status, CheckStatus::Pass);
    EXPECT_FALSE(r.tightness_ratio);
    EXPECT_FALSE(r.main_bound);
    EXPECT_EQ(r.checks.at(checks::kConjecturePlane).status, CheckStatus::Reported);
}

TEST(Verify, VolumeBoundsBracketTheVolume) {
    // The unit square written as a polytope: lower <= 4 <= upper.
    auto sq = verify(SymmetricBody::hpolytope(rmat({{1, 0}, {0, 1}})), Lattice::standard(2));
    EXPECT_EQ(sq.volume.method, "riemann");
    EXPECT_LE(sq.volume.lower_bound, 4);
    EXPECT_GE(sq.volume.upper_bound, 4);
    EXPECT_EQ(sq.checks.at(checks::kMinkowskiSecond).status, CheckStatus::Pass);

    auto disc = verify(SymmetricBody::ellipsoid(RationalMatrix::identity(2)), Lattice::standard(2));
    EXPECT_LT(disc.volume.lower_bound, R(314159, 100000));
    EXPECT_GT(disc.volume.upper_bound, R(314160, 100000));
    EXPECT_LE(disc.volume.resolution, R(1, 32));
    EXPECT_EQ(disc.checks.at(checks::kMinkowskiFirst).status, CheckStatus::Pass);

    auto box = verify(SymmetricBody::box(rvec({1, 3})), Lattice::standard(2));
    EXPECT_EQ(box.volume.method, "exact");
    EXPECT_EQ(box.volume.lower_bound, 12);
}

TEST(Verify, RandomInstancesSatisfyTheChain) {
    for (std::size_t d = 2; d <= 3; ++d)
        for (const auto &spec : mixed_specs(18, d, 4, 5000 + 100 * d)) {
            auto r = verify(spec);
            EXPECT_FALSE(r.has_failure()) << "seed " << spec.seed;
            EXPECT_FALSE(r.has_bug_alarm());
            EXPECT_LE(r.count, r.lemma.rhs);
            EXPECT_EQ(r.lemma.rhs, product(r.chain.n));
            EXPECT_LT(r.lemma.rhs, *r.main_bound);
            EXPECT_LT(*r.tightness_ratio, 1);
            EXPECT_EQ(r.spec, spec);
        }
}

TEST(Campaign, BoxesInThePlane) {
    std::vector<InstanceSpec> specs;
    for (std::uint64_t i = 0; i < 100; ++i)
        specs.push_back({i, 2, BodyKind::Box, 4, LatticeKind::Identity});
    auto res = campaign(specs, 2);
    EXPECT_EQ(res.summary.instances, 100u);
    EXPECT_EQ(res.summary.failures, 0u);
    EXPECT_TRUE(res.summary.bug_alarms.empty());
    ASSERT_TRUE(res.summary.max_ratio);
    EXPECT_LE(*res.summary.max_ratio, R(1, 2));
    RecordProperty("max_ratio", to_string(*res.summary.max_ratio));
}

TEST(Campaign, Empty) {
    auto res = campaign({}, 4);
    EXPECT_TRUE(res.reports.empty());
    EXPECT_EQ(res.summary, CampaignSummary{});
}

TEST(Campaign, ConjectureIsOnlyReportedAboveThePlane) {
    std::vector<InstanceSpec> specs;
    for (std::uint64_t i = 0; i < 12; ++i)
        specs.push_back({i, 3, BodyKind::Ellipsoid, 4, static_cast<LatticeKind>(i % 3)});
    auto res = campaign(specs);
    EXPECT_EQ(res.summary.status_counts.at(checks::kConjecturePlane).at("reported"), 12u);
    EXPECT_EQ(res.summary.status_counts.at(checks::kConjecturePlane).count("fail"), 0u);
}

TEST(Campaign, ThreadCountDoesNotChangeOutput) {
    auto specs = mixed_specs(24, 2, 4, 6000);
    auto serial = campaign(specs, 1), parallel = campaign(specs, 4);
    EXPECT_EQ(csv_of(serial.reports), csv_of(parallel.reports));
    EXPECT_EQ(serial.summary, parallel.summary);
}

TEST(Campaign, CsvHeaderAndShape) {
    auto res = campaign(mixed_specs(3, 2, 4, 1));
    std::string csv = csv_of(res.reports);
    std::istringstream is(csv);
    std::string header, line;
    std::getline(is, header);
    EXPECT_EQ(header.rfind("seed,dim,kind,lattice,range,count,", 0), 0u);
    std::size_t cols = std::count(header.begin(), header.end(), ',') + 1;
    EXPECT_EQ(cols, csv_columns().size());
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(std::size_t(std::count(line.begin(), line.end(), ',') + 1), cols);
    }
    EXPECT_EQ(rows, 3);
}

TEST(OracleCampaign, Examples) {
    EXPECT_TRUE(oracle_campaign(mixed_specs(50, 2, 4, 7000)).agree());
    OracleResult unit = oracle_campaign({{0, 2, BodyKind::Box, 1, LatticeKind::Identity}});
    EXPECT_EQ(unit.checked, 1u);
    EXPECT_TRUE(unit.agree());
    EXPECT_TRUE(oracle_campaign(mixed_specs(20, 3, 3, 7100)).agree());
    EXPECT_EQ(oracle_campaign(mixed_specs(3, 4, 3, 7200)).checked, 0u) << "d > 3 is out of scope";
}

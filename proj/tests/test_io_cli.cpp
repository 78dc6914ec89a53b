#include "latpts/cli.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace latpts;
using namespace latpts::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args, const std::string &stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err, false);
    return {code, out.str(), err.str()};
}

const char *kUnitSquare = R"({"dim":2,"body":{"kind":"box","halfwidths":["1",1]}})";
const char *kBox13 = R"({"dim":2,"body":{"kind":"box","halfwidths":["1","3"]}})";

}  // namespace

TEST(InstanceJson, ParsesEveryKind) {
    auto box = parse_instance(kBox13);
    EXPECT_EQ(box.body, SymmetricBody::box(rvec({1, 3})));
    EXPECT_EQ(box.lattice, Lattice::standard(2));
    auto poly = parse_instance(
        R"({"dim":2,"body":{"kind":"hpolytope","normals":[["1","1"],["1","-1"],["1/2","0"]]},
            "lattice":{"basis":[["2","1"],["0","1/3"]]}})");
    EXPECT_EQ(poly.body, SymmetricBody::hpolytope(rmat({{1, 1}, {1, -1}, {R(1, 2), 0}})));
    EXPECT_EQ(poly.lattice.basis(), rmat({{2, 1}, {0, R(1, 3)}}));
    auto ell = parse_instance(R"({"dim":1,"body":{"kind":"ellipsoid","gram":[["4"]]}})");
    EXPECT_EQ(ell.body, SymmetricBody::ellipsoid(rmat({{4}})));
}

TEST(InstanceJson, ErrorsAreClassified) {
    EXPECT_THROW(parse_instance("{"), ParseError);
    EXPECT_THROW(parse_instance(R"({"dim":2,"body":{"kind":"box","halfwidths":["1"]}})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"dim":2,"body":{"kind":"box","halfwidths":["1","1/0"]}})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"dim":2,"body":{"kind":"box","halfwidths":["1",1.5]}})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"dim":2,"body":{"kind":"cube"}})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"body":{"kind":"box","halfwidths":["1"]}})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"dim":2,"body":{"kind":"hpolytope","normals":[["1","1"],["2","2"]]}})"),
                 InvariantError);
    EXPECT_THROW(parse_instance(R"({"dim":1,"body":{"kind":"box","halfwidths":["1"]},"lattice":{"basis":[["0"]]}})"),
                 RankError);
}

TEST(InstanceJson, RoundTrip) {
    for (std::size_t d = 1; d <= 4; ++d)
        for (const auto &spec : mixed_specs(9, d, 6, 8000 + d)) {
            Instance inst = generate(spec);
            InstanceFile f{inst.body, inst.lattice};
            EXPECT_EQ(instance_from_json(Json::parse(to_json(f).dump())), f);
        }
}

TEST(ReportJson, RoundTrip) {
    auto specs = mixed_specs(9, 2, 4, 8100);
    specs.push_back({1, 1, BodyKind::Ellipsoid, 3, LatticeKind::Diagonal});
    for (const auto &spec : specs) {
        auto r = verify(spec);
        std::string text = to_json(r).dump(2);
        auto back = report_from_json(Json::parse(text));
        EXPECT_EQ(back, r);
        for (std::size_t i = 0; i < r.minima.dim(); ++i)
            EXPECT_TRUE(back.minima.minima[i].identical(r.minima.minima[i]));
        EXPECT_EQ(to_json(back).dump(2), text);
    }
    auto unsourced = verify(SymmetricBody::box(rvec({1, 1})), Lattice::standard(2));
    EXPECT_EQ(report_from_json(to_json(unsourced)), unsourced);
}

TEST(ReportJson, GaugeWireFormat) {
    EXPECT_EQ(to_json(GaugeValue::rational(R(1, 3))).dump(), R"("1/3")");
    EXPECT_EQ(to_json(GaugeValue::sqrt_of(2)).dump(), R"({"sqrt":"2"})");
    EXPECT_TRUE(gauge_from_json(Json::parse(R"({"sqrt":"2"})")).identical(GaugeValue::sqrt_of(2)));
    EXPECT_TRUE(parse_gauge("sqrt(5/2)").identical(GaugeValue::sqrt_of(R(5, 2))));
    EXPECT_THROW(parse_gauge("sqrt(2"), ParseError);
}

TEST(Cli, Count) {
    auto r = run_cli({"count", "--mu", "1"}, kUnitSquare);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"count":"9"})"));
    EXPECT_EQ(Json::parse(run_cli({"count"}, kBox13).out)["count"], "21");
    EXPECT_EQ(Json::parse(run_cli({"count", "--strict"}, kUnitSquare).out)["count"], "1");
    auto disc = R"({"dim":2,"body":{"kind":"ellipsoid","gram":[["1","0"],["0","1"]]}})";
    EXPECT_EQ(Json::parse(run_cli({"count", "--mu", "sqrt(2)"}, disc).out)["count"], "9");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"count"}, R"({"dim":2,"body":{"kind":"box","halfwidths":["1","1/0"]}})").code, 2);
    EXPECT_EQ(run_cli({"count", "--mu", "x"}, kUnitSquare).code, 2);
    EXPECT_EQ(run_cli({"count"}, R"({"dim":2,"body":{"kind":"hpolytope","normals":[["1","1"],["2","2"]]}})").code, 3);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"count", "--input", "/nonexistent/file.json"}).code, 2);
    auto r = run_cli({"fuzz", "--dim", "7"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run_cli({"fuzz", "--kind", "sphere", "--count", "1"}).code, 2);
    EXPECT_EQ(run_cli({"fuzz", "--out", "xml"}).code, 2);
}

TEST(Cli, Succmin) {
    auto r = Json::parse(run_cli({"succmin"}, R"({"dim":3,"body":{"kind":"box","halfwidths":[1,1,1]}})").out);
    EXPECT_EQ(r["minima"], Json::parse(R"(["1","1","1"])"));
    EXPECT_EQ(Json::parse(run_cli({"succmin"}, kBox13).out)["minima"], Json::parse(R"(["1/3","1"])"));
    auto e = Json::parse(
        run_cli({"succmin"}, R"({"dim":2,"body":{"kind":"ellipsoid","gram":[["1","0"],["0","1"]]}})").out);
    EXPECT_EQ(e["minima"], Json::parse(R"([{"sqrt":"1"},{"sqrt":"1"}])"));
    EXPECT_EQ(e["witnesses"], Json::parse(R"([["1","0"],["0","1"]])"));
}

TEST(Cli, Verify) {
    auto r = run_cli({"verify"}, kUnitSquare);
    EXPECT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["checks"]["thm-1.4"], "pass");
    EXPECT_EQ(j["count"], "9");
    EXPECT_EQ(j["bounds"]["main"], "18");
    auto one = run_cli({"verify"}, R"({"dim":1,"body":{"kind":"box","halfwidths":["2"]}})");
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(Json::parse(one.out)["checks"]["thm-1.4"], "skipped");
    EXPECT_EQ(report_from_json(j), verify(SymmetricBody::box(rvec({1, 1})), Lattice::standard(2)));
}

TEST(Cli, FuzzCsv) {
    auto r = run_cli({"fuzz", "--dim", "2", "--count", "100", "--seed", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 101);
    EXPECT_NE(r.err.find("failures=0"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("oracle_mismatches=0"), std::string::npos);
    auto again = run_cli({"--threads", "3", "fuzz", "--dim", "2", "--count", "100", "--seed", "1"});
    EXPECT_EQ(again.out, r.out);
}

TEST(Cli, FuzzEmptyAndJson) {
    auto empty = run_cli({"fuzz", "--count", "0"});
    EXPECT_EQ(empty.code, 0);
    EXPECT_TRUE(empty.out.empty());
    auto j = run_cli({"fuzz", "--count", "4", "--dim", "3", "--out", "json", "--seed", "9"});
    EXPECT_EQ(j.code, 0) << j.err;
    auto doc = Json::parse(j.out);
    EXPECT_EQ(doc["reports"].size(), 4u);
    EXPECT_EQ(doc["summary"]["instances"], 4);
    EXPECT_EQ(report_from_json(doc["reports"][0]), verify(InstanceSpec{9, 3, BodyKind::Box, 4, LatticeKind::Identity}));
}

TEST(Cli, HelpDocumentsCsvColumns) {
    auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("chain_product"), std::string::npos);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
    for (const auto &c : csv_columns())
        EXPECT_NE(r.out.find(c), std::string::npos) << c;
}

TEST(Cli, ByteIdenticalOutput) {
    auto a = run_cli({"verify"}, kBox13), b = run_cli({"verify"}, kBox13);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
}

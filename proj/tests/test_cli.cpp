#include "nullasd/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nullasd;
namespace fs = std::filesystem;

namespace {

const std::string kModels = NULLASD_MODELS_DIR;

std::string model(const std::string& name) { return kModels + "/" + name; }

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json checks_of(const Run& r)
{
    auto j = json::parse(r.out);
    return j["checks"];
}

json check(const Run& r, const std::string& name)
{
    for (const auto& c : checks_of(r))
        if (c["name"] == name)
            return c;
    ADD_FAILURE() << "no check named " << name << " in\n" << r.out;
    return json();
}

std::string temp_file(const std::string& name, const std::string& text)
{
    auto p = fs::temp_directory_path() / ("nullasd_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST(Cli, SampleModelsRoundTrip)
{
    int n = 0;
    for (const auto& entry : fs::directory_iterator(kModels)) {
        if (entry.path().extension() != ".json")
            continue;
        ++n;
        SCOPED_TRACE(entry.path().string());
        auto once = model_to_json(load_model(entry.path().string()));
        auto twice = model_to_json(parse_model(once));
        EXPECT_EQ(once.dump(), twice.dump());
    }
    EXPECT_GE(n, 10);
}

TEST(Cli, BuiltMetricRoundTrips)
{
    for (const char* name : {"nontwisting_generic.json", "twisting_exp.json", "sparling_tod.json"}) {
        SCOPED_TRACE(name);
        Geometry geo = realize(load_model(model(name)));
        auto once = model_to_json(metric_model(geo));
        auto again = parse_model(once);
        EXPECT_EQ(once.dump(), model_to_json(again).dump());
        Geometry back = realize(again);
        ASSERT_TRUE(back.tet && back.k);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                EXPECT_TRUE(((*back.g)(a, b) - (*geo.g)(a, b)).is_zero());
        EXPECT_EQ(back.tet->sigma(), geo.tet->sigma());
    }
}

TEST(Cli, DocumentedExamples)
{
    auto asd = cli({"verify-asd", model("nontwisting_generic.json"), "--points", "50", "--seed", "7"});
    EXPECT_EQ(asd.code, 0) << asd.err;
    auto primed = check(asd, "primed weyl");
    EXPECT_TRUE(primed["verdict"] == "sampled_zero" || primed["verdict"] == "proven_zero");

    auto cls = cli({"classify", model("betazero_a2x.json"), "--at", "x=1,y=2,z=3,t=0"});
    EXPECT_EQ(cls.code, 0) << cls.err;
    EXPECT_EQ(check(cls, "petrov")["value"]["type"], "III");

    auto flat = cli({"projective-flatness", model("flat.json")});
    EXPECT_EQ(flat.code, 0);
    EXPECT_EQ(check(flat, "flatness")["verdict"], "proven_zero");
}

TEST(Cli, NumericFallbackWithoutTetrad)
{
    auto r = cli({"verify-asd", model("ppwave_metric.json"), "--points", "5"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(check(r, "primed weyl")["verdict"], "sampled_zero");
    auto c = cli({"classify", model("ppwave_metric.json"), "--points", "5"});
    EXPECT_EQ(check(c, "petrov")["value"]["type"], "N");
    EXPECT_EQ(check(c, "petrov primed")["value"]["type"], "O");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"frobnicate", model("flat.json")}).code, 2);
    EXPECT_EQ(cli({"twist", model("no_such_model.json")}).code, 2);
    EXPECT_EQ(cli({"twist", temp_file("bad.json", "{ not json")}).code, 2);
    auto undeclared = temp_file("undeclared.json",
                                R"({"kind": "projective", "coordinates": ["x", "y"], "A": ["w", "0", "0", "0"]})");
    auto r = cli({"projective-flatness", undeclared});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("undeclared symbol 'w'"), std::string::npos) << r.err;
    EXPECT_EQ(cli({"verify-killing", model("flat.json")}).code, 2);
    EXPECT_EQ(cli({"classify", model("betazero_a2x.json"), "--at", "x"}).code, 2);
    EXPECT_EQ(cli({"classify", model("betazero_a2x.json"), "--format", "yaml"}).code, 2);

    EXPECT_EQ(cli({"heavenly", model("heavenly.json"), "--points", "5"}).code, 0);
    auto bad = cli({"heavenly", model("heavenly_bad.json"), "--points", "5"});
    EXPECT_EQ(bad.code, 1);
    auto eq = check(bad, "heavenly equation");
    EXPECT_EQ(eq["verdict"], "nonzero");
    EXPECT_TRUE(eq.contains("witness"));
}

TEST(Cli, ObservationsDoNotFail)
{
    // Nonzero curvature and a twisting Killing vector are observations.
    auto r = cli({"twist", model("twisting_exp.json"), "--points", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(check(r, "twist")["verdict"], "nonzero");
    EXPECT_FALSE(check(r, "twist")["required"].get<bool>());
}

TEST(Cli, NonKillingVectorFails)
{
    auto path = temp_file("nonkilling.json", R"({
      "kind": "metric",
      "coordinates": ["T", "X", "Y", "Z"],
      "g": [["0", "0", "1", "0"], ["0", "0", "0", "-1"], ["1", "0", "-2*X^2*Y^2", "0"], ["0", "-1", "0", "0"]],
      "killing": ["0", "1", "0", "0"]
    })");
    auto r = cli({"verify-killing", path, "--points", "5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(check(r, "conformal killing")["verdict"], "nonzero");
}

TEST(Cli, ReportIsDeterministic)
{
    std::vector<std::string> args{"report-all", model("betazero_a2x.json"), "--points", "8", "--seed", "3"};
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    auto names = checks_of(a);
    for (std::size_t i = 1; i < names.size(); ++i)
        EXPECT_LE(names[i - 1]["name"].get<std::string>(), names[i]["name"].get<std::string>());
}

TEST(Cli, BuildEmitsAParseableMetric)
{
    auto out = fs::temp_directory_path() / "nullasd_test_built.json";
    auto r = cli({"build", "--builder", "ppwave", "--param", "Q=X*Y^2", "--out", out.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    auto asd = cli({"verify-asd", out.string()});
    EXPECT_EQ(asd.code, 0);
    EXPECT_EQ(check(asd, "primed weyl")["verdict"], "proven_zero");
    EXPECT_EQ(cli({"build", "--builder", "ppwave", "--param", "R=1"}).code, 2);
}

TEST(Cli, BuildReportsViolatedConstraints)
{
    auto r = cli({"build", "--builder", "twisting", "--param", "G=x*z^3", "--points", "5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("constraint"), std::string::npos);
}

TEST(Cli, GeodesicOfFlatStructureIsStraight)
{
    auto r = cli({"projective-geodesic", model("flat.json"), "--init", "0,1,2", "--step", "0.25", "--steps", "4"});
    EXPECT_EQ(r.code, 0);
    auto pts = check(r, "geodesic")["value"]["points"];
    ASSERT_EQ(pts.size(), 5u);
    for (const auto& p : pts)
        EXPECT_NEAR(p[1].get<double>(), 1 + 2 * p[0].get<double>(), 1e-12);
}

TEST(Cli, LiftCheckOnSecondKillingVector)
{
    auto path = temp_file("pp_second.json", R"({
      "kind": "metric",
      "coordinates": ["T", "X", "Y", "Z"],
      "g": [["0", "0", "1", "0"], ["0", "0", "0", "-1"], ["1", "0", "-2*Y^3 - 2*Y", "0"], ["0", "-1", "0", "0"]],
      "tetrad": {
        "theta00p": ["1", "0", "-Y^3 - Y", "0"],
        "theta01p": ["0", "0", "0", "1"],
        "theta10p": ["0", "1", "0", "0"],
        "theta11p": ["0", "0", "1", "0"]
      },
      "killing": ["Z", "Y", "0", "0"]
    })");
    auto r = cli({"lift-check", path, "--points", "5"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(check(r, "lift")["value"][4], "0");
    EXPECT_EQ(check(r, "commutation L0")["verdict"], "proven_zero");
    EXPECT_EQ(check(r, "commutation L1")["verdict"], "proven_zero");
}

TEST(Cli, TextFormat)
{
    auto r = cli({"projective-flatness", model("derivative_xy2.json"), "--format", "text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("flatness: nonzero (observation)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("16*x^2*y + 4"), std::string::npos);
}

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace su2phase::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "su2phase");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

TEST(ParseState, Kinds) {
    EXPECT_EQ(parse_state("xnum:3").angle_sector->j().twice(), 3);
    EXPECT_EQ(parse_state("xnum:8-singleport").two_mode.amps().count({8, 0}), 1u);
    EXPECT_EQ(parse_state("spinupx:1").angle_sector->j().twice(), 2);
    EXPECT_EQ(parse_state("spinupx:3/2").angle_sector->flavor(), Flavor::spin);
    const auto fock = parse_state("fock:1,0=1;2,0=0.6+0.8i");
    EXPECT_FALSE(fock.angle_sector.has_value());
    EXPECT_NEAR(fock.two_mode.norm_squared(), 1.0, 1e-15);
    EXPECT_NEAR(std::arg(fock.two_mode.amps().at({2, 0})), std::atan2(0.8, 0.6), 1e-15);
}

TEST(ParseState, Rejections) {
    for (const char* bad : {"xnum:0", "xnum:65", "xnum:two", "spinupx:0", "spinupx:3/4", "qubit:1", "fock:1,0",
                            "fock:1,0=0", "fock:-1,0=1", "xnum"}) {
        EXPECT_THROW(parse_state(bad), std::invalid_argument) << bad;
    }
}

TEST(AngleDist, TwoPhotonPeakValue) {
    const auto data = angle_dataset(parse_state("xnum:2"), 721);
    ASSERT_EQ(data.columns.size(), 4u);
    const auto& phi = data.columns[0].values;
    const auto& p = data.columns[1].values;
    EXPECT_EQ(phi[360], 0.0);
    EXPECT_NEAR(p[360], std::pow(1.0 / std::sqrt(2.0) + 1.0, 2) / (2 * kPi), 1e-15);
}

TEST(AngleDist, OddPhotonNumbersFloorAtQuarterTurn) {
    for (const char* spec : {"xnum:1", "xnum:3"}) {
        const auto data = angle_dataset(parse_state(spec), 721);
        for (int k : {180, 540}) {
            EXPECT_NEAR(std::fabs(data.columns[0].values[k]), kPi / 2, 0.0);
            EXPECT_EQ(data.columns[2].values[k], kDbFloor);
            EXPECT_EQ(data.columns[3].values[k], 1.0);
        }
    }
}

TEST(AngleDist, DbClampLeavesLinearColumn) {
    const auto data = angle_dataset(parse_state("xnum:3"), 721);
    for (std::size_t k = 0; k < data.columns[1].values.size(); ++k) {
        const double p = data.columns[1].values[k];
        EXPECT_GE(p, 0.0);
        if (data.columns[3].values[k] == 0.0) {
            EXPECT_NEAR(data.columns[2].values[k], 10 * std::log10(2 * kPi * p), 1e-12);
        }
    }
}

TEST(AngleDist, RejectsSmallGridAndFock) {
    EXPECT_THROW(angle_dataset(parse_state("xnum:2"), 63), std::invalid_argument);
    EXPECT_THROW(angle_dataset(parse_state("fock:1,0=1"), 721), std::invalid_argument);
}

TEST(Interf, ColumnsFromTopOutcomeDown) {
    const auto data = interferometer_dataset(parse_state("xnum:4"), 721, -kPi, kPi);
    ASSERT_EQ(data.columns.size(), 7u);
    EXPECT_EQ(data.columns[1].name, "P_m=2");
    EXPECT_EQ(data.columns[5].name, "P_m=-2");
    EXPECT_EQ(data.columns[6].name, "sum");
    for (double s : data.columns[6].values) EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Interf, CsvLayout) {
    const auto r = invoke({"interf", "--state", "xnum:8", "--phi-points", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
    const auto rows = lines(r.out);
    std::size_t header = 0;
    while (rows[header].rfind("#", 0) == 0) ++header;
    EXPECT_EQ(rows[header], "Phi,P_m=4,P_m=3,P_m=2,P_m=1,P_m=0,P_m=-1,P_m=-2,P_m=-3,P_m=-4,sum");
    EXPECT_EQ(rows.size(), header + 12);
    EXPECT_NE(r.out.find("# command: su2phase interf --state xnum:8 --phi-points 11"), std::string::npos);
}

TEST(Interf, HalfIntegerOutcomeNames) {
    const auto data = interferometer_dataset(parse_state("spinupx:3/2"), 5, 0.0, kPi);
    EXPECT_EQ(data.columns[1].name, "P_m=3/2");
    EXPECT_EQ(data.columns[4].name, "P_m=-3/2");
    EXPECT_EQ(data.columns[0].values.back(), kPi);
}

TEST(Csv, SeventeenDigits) {
    Dataset d{"angle_polar", {}, {{"x", {0.1, 1.0 / 3.0}}}};
    std::ostringstream out;
    write_csv(out, d);
    EXPECT_EQ(out.str(), "# kind: angle_polar\nx\n0.10000000000000001\n0.33333333333333331\n");
}

TEST(ParseExperiment, DefaultsAndAlias) {
    const auto in = parse_experiment(R"({"state": "xnum:8-singleport", "Phi_true": 1.1, "n_shots": 10000, "seed": 7})");
    EXPECT_EQ(in.config.grid_points, 2048);
    EXPECT_EQ(in.config.refine_tol, 1e-9);
    EXPECT_FALSE(in.config.weighted);
    EXPECT_EQ(in.config.phi_true, 1.1);
    EXPECT_EQ(in.config.seed, 7u);
}

TEST(ParseExperiment, LargeSeed) {
    const auto in = parse_experiment(R"({"state": "xnum:2", "phi_true": 0, "n_shots": 1, "seed": 18446744073709551615})");
    EXPECT_EQ(in.config.seed, 18446744073709551615ull);
}

int error_line(const std::string& text) {
    try {
        parse_experiment(text);
    } catch (const SchemaError& e) {
        return e.line();
    }
    return 0;
}

TEST(ParseExperiment, LineNumberedErrors) {
    EXPECT_EQ(error_line("{\n\"state\": \"xnum:2\",\n\"phi_true\": 4.0,\n\"n_shots\": 1, \"seed\": 1}"), 3);
    EXPECT_EQ(error_line("{\n\"state\": \"xnum:2\",\n\"phi_true\": 1,\n\"n_shots\": 1.5, \"seed\": 1}"), 4);
    EXPECT_EQ(error_line("{\n\"state\": \"bogus:2\",\n\"phi_true\": 1, \"n_shots\": 1, \"seed\": 1}"), 2);
    EXPECT_EQ(error_line("{\"state\": \"xnum:2\", \"phi_true\": 1, \"n_shots\": 1, \"seed\": 1,\n\n\"color\": 3}"), 3);
    EXPECT_EQ(error_line("{\"state\": \"xnum:2\",\n\"phi_true\": 1, \"n_shots\": 1, \"seed\": -1}"), 2);
    EXPECT_EQ(error_line("{\"state\": \"xnum:2\",\n\"phi_true\": 1,\n\n \"n_shots\" 1}"), 4);
    EXPECT_EQ(error_line("[1, 2]"), 1);
    EXPECT_EQ(error_line("{\"state\": \"xnum:2\", \"n_shots\": 1, \"seed\": 1}"), 1);
}

TEST(ParseSweep, Fields) {
    const auto in = parse_sweep(R"({"states": ["xnum:4", "xnum:8"], "phis": [1.0], "n_shots": [100, 1000], "seeds": 20})");
    EXPECT_EQ(in.states.size(), 2u);
    EXPECT_EQ(in.options.seeds, 20);
    EXPECT_EQ(in.options.base_seed, 1u);
    EXPECT_THROW(parse_sweep(R"({"states": [], "phis": [1.0], "n_shots": [100]})"), SchemaError);
    EXPECT_THROW(parse_sweep(R"({"states": ["xnum:4"], "phis": [-1.0], "n_shots": [100]})"), SchemaError);
}

class QpsiCommand : public ::testing::Test {
protected:
    std::string write(const std::string& name, const std::string& body) {
        const std::string path = ::testing::TempDir() + name;
        std::ofstream(path) << body;
        return path;
    }
};

TEST_F(QpsiCommand, ReportDeterministicAcrossThreads) {
    const auto path = write("exp.json", R"({"state": "xnum:8-singleport", "phi_true": 1.1, "n_shots": 10000, "seed": 7})");
    const auto a = invoke({"qpsi", "--config", path});
    const auto b = invoke({"--threads", "3", "qpsi", "--config", path});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    const auto ja = nlohmann::json::parse(a.out);
    const auto jb = nlohmann::json::parse(b.out);
    EXPECT_EQ(ja["phi_hat"].dump(), jb["phi_hat"].dump());
    EXPECT_EQ(ja["counts"], jb["counts"]);
    EXPECT_GE(ja["phi_hat"].get<double>(), 0.0);
    EXPECT_LE(ja["phi_hat"].get<double>(), kPi);
    EXPECT_EQ(ja["diagnostics"]["seed"], 7);
    // the serialized double reads back bit-exact
    EXPECT_EQ(nlohmann::json::parse(ja["phi_hat"].dump()).get<double>(), ja["phi_hat"].get<double>());
}

TEST_F(QpsiCommand, EndpointEstimate) {
    const auto path = write("zero.json", R"({"state": "xnum:8", "phi_true": 0, "n_shots": 500, "seed": 3})");
    const auto r = invoke({"qpsi", "--config", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(nlohmann::json::parse(r.out)["phi_hat"].get<double>(), 1e-9);
}

TEST_F(QpsiCommand, SchemaErrorExitsOneWithLine) {
    const auto path = write("bad.json", "{\n  \"state\": \"xnum:8\",\n  \"phi_true\": \"wide\",\n  \"n_shots\": 1,\n  \"seed\": 1\n}");
    const auto r = invoke({"qpsi", "--config", path});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("bad.json:3:"), std::string::npos) << r.err;
}

TEST_F(QpsiCommand, CurveOutput) {
    const auto path = write("curve_exp.json", R"({"state": "xnum:4", "phi_true": 0.8, "n_shots": 100, "seed": 1, "grid_points": 64})");
    const auto curve = ::testing::TempDir() + "curve.csv";
    const auto r = invoke({"qpsi", "--config", path, "--curve", curve});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(curve);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto rows = lines(text);
    std::size_t header = 0;
    while (rows[header].rfind("#", 0) == 0) ++header;
    EXPECT_EQ(rows[header], "Phi,objective");
    EXPECT_EQ(rows.size(), header + 65);
}

TEST_F(QpsiCommand, SweepRmseFallsWithShots) {
    const auto path = write("sweep.json",
                            R"({"states": ["xnum:8-singleport"], "phis": [1.0], "n_shots": [100, 1000, 10000], "seeds": 200})");
    const auto r = invoke({"qpsi", "--sweep", path, "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = nlohmann::json::parse(r.out)["rows"];
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_GT(rows[0]["rmse"].get<double>(), rows[1]["rmse"].get<double>());
    EXPECT_GT(rows[1]["rmse"].get<double>(), rows[2]["rmse"].get<double>());
}

TEST_F(QpsiCommand, DegenerateMixtureExitsTwo) {
    // |1,1> gives P_m(Phi) = P_m(pi - Phi): the objective has mirror minima.
    const auto path = write("mirror.json", R"({"state": "fock:1,1=1", "phi_true": 1.0, "n_shots": 100, "seed": 1})");
    const auto r = invoke({"qpsi", "--config", path});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["degenerate"].get<bool>());
}

TEST(Run, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"angle-dist"}).code, 1);
    EXPECT_EQ(invoke({"angle-dist", "--state", "xnum:2", "--format", "xml"}).code, 1);
    EXPECT_EQ(invoke({"angle-dist", "--state", "xnum:99"}).code, 1);
    EXPECT_EQ(invoke({"qpsi"}).code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

}  // namespace
}  // namespace su2phase::cli

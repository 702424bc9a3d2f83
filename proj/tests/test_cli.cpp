#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "shrinkrisk/cli.h"
#include "shrinkrisk/csv.h"
#include "shrinkrisk/risk_finite.h"

namespace shrinkrisk::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    f.push_back(cur);
    return f;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / ("shrinkrisk_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Csv, FormatsDoubles) {
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(2.0 / 3.0), "0.66666666666666663");
    const double v = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Csv, QuotesWhenNeeded) {
    EXPECT_EQ(csv_line({"a", "b,c", "d\"e"}), "a,\"b,c\",\"d\"\"e\"");
    EXPECT_EQ(csv_line({}), "");
}

TEST(Csv, RiskPointRows) {
    std::ostringstream os;
    write_risk_points(os, {risk_ols(101, 100, 1.0), risk_js_oracle(101, 50, 2.0)});
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], kRiskPointHeader);
    EXPECT_EQ(fields_of(lines[1])[5], "inf");
    EXPECT_EQ(fields_of(lines[1])[6], "formula");
}

TEST(ConfigFile, ParsesKeyValuePairs) {
    const fs::path p = scratch_dir() / "parse.cfg";
    std::ofstream(p) << "# comment\n\nn = 101\n d=50 # trailing\nestimators = ols, js-oracle\n";
    EXPECT_EQ(read_config_file(p.string()),
              (std::vector<std::string>{"--n", "101", "--d", "50", "--estimators", "ols, js-oracle"}));
}

TEST(ConfigFile, RejectsMalformedInput) {
    const fs::path p = scratch_dir() / "bad.cfg";
    std::ofstream(p) << "n 101\n";
    EXPECT_THROW(read_config_file(p.string()), std::invalid_argument);
    EXPECT_THROW(read_config_file((scratch_dir() / "missing.cfg").string()), std::invalid_argument);
}

TEST(SplitList, TrimsAndDropsEmpty) {
    EXPECT_EQ(split_list(" a, b ,,c "), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_TRUE(split_list("").empty());
}

TEST(Formulas, JamesSteinOracleRow) {
    const Result r = invoke({"formulas", "--n", "101", "--d", "50", "--eta2", "2", "--estimators", "js-oracle"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], kRiskPointHeader);
    const auto f = fields_of(lines[1]);
    EXPECT_EQ(f[0], "js-oracle");
    EXPECT_NEAR(std::stod(f[5]), 0.66667, 1e-5);
    EXPECT_EQ(f[6], "formula");
    EXPECT_FALSE(f[4].empty());
}

TEST(Formulas, SingularBandIsInf) {
    const Result r = invoke({"formulas", "--n", "101", "--d", "100,101,102", "--eta2", "1", "--estimators", "ols"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 4u);
    for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(fields_of(lines[i])[5], "inf");
}

TEST(Formulas, DefaultGridCoversEstimators) {
    const Result r = invoke({"formulas", "--n", "50", "--d", "10", "--eta2", "0,1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(lines_of(r.out).size(), 1u + 2u * 6u);
}

TEST(Formulas, EmptyEstimatorListFails) {
    const Result r = invoke({"formulas", "--n", "101", "--d", "50", "--eta2", "2", "--estimators="});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("no estimators selected"), std::string::npos) << r.err;
}

TEST(Formulas, RejectsSimulationOnlyEstimator) {
    const Result r = invoke({"formulas", "--n", "101", "--d", "50", "--eta2", "2", "--estimators", "adaptive-ridge"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("adaptive-ridge"), std::string::npos);
}

TEST(Formulas, ReportsOffendingKey) {
    const Result r = invoke({"formulas", "--n", "abc", "--d", "50", "--eta2", "2"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("n"), std::string::npos);
    const Result neg = invoke({"formulas", "--n", "101", "--d", "50", "--eta2", "-2"});
    EXPECT_EQ(neg.code, kExitValidation);
    EXPECT_NE(neg.err.find("eta2"), std::string::npos);
}

TEST(Asymptotic, FigureTwoHasFourCurves) {
    const Result r = invoke({"asymptotic", "--figure", "2", "--eta2", "5", "--resolution", "50"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = lines_of(r.out);
    EXPECT_EQ(lines[0], kFigureHeader);
    std::set<std::string> names;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = fields_of(lines[i]);
        EXPECT_EQ(f[0], "2");
        EXPECT_EQ(std::stod(f[3]), 5.0);
        names.insert(f[1]);
    }
    EXPECT_EQ(names.size(), 4u);
}

TEST(Asymptotic, RerunIsByteIdentical) {
    const fs::path a = scratch_dir() / "fig_a.csv";
    const fs::path b = scratch_dir() / "fig_b.csv";
    ASSERT_EQ(invoke({"asymptotic", "--figure", "3", "--out", a.string()}).code, kExitOk);
    ASSERT_EQ(invoke({"asymptotic", "--figure", "3", "--out", b.string()}).code, kExitOk);
    const std::string sa = slurp(a);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b));
}

TEST(Asymptotic, ValidatesFigureAndResolution) {
    const Result res = invoke({"asymptotic", "--figure", "2", "--resolution", "1"});
    EXPECT_EQ(res.code, kExitValidation);
    EXPECT_NE(res.err.find("resolution"), std::string::npos);
    const Result bad = invoke({"asymptotic", "--figure", "9"});
    EXPECT_EQ(bad.code, kExitValidation);
    EXPECT_NE(bad.err.find("1a, 1b, 2, 3"), std::string::npos) << bad.err;
    EXPECT_EQ(invoke({"asymptotic"}).code, kExitValidation);
}

TEST(Simulate, AdaptiveRidgeOutsideDomain) {
    const Result r = invoke({"simulate", "--n", "50", "--d", "60", "--eta2", "1", "--estimators",
                             "adaptive-ridge", "--seed", "1", "--replicates", "10"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("d < n"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("noise variance"), std::string::npos) << r.err;
}

TEST(Simulate, RequiresSeed) {
    const Result r = invoke({"simulate", "--n", "50", "--d", "10", "--eta2", "1", "--replicates", "10"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("seed"), std::string::npos);
    EXPECT_EQ(invoke({"spectra", "--n", "50", "--d", "10"}).code, kExitValidation);
    EXPECT_EQ(invoke({"adaptive", "--rho", "0.25", "--eta2", "2"}).code, kExitValidation);
}

TEST(Simulate, DeterministicAcrossWorkers) {
    const std::vector<std::string> base{"simulate", "--n",          "60",      "--d",    "20",
                                        "--eta2",   "1,3",          "--seed",  "5",      "--replicates",
                                        "100",      "--estimators", "ols,adaptive-js"};
    auto one = base;
    one.insert(one.end(), {"--workers", "1"});
    auto three = base;
    three.insert(three.end(), {"--workers", "3"});
    const Result a = invoke(one);
    const Result b = invoke(three);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto lines = lines_of(a.out);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(fields_of(lines[1])[6], "monte-carlo");
    EXPECT_FALSE(fields_of(lines[1])[7].empty());
}

TEST(Simulate, BaranchikAndPluginExperiments) {
    const Result bar = invoke({"simulate", "--experiment", "baranchik", "--n", "200", "--rho", "0.25",
                               "--eta2", "2", "--c", "0.1,0.3", "--seed", "3", "--replicates", "50"});
    ASSERT_EQ(bar.code, kExitOk) << bar.err;
    EXPECT_EQ(lines_of(bar.out).size(), 3u);
    const Result bad = invoke({"simulate", "--experiment", "baranchik", "--n", "200", "--rho", "0.25",
                               "--eta2", "2", "--c", "5", "--seed", "3", "--replicates", "50"});
    EXPECT_EQ(bad.code, kExitValidation);
    const Result plug = invoke({"simulate", "--experiment", "plugin", "--n", "100", "--d", "10",
                                "--eta2", "2", "--seed", "3", "--replicates", "50"});
    ASSERT_EQ(plug.code, kExitOk) << plug.err;
    EXPECT_EQ(lines_of(plug.out)[0], "quantity,value,mc_stderr");
    EXPECT_NE(plug.out.find("risk:true-sigma"), std::string::npos);
}

TEST(Adaptive, ProducesThreePairsPerN) {
    const Result r = invoke({"adaptive", "--n", "100,200", "--rho", "0.25", "--eta2", "2", "--seed", "2",
                             "--replicates", "40"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(fields_of(lines[1])[0], "ridge");
}

TEST(Spectra, SupDistanceBelowThreshold) {
    const Result r = invoke({"spectra", "--n", "1000", "--d", "500", "--seed", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "n,d,rho,mean_eigenvalue,zero_count,expected_zero_count,sup_distance");
    const auto f = fields_of(lines[1]);
    EXPECT_LT(std::stod(f[6]), 0.05);
    EXPECT_EQ(f[4], "0");
}

TEST(Config, CommandLineOverridesFile) {
    const fs::path cfg = scratch_dir() / "override.cfg";
    std::ofstream(cfg) << "n = 101\nd = 50\neta2 = 1\nestimators = js-oracle\n";
    const Result from_file = invoke({"formulas", "--config", cfg.string()});
    ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
    EXPECT_EQ(std::stod(fields_of(lines_of(from_file.out)[1])[3]), 1.0);
    const Result overridden = invoke({"formulas", "--config", cfg.string(), "--eta2", "2"});
    ASSERT_EQ(overridden.code, kExitOk) << overridden.err;
    const auto f = fields_of(lines_of(overridden.out)[1]);
    EXPECT_EQ(std::stod(f[3]), 2.0);
    EXPECT_NEAR(std::stod(f[5]), 0.66667, 1e-5);
}

TEST(Config, SeedFromFileMakesRunsReproducible) {
    const fs::path cfg = scratch_dir() / "seeded.cfg";
    std::ofstream(cfg) << "n = 60\nd = 20\neta2 = 1\nseed = 77\nreplicates = 50\nestimators = adaptive-ridge\n";
    const Result a = invoke({"simulate", "--config", cfg.string()});
    const Result b = invoke({"simulate", "--config", cfg.string()});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Verify, DefaultSuitePasses) {
    const Result r = invoke({"verify"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_EQ(r.out.find("FAIL "), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("PASS asymptotic chain"), std::string::npos);
    EXPECT_NE(r.out.find(" 0 failed"), std::string::npos);
}

TEST(Usage, HelpAndUnknownCommand) {
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
    EXPECT_EQ(invoke({"bogus"}).code, kExitValidation);
    EXPECT_EQ(invoke({}).code, kExitValidation);
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(SHRINKRISK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_binary("formulas --n 101 --d 50 --eta2 2"), kExitOk);
    EXPECT_EQ(run_binary("formulas --n 101 --d 50 --eta2 2 --estimators="), kExitValidation);
    EXPECT_EQ(run_binary("asymptotic --figure 7"), kExitValidation);
}

TEST(Binary, WritesOutputFile) {
    const fs::path out = scratch_dir() / "binary.csv";
    ASSERT_EQ(run_binary("asymptotic --figure 1b --resolution 20 --out " + out.string()), kExitOk);
    const auto lines = lines_of(slurp(out));
    EXPECT_EQ(lines[0], kFigureHeader);
    EXPECT_EQ(lines.size(), 1u + 2u * 21u);
}

}  // namespace
}  // namespace shrinkrisk::cli

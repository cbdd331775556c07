#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "boxcox/cli.hpp"
#include "boxcox/estimator.hpp"
#include "boxcox/ingest.hpp"

using namespace boxcox;
namespace fs = std::filesystem;

namespace {

const std::string kTextile = BOXCOX_DATA_DIR "/textile.csv";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "boxcox-cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "boxcox_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("estimate on textile reports every method") {
    const auto r = run({"estimate", "--input", kTextile});
    REQUIRE(r.code == cli::kExitPassed);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 27);
    CHECK(j["methods"].size() == 8);
    const std::vector<std::pair<std::string, double>> lattice{{"SW", -0.06}, {"AD", -0.08}, {"CVM", -0.10},
                                                              {"PT", 0.02},  {"SF", -0.06}, {"LT", -0.06},
                                                              {"JB", -0.06}};
    for (const auto& [method, lambda] : lattice) {
        bool found = false;
        for (const auto& m : j["methods"]) {
            if (m["method"] == method) {
                found = true;
                CHECK(m["lambda_hat"].get<double>() == doctest::Approx(lambda));
                CHECK(m["validation"]["adjusted_p"].size() == 3);
            }
        }
        CHECK(found);
    }
    CHECK(j["raw_screening"]["SW"]["p_value"].get<double>() == doctest::Approx(3.031e-5).epsilon(1e-3));
}

TEST_CASE("report round-trips to the printed precision") {
    const auto path = scratch("report.json");
    const auto r = run({"estimate", "--input", kTextile, "--method", "sw,ad,jb", "--report", path.string()});
    REQUIRE(r.code == cli::kExitPassed);
    CHECK(r.out.find("SW") != std::string::npos);  // table on stdout
    const auto j = nlohmann::json::parse(slurp(path));
    const auto y = ensure_positive(io::ingest(kTextile, io::ColumnSelector{}));
    for (const auto& m : j["methods"]) {
        const auto kind = *test_kind(*parse_method(m["method"].get<std::string>()));
        const auto est = estimate(y, kind);
        CHECK(m["lambda_hat"].get<double>() == std::round(est.lambda_hat * 1000.0) / 1000.0);
        for (std::size_t i = 0; i < 3; ++i) {
            const double printed = m["validation"]["adjusted_p"][std::string(name(ValidationReport::kTests[i]))];
            CHECK(printed == std::round(est.validation.adjusted_p[i] * 1000.0) / 1000.0);
        }
    }
}

TEST_CASE("identical runs give byte-identical reports") {
    const auto a = scratch("a.json"), b = scratch("b.json");
    REQUIRE(run({"estimate", "--input", kTextile, "--seed", "5", "--report", a.string()}).code == 0);
    REQUIRE(run({"estimate", "--input", kTextile, "--seed", "5", "--report", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("transformed and plot outputs") {
    const auto t = scratch("t.csv"), p = scratch("p.csv");
    const auto r = run({"estimate", "--input", kTextile, "--method", "sw,pt", "--transformed", t.string(),
                        "--plot-data", p.string()});
    REQUIRE(r.code == 0);
    const auto tl = lines(slurp(t));
    REQUIRE(tl.size() == 28);
    CHECK(tl[0] == "raw,SW,PT");
    // First textile value 674 at λ = -0.06.
    std::istringstream row(tl[1]);
    std::string raw, sw;
    std::getline(row, raw, ',');
    std::getline(row, sw, ',');
    CHECK(std::stod(raw) == 674.0);
    CHECK(std::stod(sw) == doctest::Approx(std::expm1(-0.06 * std::log(674.0)) / -0.06).epsilon(1e-9));

    const auto pl = lines(slurp(p));
    REQUIRE(pl.size() > 1);
    CHECK(pl[0] == "series,x,density");
    std::size_t raw_rows = 0, sw_rows = 0;
    for (std::size_t i = 1; i < pl.size(); ++i) {
        raw_rows += pl[i].rfind("raw,", 0) == 0;
        sw_rows += pl[i].rfind("SW,", 0) == 0;
    }
    CHECK(raw_rows == 128);
    CHECK(sw_rows == 128);
}

TEST_CASE("exit codes") {
    const auto empty = scratch("empty.csv");
    write(empty, "");
    const auto e = run({"estimate", "--input", empty.string()});
    CHECK(e.code == cli::kExitError);
    CHECK(!e.err.empty());
    CHECK(run({"estimate", "--input", "/nonexistent.csv"}).code == cli::kExitError);
    CHECK(run({"estimate", "--input", kTextile, "--method", "zz"}).code == cli::kExitError);
    CHECK(run({"estimate", "--input", kTextile, "--step", "1"}).code == cli::kExitError);
    CHECK(run({}).code == cli::kExitError);

    // An evenly spaced sample is too light-tailed for any power transform.
    std::string text = "v\n";
    for (int i = 0; i < 400; ++i) text += std::to_string(10.0 + i / 399.0) + "\n";
    const auto flat = scratch("uniform.csv");
    write(flat, text);
    const auto b = run({"estimate", "--input", flat.string(), "--method", "sw"});
    CHECK(b.code == cli::kExitValidationFailed);
    CHECK(nlohmann::json::parse(b.out)["methods"][0]["validation"]["passed"] == false);

    // Two far-apart clusters drive the optimum off every widened grid.
    std::string two = "v\n";
    for (int i = 0; i < 30; ++i) two += std::to_string(i < 15 ? 1.0 + 0.001 * i : 100.0 + 0.001 * i) + "\n";
    const auto bimodal = scratch("bimodal.csv");
    write(bimodal, two);
    const auto c = run({"estimate", "--input", bimodal.string(), "--method", "sw"});
    CHECK(c.code == cli::kExitError);
    CHECK(nlohmann::json::parse(c.out)["methods"][0]["error"]["kind"] == "non-interior-optimum");
}

TEST_CASE("simulate rejects study I at lambda 0") {
    const auto r = run({"simulate", "--study", "I", "--lambda", "0", "--n", "20", "--reps", "5"});
    CHECK(r.code == cli::kExitError);
    CHECK(r.err.find("lambda") != std::string::npos);
}

TEST_CASE("simulate output is independent of threads") {
    const auto a = scratch("sim1.csv"), b = scratch("sim2.csv");
    const std::vector<std::string> base{"simulate", "--study", "II", "--n", "20,30", "--sigma", "5",
                                        "--lambda", "-1,0", "--method", "sw,jb", "--reps", "20", "--seed", "3"};
    auto args1 = base, args2 = base;
    args1.insert(args1.end(), {"--threads", "1", "--output", a.string()});
    args2.insert(args2.end(), {"--threads", "2", "--output", b.string()});
    REQUIRE(run(args1).code == 0);
    REQUIRE(run(args2).code == 0);
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    const auto ls = lines(text);
    CHECK(ls.size() == 1 + 2 * 2 * 2);
    CHECK(ls[0] == "study,n,mu,sigma,true_lambda,method,bias,se,mse,failures,replications,seed");
}

TEST_CASE("method list parsing") {
    CHECK(cli::parse_methods("all").size() == kAllMethods.size());
    CHECK(cli::parse_methods("sw,AC") == std::vector<Method>{Method::sw, Method::ac});
    CHECK_THROWS((void)cli::parse_methods("sw,,x"));
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boxcox/estimator.hpp"
#include "boxcox/ingest.hpp"
#include "boxcox/simulation.hpp"

namespace boxcox::cli {

/// Exit codes of the `estimate` subcommand.
inline constexpr int kExitPassed = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidationFailed = 2;

struct RunConfig {
    std::string input;
    io::ColumnSelector column;
    std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
    double lambda_min = -3.0;
    double lambda_max = 3.0;
    double step = 0.01;
    double alpha = kDefaultAlpha;
    std::uint64_t seed = 1;
    std::size_t ac_repetitions = 100;
    std::optional<std::string> report_path;       // JSON; stdout when absent
    std::optional<std::string> transformed_path;  // CSV raw + one column per method
    std::optional<std::string> plot_path;         // CSV series,x,density
    Convention convention = Convention::conventional;
    std::size_t plot_points = 128;
};

/// Parses "all" or a comma-separated list such as "sw,pt,ac".
[[nodiscard]] std::vector<Method> parse_methods(const std::string& text);

/// Loads data, screens raw normality, runs every selected method and writes
/// the requested outputs. Returns 0 when every method's validation passed,
/// 2 when any failed and 1 on error. Diagnostics go to `err`.
int cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct SimulateConfig {
    sim::Study study = sim::Study::two;
    std::vector<std::size_t> sizes;  // empty: preset sizes
    std::vector<double> mus;         // all three empty: preset conditions
    std::vector<double> sigmas;
    std::vector<double> lambdas;
    std::optional<std::vector<Method>> methods;  // empty: preset methods
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    std::size_t ac_repetitions = 100;
    std::optional<std::string> output_path;  // stdout when absent
    unsigned threads = 0;
};

/// Expands the config into concrete conditions (validated).
[[nodiscard]] std::vector<sim::StudyCondition> build_conditions(const SimulateConfig& cfg);

/// Runs every condition and writes the CSV. Returns 0 on success, 1 on error.
int cmd_simulate(const SimulateConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point (subcommands `estimate` and `simulate`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace boxcox::cli

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxcox/estimator.hpp"

namespace boxcox::io {

struct MethodOutcome {
    Method method;
    std::optional<EstimationResult> result;
    std::string error_kind;  // set when result is empty
    std::string error_message;
};

struct EstimateReport {
    std::string input;
    std::string column;
    std::size_t n = 0;
    double shift = 0.0;
    /// Raw-data SW, SF, JB outcomes; empty where the sample size is unsupported.
    std::array<std::optional<TestOutcome>, 3> screening;
    std::vector<MethodOutcome> methods;
    LambdaGrid grid = default_grid();
    double alpha = kDefaultAlpha;
    std::uint64_t seed = 0;
    std::size_t ac_repetitions = 0;
};

/// λ and validation p-values rounded to 3 decimals; raw screening p-values to
/// 4 significant digits so very small values stay visible.
[[nodiscard]] double round_decimals(double v, int decimals);
[[nodiscard]] double round_significant(double v, int digits);

/// Pretty-printed JSON document, byte-identical for identical input.
[[nodiscard]] std::string to_json_text(const EstimateReport& report);

/// Table with one column per method: λ̂ and the adjusted SW/SF/JB p-values.
[[nodiscard]] std::string format_table(const EstimateReport& report);

}  // namespace boxcox::io

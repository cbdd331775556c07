#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "boxcox/estimator.hpp"

namespace boxcox {

struct AcConfig {
    double covariate_mean = 0.0;
    double covariate_sd = 100.0;
    std::size_t repetitions = 100;
    std::uint64_t seed = 1;
    LambdaGrid grid = default_grid();
    std::size_t max_expansions = kDefaultMaxExpansions;
    double alpha = kDefaultAlpha;
};

/// Residual sum of squares of the least-squares line of `response` on `covariate`.
/// Throws ErrorKind::singular for a constant covariate.
[[nodiscard]] double ols_sse(std::span<const double> response, std::span<const double> covariate);

/// Per-repetition grid optima before aggregation.
struct AcRepetitions {
    LambdaGrid grid;
    std::size_t expansions = 0;
    std::vector<double> lambdas;  // one lattice λ per successful repetition
    std::vector<double> sse;      // normalized SSE at that λ
};

/// For each repetition, draws an N(mean, sd^2) covariate from substream
/// (seed, repetition), regresses the geometric-mean-normalized transform on
/// it at every candidate λ and keeps the λ with the smallest SSE.
[[nodiscard]] AcRepetitions ac_repetitions(const Sample& y, const AcConfig& cfg);

/// Mean of the per-repetition optima, validated at that (off-lattice) λ.
[[nodiscard]] EstimationResult ac_estimate(const Sample& y, const AcConfig& cfg);

}  // namespace boxcox

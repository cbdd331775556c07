#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "boxcox/estimator.hpp"

namespace boxcox::sim {

/// Study I: data (zλ + 1)^{1/λ} from N(μ, σ²) draws.
/// Study II: data x^{1/λ} (exp x at λ = 0) where x are N(μ, σ²) draws shifted to positivity.
enum class Study { one, two };

[[nodiscard]] std::string_view name(Study study) noexcept;  // "I" / "II"
[[nodiscard]] std::optional<Study> parse_study(std::string_view text) noexcept;

struct StudyCondition {
    Study study = Study::two;
    std::size_t n = 20;
    double mu = 0.0;
    double sigma = 1.0;
    double true_lambda = 0.0;
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::sw};
    std::size_t ac_repetitions = 100;
    LambdaGrid grid = default_grid();
};

/// Throws ErrorKind::invalid_condition naming the violated constraint.
void check_condition(const StudyCondition& cond);

struct Accuracy {
    double mean = 0.0;
    double bias = 0.0;
    double se = 0.0;  // divisor R
    double mse = 0.0;  // bias^2 + se^2

    friend bool operator==(const Accuracy&, const Accuracy&) = default;
};

/// Throws ErrorKind::invalid_argument for an empty list.
[[nodiscard]] Accuracy summarize(std::span<const double> lambda_hats, double true_lambda);

struct MethodSummary {
    Method method;
    Accuracy accuracy;
    std::optional<double> percent_bias;  // undefined when the true λ is 0
    std::size_t successes = 0;
    std::size_t failures = 0;

    friend bool operator==(const MethodSummary&, const MethodSummary&) = default;
};

struct SimulationSummary {
    StudyCondition condition;
    std::vector<MethodSummary> methods;
    std::size_t generation_failures = 0;  // replications whose inverse transform was undefined

    [[nodiscard]] const MethodSummary& at(Method m) const;
};

/// Runs every replication (concurrently when `threads` > 1; 0 picks the
/// hardware concurrency). The result does not depend on the thread count.
[[nodiscard]] SimulationSummary run_study(const StudyCondition& cond, unsigned threads = 0);

/// Generates the sample of one replication; exposed for testing.
[[nodiscard]] std::vector<double> generate_replication(const StudyCondition& cond, std::size_t replication);

/// The preset (μ, σ, λ) triples for Study I crossed with the given sizes.
[[nodiscard]] std::vector<StudyCondition> study_one_preset(std::span<const std::size_t> sizes);
/// Study II grid: μ = 0, σ ∈ {1, 5}, λ ∈ {-5, -2, -1, 0, 2, 5} crossed with the given sizes.
[[nodiscard]] std::vector<StudyCondition> study_two_preset(std::span<const std::size_t> sizes);

/// study,n,mu,sigma,true_lambda,method,bias,se,mse,failures,replications,seed
void write_csv_header(std::ostream& os);
void write_csv_rows(std::ostream& os, const SimulationSummary& summary);

}  // namespace boxcox::sim

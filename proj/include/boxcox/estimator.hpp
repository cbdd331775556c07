#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "boxcox/normality.hpp"
#include "boxcox/transform.hpp"

namespace boxcox {

/// Closed interval of candidate λ values on the lattice lower + k * step.
class LambdaGrid {
public:
    /// Requires lower < upper, step > 0 and at least 10 steps across the interval.
    LambdaGrid(double lower, double upper, double step);

    [[nodiscard]] double lower() const noexcept { return lower_; }
    [[nodiscard]] double upper() const noexcept { return upper_; }
    [[nodiscard]] double step() const noexcept { return step_; }

    /// Ascending candidates. λ = 0 is always present when lower <= 0 <= upper,
    /// even if it is not a lattice point.
    [[nodiscard]] std::vector<double> points() const;

    /// Same step, half-width doubled about the centre.
    [[nodiscard]] LambdaGrid expanded() const;

    friend bool operator==(const LambdaGrid&, const LambdaGrid&) = default;

private:
    double lower_;
    double upper_;
    double step_;
};

[[nodiscard]] LambdaGrid default_grid();

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr std::size_t kDefaultMaxExpansions = 3;

/// Every estimator: the seven statistics plus the artificial-covariate regression.
enum class Method { sw, ad, cvm, pt, sf, lt, jb, ac };

inline constexpr std::array<Method, 8> kAllMethods = {Method::sw, Method::ad, Method::cvm, Method::pt,
                                                      Method::sf, Method::lt, Method::jb, Method::ac};

[[nodiscard]] std::string_view name(Method method) noexcept;
[[nodiscard]] std::optional<Method> parse_method(std::string_view text) noexcept;
[[nodiscard]] std::optional<TestKind> test_kind(Method method) noexcept;
[[nodiscard]] Method to_method(TestKind kind) noexcept;

/// Multiplicity-adjusted normality check of a transformed sample.
struct ValidationReport {
    static constexpr std::array<TestKind, 3> kTests = {TestKind::sw, TestKind::sf, TestKind::jb};

    std::array<double, 3> raw_p{};       // indexed like kTests
    std::array<double, 3> adjusted_p{};  // Benjamini-Hochberg
    double alpha = kDefaultAlpha;
    bool passed = false;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

struct EstimationResult {
    Method method;
    double lambda_hat;
    double objective;
    LambdaGrid grid;  // the grid the optimum was finally found on
    std::size_t expansions;
    double shift;
    ValidationReport validation;

    friend bool operator==(const EstimationResult&, const EstimationResult&) = default;
};

/// Benjamini-Hochberg step-up adjustment, returned in input order.
[[nodiscard]] std::vector<double> bh_adjust(std::span<const double> p);

/// SW, SF and JB p-values on `z`, BH-adjusted; passes when every adjusted p > alpha.
[[nodiscard]] ValidationReport validate(std::span<const double> z, double alpha = kDefaultAlpha);

struct ProfilePoint {
    double lambda;
    std::optional<double> statistic;  // empty where the transform or statistic is undefined
};

/// Statistic of the conventional transform at every grid candidate.
[[nodiscard]] std::vector<ProfilePoint> profile(const Sample& y, TestKind kind, const LambdaGrid& grid);

/// Index of the best defined point: arg-max for SW/SF, arg-min otherwise.
/// Ties go to the smaller λ. Empty when no point is defined.
[[nodiscard]] std::optional<std::size_t> select_optimum(std::span<const ProfilePoint> points, Direction dir);

/// Grid-search estimate of λ for one statistic. If the optimum sits on a grid
/// endpoint the grid is widened (up to `max_expansions` times); an optimum
/// still on the boundary after that raises NonInteriorOptimum.
[[nodiscard]] EstimationResult estimate(const Sample& y, TestKind kind, const LambdaGrid& grid = default_grid(),
                                        double alpha = kDefaultAlpha,
                                        std::size_t max_expansions = kDefaultMaxExpansions);

}  // namespace boxcox

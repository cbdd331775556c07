#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace boxcox {

/// The seven goodness-of-fit statistics used as estimation objectives.
enum class TestKind { sw, ad, cvm, pt, sf, lt, jb };

inline constexpr std::array<TestKind, 7> kAllTests = {TestKind::sw, TestKind::ad, TestKind::cvm, TestKind::pt,
                                                      TestKind::sf, TestKind::lt, TestKind::jb};

enum class Direction { maximize, minimize };

[[nodiscard]] constexpr Direction direction(TestKind kind) noexcept {
    return (kind == TestKind::sw || kind == TestKind::sf) ? Direction::maximize : Direction::minimize;
}

/// Upper-case short name ("SW", "AD", ...).
[[nodiscard]] std::string_view name(TestKind kind) noexcept;

/// Case-insensitive parse of the short name.
[[nodiscard]] std::optional<TestKind> parse_test_kind(std::string_view text) noexcept;

/// Smallest and largest sample size each statistic supports.
[[nodiscard]] std::size_t min_size(TestKind kind) noexcept;
[[nodiscard]] std::size_t max_size(TestKind kind) noexcept;

struct TestOutcome {
    TestKind kind;
    double statistic;
    std::optional<double> p_value;  // present for SW, SF and JB only
};

/// Precomputes everything that depends only on the sample size (Shapiro-Wilk
/// coefficients, Blom scores, Pearson class count) so a statistic can be
/// re-evaluated cheaply on many transformed samples of the same size.
///
/// `statistic` and `evaluate` take values already sorted ascending.
class StatisticEvaluator {
public:
    StatisticEvaluator(TestKind kind, std::size_t n);

    [[nodiscard]] TestKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    [[nodiscard]] double statistic(std::span<const double> sorted) const;
    [[nodiscard]] TestOutcome evaluate(std::span<const double> sorted) const;

private:
    struct Raw {
        double statistic;
        double complement;  // 1 - W for SW/SF, kept separately for tail precision
    };
    [[nodiscard]] Raw compute(std::span<const double> sorted) const;

    TestKind kind_;
    std::size_t n_;
    std::vector<double> weights_;  // SW half coefficients or SF scores for the lower half
    std::size_t classes_ = 0;      // Pearson
};

/// Royston's approximation of the Shapiro-Wilk coefficients a_1..a_{n/2}
/// (positive, a_1 pairs the extremes). Supports 3 <= n <= 5000.
[[nodiscard]] std::vector<double> shapiro_wilk_coefficients(std::size_t n);

/// Number of equiprobable classes ceil(2 n^{0.4}) used by the Pearson statistic.
[[nodiscard]] std::size_t pearson_class_count(std::size_t n) noexcept;

/// Chi-square with two degrees of freedom: upper tail exp(-x/2).
[[nodiscard]] double chisq2_sf(double x);

[[nodiscard]] TestOutcome shapiro_wilk(std::span<const double> sample);
[[nodiscard]] TestOutcome shapiro_francia(std::span<const double> sample);
[[nodiscard]] TestOutcome anderson_darling(std::span<const double> sample);
[[nodiscard]] TestOutcome cramer_von_mises(std::span<const double> sample);
[[nodiscard]] TestOutcome pearson_chisq(std::span<const double> sample);
[[nodiscard]] TestOutcome lilliefors(std::span<const double> sample);
[[nodiscard]] TestOutcome jarque_bera(std::span<const double> sample);

/// Dispatch by kind; the sample need not be sorted.
[[nodiscard]] TestOutcome run_test(TestKind kind, std::span<const double> sample);

}  // namespace boxcox

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace boxcox::stats {

/// Standard normal CDF. Throws ErrorKind::domain for non-finite input.
[[nodiscard]] double normal_cdf(double z);

/// Upper tail 1 - Φ(z), computed without cancellation.
[[nodiscard]] double normal_sf(double z);

/// Inverse standard normal CDF for p in (0, 1).
///
/// Acklam's rational approximation (relative error ~1e-9) followed by one
/// Halley step against normal_cdf, which brings the result to near machine
/// precision.
[[nodiscard]] double normal_quantile(double p);

/// Ascending copy of a sample. Construction sorts; `from_sorted` trusts the caller.
class SortedSample {
public:
    explicit SortedSample(std::span<const double> values);

    /// Wraps values the caller guarantees are non-decreasing (checked in debug builds).
    [[nodiscard]] static SortedSample from_sorted(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] double min() const noexcept { return values_.front(); }
    [[nodiscard]] double max() const noexcept { return values_.back(); }

private:
    SortedSample() = default;
    std::vector<double> values_;
};

struct MomentSummary {
    double mean = 0.0;
    double variance_unbiased = 0.0;  // divisor n - 1
    double skewness = 0.0;           // m3 / m2^{3/2}, divisor n
    double kurtosis = 0.0;           // m4 / m2^2, divisor n (not excess)
};

/// Requires n >= 3 and positive variance; a constant sample raises
/// ErrorKind::degenerate_sample.
[[nodiscard]] MomentSummary moments(std::span<const double> sample);

/// Mean and unbiased standard deviation only (two passes).
struct Location {
    double mean;
    double sd;
};
[[nodiscard]] Location mean_sd(std::span<const double> sample);

/// Linear-interpolation quantile (R type 7) of sorted data.
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double prob);

struct DensityPoint {
    double x;
    double density;
};

/// Silverman rule-of-thumb bandwidth 0.9 * min(s, IQR/1.34) * n^{-1/5}.
/// Falls back to s when the IQR is zero.
[[nodiscard]] double silverman_bandwidth(std::span<const double> sample);

/// Gaussian kernel density estimate on `grid_points` equally spaced abscissae
/// spanning [min - 3h, max + 3h].
[[nodiscard]] std::vector<DensityPoint> kde(std::span<const double> sample, std::size_t grid_points);

}  // namespace boxcox::stats

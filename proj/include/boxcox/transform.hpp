#pragma once

#include <span>
#include <vector>

namespace boxcox {

/// Observations plus the constant added to make them strictly positive.
class Sample {
public:
    /// Throws ErrorKind::domain on empty/non-finite input and
    /// ErrorKind::positivity when min(values) + shift <= 0.
    Sample(std::vector<double> values, double shift);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double shift() const noexcept { return shift_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    /// values + shift.
    [[nodiscard]] std::vector<double> shifted() const;

private:
    std::vector<double> values_;
    double shift_;
};

/// Relative size of the positivity offset: shift = -min + kShiftFraction * range.
inline constexpr double kShiftFraction = 1e-4;

/// Returns a Sample whose shifted values are all >= kShiftFraction * range > 0.
/// Positive input is left unshifted. A constant input is rejected as degenerate.
[[nodiscard]] Sample ensure_positive(std::span<const double> y);

/// conventional: (y^λ - 1)/λ; simple: y^λ. Both use log y at λ = 0.
enum class Convention { conventional, simple };

/// study1: (zλ + 1)^{1/λ}, the inverse of the conventional transform.
/// study2: z^{1/λ} (exp z at λ = 0), the inverse of the simple transform.
enum class InverseConvention { study1, study2 };

/// |λ| below this is treated as exactly zero.
inline constexpr double kLambdaZero = 1e-12;

/// Requires every value > 0; the error names the first offending index.
[[nodiscard]] std::vector<double> transform(std::span<const double> y, double lambda, Convention convention);
[[nodiscard]] std::vector<double> transform(const Sample& y, double lambda, Convention convention);

/// Writes the conventional transform of positive `y` into `out` (same size)
/// without validation; non-finite results are left for the caller to detect.
void transform_into(std::span<const double> y, double lambda, std::span<double> out) noexcept;

[[nodiscard]] std::vector<double> inverse_transform(std::span<const double> z, double lambda,
                                                    InverseConvention convention);

}  // namespace boxcox

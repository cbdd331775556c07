#include "boxcox/stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "boxcox/error.hpp"

namespace boxcox {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::degenerate_sample: return "degenerate-sample";
        case ErrorKind::unsupported_size: return "unsupported-size";
        case ErrorKind::positivity: return "positivity";
        case ErrorKind::inverse_domain: return "inverse-domain";
        case ErrorKind::non_interior_optimum: return "non-interior-optimum";
        case ErrorKind::estimation_failed: return "estimation-failed";
        case ErrorKind::singular: return "singular";
        case ErrorKind::ingestion: return "ingestion";
        case ErrorKind::invalid_condition: return "invalid-condition";
        case ErrorKind::invalid_argument: return "invalid-argument";
    }
    return "unknown";
}

}  // namespace boxcox

namespace boxcox::stats {

namespace {

// Acklam's coefficients.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                         1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                         6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                         -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                         3.754408661907416e+00};
constexpr double kLowTail = 0.02425;

double acklam(double p) {
    if (p < kLowTail) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

void require_degenerate_free(double var) {
    if (!(var > 0.0) || !std::isfinite(var)) {
        throw Error(ErrorKind::degenerate_sample, "sample has zero variance");
    }
}

}  // namespace

double normal_cdf(double z) {
    if (!std::isfinite(z)) {
        throw Error(ErrorKind::domain, "normal_cdf: argument must be finite");
    }
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_sf(double z) {
    if (!std::isfinite(z)) {
        throw Error(ErrorKind::domain, "normal_sf: argument must be finite");
    }
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::domain, "normal_quantile: p must lie in (0, 1), got " + std::to_string(p));
    }
    // Work in the lower half so the Halley residual is computed without cancellation.
    if (p > 0.5) {
        return -normal_quantile(1.0 - p);
    }
    double x = acklam(p);
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

SortedSample::SortedSample(std::span<const double> values) : values_(values.begin(), values.end()) {
    std::stable_sort(values_.begin(), values_.end());
}

SortedSample SortedSample::from_sorted(std::vector<double> values) {
    assert(std::is_sorted(values.begin(), values.end()));
    SortedSample s;
    s.values_ = std::move(values);
    return s;
}

Location mean_sd(std::span<const double> sample) {
    const auto n = static_cast<double>(sample.size());
    if (sample.size() < 2) {
        throw Error(ErrorKind::unsupported_size, "need at least 2 observations");
    }
    double sum = 0.0;
    for (double v : sample) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    const double var = ss / (n - 1.0);
    require_degenerate_free(var);
    return {mean, std::sqrt(var)};
}

MomentSummary moments(std::span<const double> sample) {
    if (sample.size() < 3) {
        throw Error(ErrorKind::unsupported_size, "moments: need at least 3 observations");
    }
    const auto n = static_cast<double>(sample.size());
    double sum = 0.0;
    for (double v : sample) sum += v;
    const double mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : sample) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    require_degenerate_free(m2);
    const double var_unbiased = m2 / (n - 1.0);
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {mean, var_unbiased, m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

double quantile_sorted(std::span<const double> sorted, double prob) {
    if (sorted.empty()) {
        throw Error(ErrorKind::unsupported_size, "quantile of empty sample");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double silverman_bandwidth(std::span<const double> sample) {
    if (sample.size() < 3) {
        throw Error(ErrorKind::unsupported_size, "kde: need at least 3 observations");
    }
    const auto [mean, sd] = mean_sd(sample);
    (void)mean;
    const SortedSample sorted(sample);
    const double iqr = quantile_sorted(sorted.values(), 0.75) - quantile_sorted(sorted.values(), 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
}

std::vector<DensityPoint> kde(std::span<const double> sample, std::size_t grid_points) {
    if (grid_points < 2) {
        throw Error(ErrorKind::invalid_argument, "kde: grid_points must be at least 2");
    }
    const double h = silverman_bandwidth(sample);
    const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
    const double lo = *lo_it - 3.0 * h;
    const double hi = *hi_it + 3.0 * h;
    const double dx = (hi - lo) / static_cast<double>(grid_points - 1);
    const double norm = 1.0 / (static_cast<double>(sample.size()) * h * std::sqrt(2.0 * std::numbers::pi));

    std::vector<DensityPoint> out;
    out.reserve(grid_points);
    for (std::size_t g = 0; g < grid_points; ++g) {
        const double x = lo + dx * static_cast<double>(g);
        double acc = 0.0;
        for (double v : sample) {
            const double u = (x - v) / h;
            acc += std::exp(-0.5 * u * u);
        }
        out.push_back({x, acc * norm});
    }
    return out;
}

}  // namespace boxcox::stats

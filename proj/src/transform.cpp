#include "boxcox/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boxcox/error.hpp"

namespace boxcox {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    if (v.empty()) throw Error(ErrorKind::domain, std::string(what) + ": empty input");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw Error(ErrorKind::domain,
                        std::string(what) + ": non-finite value at index " + std::to_string(i));
        }
    }
}

bool is_zero(double lambda) { return std::abs(lambda) < kLambdaZero; }

}  // namespace

Sample::Sample(std::vector<double> values, double shift) : values_(std::move(values)), shift_(shift) {
    require_finite(values_, "sample");
    if (!(shift_ >= 0.0) || !std::isfinite(shift_)) {
        throw Error(ErrorKind::domain, "sample shift must be a finite non-negative number");
    }
    const double lo = *std::min_element(values_.begin(), values_.end());
    if (!(lo + shift_ > 0.0)) {
        throw Error(ErrorKind::positivity, "sample is not positive after shifting by " + std::to_string(shift_));
    }
}

std::vector<double> Sample::shifted() const {
    std::vector<double> out(values_);
    if (shift_ != 0.0) {
        for (double& v : out) v += shift_;
    }
    return out;
}

Sample ensure_positive(std::span<const double> y) {
    require_finite(y, "ensure_positive");
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (!(*hi > *lo)) {
        throw Error(ErrorKind::degenerate_sample, "cannot shift a constant sample to positivity");
    }
    double shift = 0.0;
    if (!(*lo > 0.0)) shift = -*lo + kShiftFraction * (*hi - *lo);
    return Sample(std::vector<double>(y.begin(), y.end()), shift);
}

void transform_into(std::span<const double> y, double lambda, std::span<double> out) noexcept {
    if (is_zero(lambda)) {
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::log(y[i]);
    } else {
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::expm1(lambda * std::log(y[i])) / lambda;
    }
}

std::vector<double> transform(std::span<const double> y, double lambda, Convention convention) {
    require_finite(y, "transform");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) {
            throw Error(ErrorKind::positivity,
                        "transform: value at index " + std::to_string(i) + " is not positive");
        }
    }
    std::vector<double> out(y.size());
    if (convention == Convention::conventional || is_zero(lambda)) {
        transform_into(y, lambda, out);
    } else {
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::pow(y[i], lambda);
    }
    return out;
}

std::vector<double> transform(const Sample& y, double lambda, Convention convention) {
    return transform(y.shifted(), lambda, convention);
}

std::vector<double> inverse_transform(std::span<const double> z, double lambda, InverseConvention convention) {
    require_finite(z, "inverse_transform");
    std::vector<double> out(z.size());
    if (convention == InverseConvention::study1) {
        if (is_zero(lambda)) {
            throw Error(ErrorKind::inverse_domain, "inverse_transform(study1): lambda must be non-zero");
        }
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double base = z[i] * lambda;
            if (!(base + 1.0 > 0.0)) {
                throw Error(ErrorKind::inverse_domain, "inverse_transform(study1): z*lambda + 1 <= 0 at index " +
                                                           std::to_string(i));
            }
            out[i] = std::exp(std::log1p(base) / lambda);
        }
        return out;
    }
    if (is_zero(lambda)) {
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::exp(z[i]);
        return out;
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0)) {
            throw Error(ErrorKind::inverse_domain,
                        "inverse_transform(study2): value at index " + std::to_string(i) + " is not positive");
        }
        out[i] = std::pow(z[i], 1.0 / lambda);
    }
    return out;
}

}  // namespace boxcox

#include "boxcox/normality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "boxcox/error.hpp"
#include "boxcox/stats.hpp"

namespace boxcox {

namespace {

// p_(i) is clamped into this range before taking logarithms.
constexpr double kProbFloor = 1e-15;

double poly(std::span<const double> coeffs, double x) {
    double result = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) result = result * x + *it;
    return result;
}

// Royston (1995) polynomial coefficients.
constexpr double kSwC1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double kSwC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kSwC3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double kSwC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kSwC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kSwC6[] = {-0.4803, -0.082676, 0.0030302};
constexpr double kSwG[] = {-2.273, 0.459};

double shapiro_wilk_p(double w, double one_minus_w, std::size_t n) {
    const auto an = static_cast<double>(n);
    if (n == 3) {
        const double p = (6.0 / std::numbers::pi) * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
        return std::clamp(p, 0.0, 1.0);
    }
    if (!(one_minus_w > 0.0)) return 1.0;
    double y = std::log(one_minus_w);
    double m = 0.0;
    double s = 0.0;
    if (n <= 11) {
        const double gamma = poly(kSwG, an);
        if (y >= gamma) return 1e-99;
        y = -std::log(gamma - y);
        m = poly(kSwC3, an);
        s = std::exp(poly(kSwC4, an));
    } else {
        const double ln_n = std::log(an);
        m = poly(kSwC5, ln_n);
        s = std::exp(poly(kSwC6, ln_n));
    }
    return stats::normal_sf((y - m) / s);
}

// Royston (1993) normalizing transformation of ln(1 - W').
double shapiro_francia_p(double one_minus_w, std::size_t n) {
    if (!(one_minus_w > 0.0)) return 1.0;
    const double u = std::log(static_cast<double>(n));
    const double v = std::log(u);
    const double mu = -1.2725 + 1.0521 * (v - u);
    const double sigma = 1.0308 - 0.26758 * (v + 2.0 / u);
    return stats::normal_sf((std::log(one_minus_w) - mu) / sigma);
}

// Squared correlation between antisymmetric weights and the sorted sample,
// returned as (r^2, 1 - r^2) with the complement formed without cancellation.
// `half` holds the positive weights for the upper half; the lower half mirrors
// them with opposite sign and an odd middle element gets zero.
std::pair<double, double> antisymmetric_correlation(std::span<const double> half, std::span<const double> x) {
    const std::size_t n = x.size();
    const double range = x[n - 1] - x[0];
    if (!(range > 0.0) || !std::isfinite(range)) {
        throw Error(ErrorKind::degenerate_sample, "sample has zero range");
    }
    double xbar = 0.0;
    for (double v : x) xbar += v / range;
    xbar /= static_cast<double>(n);

    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        double c = 0.0;
        if (i < j) {
            c = -half[i];
        } else if (i > j) {
            c = half[j];
        }
        const double d = x[i] / range - xbar;
        ssa += c * c;
        ssx += d * d;
        sax += c * d;
    }
    if (!(ssx > 0.0) || !std::isfinite(ssx)) {
        throw Error(ErrorKind::degenerate_sample, "sample has zero variance");
    }
    const double root = std::sqrt(ssa * ssx);
    const double complement = std::max(0.0, (root - sax) * (root + sax) / (ssa * ssx));
    return {std::min(1.0, 1.0 - complement), complement};
}

struct Standardized {
    std::vector<double> z;
};

Standardized standardize(std::span<const double> sorted) {
    const auto loc = stats::mean_sd(sorted);
    Standardized out;
    out.z.reserve(sorted.size());
    for (double v : sorted) out.z.push_back((v - loc.mean) / loc.sd);
    return out;
}

double anderson_darling_stat(std::span<const double> sorted) {
    const auto [z] = standardize(sorted);
    const std::size_t n = z.size();
    const auto an = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lower = std::clamp(stats::normal_cdf(z[i]), kProbFloor, 1.0 - kProbFloor);
        // 1 - p_(n+1-i) evaluated as the upper tail of the mirrored order statistic.
        const double upper = std::clamp(stats::normal_sf(z[n - 1 - i]), kProbFloor, 1.0 - kProbFloor);
        acc += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lower) + std::log(upper));
    }
    return std::max(0.0, -an - acc / an);
}

double cramer_von_mises_stat(std::span<const double> sorted) {
    const auto [z] = standardize(sorted);
    const auto an = static_cast<double>(z.size());
    double acc = 1.0 / (12.0 * an);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double d = stats::normal_cdf(z[i]) - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * an);
        acc += d * d;
    }
    return acc;
}

double lilliefors_stat(std::span<const double> sorted) {
    const auto [z] = standardize(sorted);
    const auto an = static_cast<double>(z.size());
    double d_plus = -1.0;
    double d_minus = -1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double p = stats::normal_cdf(z[i]);
        const auto rank = static_cast<double>(i);
        d_plus = std::max(d_plus, (rank + 1.0) / an - p);
        d_minus = std::max(d_minus, p - rank / an);
    }
    return std::max(d_plus, d_minus);
}

double pearson_stat(std::span<const double> sorted, std::size_t classes) {
    const auto [z] = standardize(sorted);
    std::vector<std::size_t> counts(classes, 0);
    const auto k = static_cast<double>(classes);
    for (double v : z) {
        // Left-closed classes: a value exactly on a boundary opens the next class.
        const auto cls = static_cast<std::size_t>(std::floor(k * stats::normal_cdf(v)));
        ++counts[std::min(cls, classes - 1)];
    }
    const double expected = static_cast<double>(z.size()) / k;
    double chi = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi += d * d / expected;
    }
    return chi;
}

double jarque_bera_stat(std::span<const double> sample) {
    const auto m = stats::moments(sample);
    const double excess = m.kurtosis - 3.0;
    return static_cast<double>(sample.size()) / 6.0 * (m.skewness * m.skewness + excess * excess / 4.0);
}

}  // namespace

std::string_view name(TestKind kind) noexcept {
    switch (kind) {
        case TestKind::sw: return "SW";
        case TestKind::ad: return "AD";
        case TestKind::cvm: return "CVM";
        case TestKind::pt: return "PT";
        case TestKind::sf: return "SF";
        case TestKind::lt: return "LT";
        case TestKind::jb: return "JB";
    }
    return "?";
}

std::optional<TestKind> parse_test_kind(std::string_view text) noexcept {
    std::string upper(text);
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (TestKind kind : kAllTests) {
        if (name(kind) == upper) return kind;
    }
    return std::nullopt;
}

std::size_t min_size(TestKind kind) noexcept {
    switch (kind) {
        case TestKind::sw: return 3;
        case TestKind::ad: return 3;
        case TestKind::cvm: return 3;
        case TestKind::pt: return 8;
        case TestKind::sf: return 5;
        case TestKind::lt: return 4;
        case TestKind::jb: return 4;
    }
    return 3;
}

std::size_t max_size(TestKind kind) noexcept {
    return (kind == TestKind::sw || kind == TestKind::sf) ? 5000 : static_cast<std::size_t>(-1);
}

std::size_t pearson_class_count(std::size_t n) noexcept {
    return static_cast<std::size_t>(std::ceil(2.0 * std::pow(static_cast<double>(n), 0.4)));
}

double chisq2_sf(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw Error(ErrorKind::domain, "chisq2_sf: argument must be non-negative");
    }
    return std::exp(-x / 2.0);
}

std::vector<double> shapiro_wilk_coefficients(std::size_t n) {
    if (n < 3 || n > 5000) {
        throw Error(ErrorKind::unsupported_size,
                    "Shapiro-Wilk supports 3 <= n <= 5000, got n = " + std::to_string(n));
    }
    const std::size_t half = n / 2;
    std::vector<double> a(half);
    if (n == 3) {
        a[0] = std::numbers::sqrt2 / 2.0;
        return a;
    }
    const auto an = static_cast<double>(n);
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m[i] = stats::normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kSwC1, rsn) - m[0] / ssumm2;

    std::size_t first_scaled = 1;
    double fac = 0.0;
    if (n > 5) {
        first_scaled = 2;
        const double a2 = -m[1] / ssumm2 + poly(kSwC2, rsn);
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        a[1] = a2;
    } else {
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
    return a;
}

StatisticEvaluator::StatisticEvaluator(TestKind kind, std::size_t n) : kind_(kind), n_(n) {
    if (n < min_size(kind) || n > max_size(kind)) {
        throw Error(ErrorKind::unsupported_size, std::string(name(kind)) + " does not support n = " +
                                                     std::to_string(n) + " (minimum " +
                                                     std::to_string(min_size(kind)) + ")");
    }
    switch (kind) {
        case TestKind::sw:
            weights_ = shapiro_wilk_coefficients(n);
            break;
        case TestKind::sf: {
            // Blom scores are antisymmetric; store the upper-half magnitudes.
            weights_.resize(n / 2);
            const auto an = static_cast<double>(n);
            for (std::size_t i = 0; i < n / 2; ++i) {
                weights_[i] = -stats::normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
            }
            break;
        }
        case TestKind::pt:
            classes_ = pearson_class_count(n);
            break;
        default:
            break;
    }
}

StatisticEvaluator::Raw StatisticEvaluator::compute(std::span<const double> sorted) const {
    if (sorted.size() != n_) {
        throw Error(ErrorKind::invalid_argument, "evaluator built for n = " + std::to_string(n_) +
                                                     " applied to " + std::to_string(sorted.size()) + " values");
    }
    switch (kind_) {
        case TestKind::sw:
        case TestKind::sf: {
            const auto [w, complement] = antisymmetric_correlation(weights_, sorted);
            return {w, complement};
        }
        case TestKind::ad: return {anderson_darling_stat(sorted), 0.0};
        case TestKind::cvm: return {cramer_von_mises_stat(sorted), 0.0};
        case TestKind::pt: return {pearson_stat(sorted, classes_), 0.0};
        case TestKind::lt: return {lilliefors_stat(sorted), 0.0};
        case TestKind::jb: return {jarque_bera_stat(sorted), 0.0};
    }
    return {0.0, 0.0};
}

double StatisticEvaluator::statistic(std::span<const double> sorted) const { return compute(sorted).statistic; }

TestOutcome StatisticEvaluator::evaluate(std::span<const double> sorted) const {
    const Raw raw = compute(sorted);
    TestOutcome out{kind_, raw.statistic, std::nullopt};
    switch (kind_) {
        case TestKind::sw: out.p_value = shapiro_wilk_p(raw.statistic, raw.complement, n_); break;
        case TestKind::sf: out.p_value = shapiro_francia_p(raw.complement, n_); break;
        case TestKind::jb: out.p_value = chisq2_sf(raw.statistic); break;
        default: break;
    }
    return out;
}

TestOutcome run_test(TestKind kind, std::span<const double> sample) {
    for (double v : sample) {
        if (!std::isfinite(v)) throw Error(ErrorKind::domain, "sample contains a non-finite value");
    }
    const StatisticEvaluator evaluator(kind, sample.size());
    const stats::SortedSample sorted(sample);
    return evaluator.evaluate(sorted.values());
}

TestOutcome shapiro_wilk(std::span<const double> sample) { return run_test(TestKind::sw, sample); }
TestOutcome shapiro_francia(std::span<const double> sample) { return run_test(TestKind::sf, sample); }
TestOutcome anderson_darling(std::span<const double> sample) { return run_test(TestKind::ad, sample); }
TestOutcome cramer_von_mises(std::span<const double> sample) { return run_test(TestKind::cvm, sample); }
TestOutcome pearson_chisq(std::span<const double> sample) { return run_test(TestKind::pt, sample); }
TestOutcome lilliefors(std::span<const double> sample) { return run_test(TestKind::lt, sample); }
TestOutcome jarque_bera(std::span<const double> sample) { return run_test(TestKind::jb, sample); }

}  // namespace boxcox

#include "boxcox/artificial_covariate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "boxcox/error.hpp"
#include "boxcox/random.hpp"

namespace boxcox {

namespace {

constexpr int kMaxRedraws = 16;

double centre(std::span<double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double& x : v) {
        x -= mean;
        ss += x * x;
    }
    return ss;
}

// Centered, geometric-mean-normalized transform for every candidate λ. An
// additive constant is dropped (it cannot change an intercept model's SSE),
// which leaves g * expm1(λ log(y/g)) / λ and keeps small |λ| well conditioned.
struct NormalizedProfile {
    std::vector<double> lambdas;
    std::vector<std::vector<double>> centred;  // empty where undefined
    std::vector<double> total_ss;
};

NormalizedProfile normalized_profile(std::span<const double> y, const LambdaGrid& grid) {
    const auto n = static_cast<double>(y.size());
    std::vector<double> log_ratio(y.size());
    double mean_log = 0.0;
    for (double v : y) mean_log += std::log(v);
    mean_log /= n;
    const double gm = std::exp(mean_log);
    for (std::size_t i = 0; i < y.size(); ++i) log_ratio[i] = std::log(y[i]) - mean_log;

    NormalizedProfile out;
    out.lambdas = grid.points();
    out.centred.resize(out.lambdas.size());
    out.total_ss.assign(out.lambdas.size(), 0.0);
    for (std::size_t k = 0; k < out.lambdas.size(); ++k) {
        const double lambda = out.lambdas[k];
        std::vector<double> z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            z[i] = std::abs(lambda) < kLambdaZero ? gm * log_ratio[i] : gm * std::expm1(lambda * log_ratio[i]) / lambda;
        }
        const double ss = centre(z);
        if (std::isfinite(ss) && std::all_of(z.begin(), z.end(), [](double v) { return std::isfinite(v); })) {
            out.centred[k] = std::move(z);
            out.total_ss[k] = ss;
        }
    }
    return out;
}

struct RepetitionOptimum {
    std::size_t index;
    double sse;
};

std::optional<RepetitionOptimum> best_for_covariate(const NormalizedProfile& prof, std::span<const double> xc,
                                                    double sxx) {
    std::optional<RepetitionOptimum> best;
    for (std::size_t k = 0; k < prof.lambdas.size(); ++k) {
        const auto& z = prof.centred[k];
        if (z.empty()) continue;
        double sxz = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) sxz += xc[i] * z[i];
        const double sse = std::max(0.0, prof.total_ss[k] - sxz * sxz / sxx);
        if (!best || sse < best->sse) best = RepetitionOptimum{k, sse};
    }
    return best;
}

}  // namespace

double ols_sse(std::span<const double> response, std::span<const double> covariate) {
    if (response.size() != covariate.size()) {
        throw Error(ErrorKind::invalid_argument, "ols_sse: response and covariate lengths differ");
    }
    if (response.size() < 3) {
        throw Error(ErrorKind::unsupported_size, "ols_sse: need at least 3 observations");
    }
    std::vector<double> y(response.begin(), response.end());
    std::vector<double> x(covariate.begin(), covariate.end());
    const double syy = centre(y);
    const double sxx = centre(x);
    if (!(sxx > 0.0)) {
        throw Error(ErrorKind::singular, "ols_sse: covariate is constant");
    }
    double sxy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sxy += x[i] * y[i];
    return std::clamp(syy - sxy * sxy / sxx, 0.0, syy);
}

AcRepetitions ac_repetitions(const Sample& y, const AcConfig& cfg) {
    if (cfg.repetitions < 1) throw Error(ErrorKind::invalid_argument, "AC needs at least one repetition");
    if (!(cfg.covariate_sd > 0.0)) throw Error(ErrorKind::invalid_argument, "AC covariate sd must be positive");
    if (y.size() < 5) {
        throw Error(ErrorKind::unsupported_size, "AC needs at least 5 observations, got " + std::to_string(y.size()));
    }
    const auto values = y.shifted();
    const std::size_t n = values.size();

    LambdaGrid grid = cfg.grid;
    for (std::size_t expansions = 0;; ++expansions) {
        const auto prof = normalized_profile(values, grid);
        AcRepetitions out{grid, expansions, {}, {}};
        bool boundary = false;
        std::vector<double> xc(n);
        for (std::size_t r = 0; r < cfg.repetitions; ++r) {
            NormalGenerator gen(substream_seed(cfg.seed, r));
            std::optional<RepetitionOptimum> best;
            for (int attempt = 0; attempt < kMaxRedraws && !best; ++attempt) {
                for (double& v : xc) v = gen(cfg.covariate_mean, cfg.covariate_sd);
                const double sxx = centre(xc);
                if (!(sxx > 0.0) || !std::isfinite(sxx)) continue;
                best = best_for_covariate(prof, xc, sxx);
                if (!best) break;  // no λ defined; redrawing cannot help
            }
            if (!best) continue;
            boundary = boundary || best->index == 0 || best->index + 1 == prof.lambdas.size();
            out.lambdas.push_back(prof.lambdas[best->index]);
            out.sse.push_back(best->sse);
        }
        if (out.lambdas.empty()) {
            throw Error(ErrorKind::estimation_failed, "AC: every repetition failed");
        }
        if (!boundary) return out;
        if (expansions < cfg.max_expansions) {
            grid = grid.expanded();
            continue;
        }
        const double worst = *std::max_element(out.lambdas.begin(), out.lambdas.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        });
        throw NonInteriorOptimum(worst, "AC: a repetition optimum remains on the grid boundary after " +
                                            std::to_string(expansions) + " expansions");
    }
}

EstimationResult ac_estimate(const Sample& y, const AcConfig& cfg) {
    const auto reps = ac_repetitions(y, cfg);
    const auto count = static_cast<double>(reps.lambdas.size());
    const double lambda_hat = std::accumulate(reps.lambdas.begin(), reps.lambdas.end(), 0.0) / count;
    const double objective = std::accumulate(reps.sse.begin(), reps.sse.end(), 0.0) / count;
    const auto transformed = transform(y, lambda_hat, Convention::conventional);
    return EstimationResult{Method::ac, lambda_hat, objective, reps.grid, reps.expansions, y.shift(),
                            validate(transformed, cfg.alpha)};
}

}  // namespace boxcox

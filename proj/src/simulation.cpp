#include "boxcox/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>

#include "boxcox/artificial_covariate.hpp"
#include "boxcox/error.hpp"
#include "boxcox/random.hpp"
#include "boxcox/transform.hpp"

namespace boxcox::sim {

namespace {

// Separates the covariate streams of AC from the data-generation streams.
constexpr std::uint64_t kAcStreamTag = 0xAC0FFEE5EEDULL;

struct StudyOneTriple {
    double mu;
    double sigma;
    double lambda;
};

constexpr StudyOneTriple kStudyOneTriples[] = {
    {-5, 1, -2},    {-10, 2, -2}, {-5, 1, -1}, {-10, 2, -1}, {-10, 1, -0.5}, {-15, 2, -0.5},
    {10, 1, 0.5},   {15, 2, 0.5}, {5, 1, 1},   {10, 2, 1},   {5, 1, 2},      {10, 2, 2},
};

constexpr double kStudyTwoLambdas[] = {-5, -2, -1, 0, 2, 5};
constexpr double kStudyTwoSigmas[] = {1, 5};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string_view name(Study study) noexcept { return study == Study::one ? "I" : "II"; }

std::optional<Study> parse_study(std::string_view text) noexcept {
    if (text == "I" || text == "i" || text == "1") return Study::one;
    if (text == "II" || text == "ii" || text == "2") return Study::two;
    return std::nullopt;
}

void check_condition(const StudyCondition& cond) {
    if (cond.study == Study::one && std::abs(cond.true_lambda) < kLambdaZero) {
        throw Error(ErrorKind::invalid_condition,
                    "study I requires true lambda != 0: the inverse (z*lambda + 1)^(1/lambda) is undefined at 0");
    }
    if (cond.replications < 1) throw Error(ErrorKind::invalid_condition, "replications must be at least 1");
    if (!(cond.sigma > 0.0) || !std::isfinite(cond.sigma)) {
        throw Error(ErrorKind::invalid_condition, "sigma must be a positive finite number");
    }
    if (!std::isfinite(cond.mu) || !std::isfinite(cond.true_lambda)) {
        throw Error(ErrorKind::invalid_condition, "mu and true lambda must be finite");
    }
    if (cond.methods.empty()) throw Error(ErrorKind::invalid_condition, "at least one method is required");
    if (cond.n < 5) throw Error(ErrorKind::invalid_condition, "n must be at least 5");
    for (Method m : cond.methods) {
        if (auto kind = test_kind(m); kind && cond.n < min_size(*kind)) {
            throw Error(ErrorKind::invalid_condition, std::string(name(m)) + " needs n >= " +
                                                          std::to_string(min_size(*kind)));
        }
    }
    if (cond.n > 5000) {
        throw Error(ErrorKind::invalid_condition, "n must not exceed 5000 (Shapiro-Wilk validation limit)");
    }
    if (cond.ac_repetitions < 1) throw Error(ErrorKind::invalid_condition, "AC repetitions must be at least 1");
}

Accuracy summarize(std::span<const double> lambda_hats, double true_lambda) {
    if (lambda_hats.empty()) throw Error(ErrorKind::invalid_argument, "summarize: no estimates");
    const auto r = static_cast<double>(lambda_hats.size());
    double sum = 0.0;
    for (double v : lambda_hats) sum += v;
    const double mean = sum / r;
    double ss = 0.0;
    for (double v : lambda_hats) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / r);
    const double bias = mean - true_lambda;
    return {mean, bias, se, bias * bias + se * se};
}

const MethodSummary& SimulationSummary::at(Method m) const {
    for (const auto& s : methods) {
        if (s.method == m) return s;
    }
    throw Error(ErrorKind::invalid_argument, "method " + std::string(name(m)) + " was not run");
}

std::vector<double> generate_replication(const StudyCondition& cond, std::size_t replication) {
    NormalGenerator gen(substream_seed(cond.seed, replication));
    std::vector<double> z(cond.n);
    for (double& v : z) v = gen(cond.mu, cond.sigma);
    if (cond.study == Study::one) {
        return inverse_transform(z, cond.true_lambda, InverseConvention::study1);
    }
    const Sample positive = ensure_positive(z);
    return inverse_transform(positive.shifted(), cond.true_lambda, InverseConvention::study2);
}

SimulationSummary run_study(const StudyCondition& cond, unsigned threads) {
    check_condition(cond);
    const std::size_t reps = cond.replications;
    const std::size_t n_methods = cond.methods.size();

    // estimates[r * n_methods + m]; NaN marks a failed estimate.
    std::vector<double> estimates(reps * n_methods, std::nan(""));
    std::vector<char> generated(reps, 0);

    auto run_replication = [&](std::size_t r) {
        std::vector<double> data;
        try {
            data = generate_replication(cond, r);
        } catch (const Error&) {
            return;
        }
        generated[r] = 1;
        std::optional<Sample> sample;
        try {
            sample = ensure_positive(data);
        } catch (const Error&) {
            return;
        }
        for (std::size_t m = 0; m < n_methods; ++m) {
            const Method method = cond.methods[m];
            try {
                if (auto kind = test_kind(method)) {
                    estimates[r * n_methods + m] = estimate(*sample, *kind, cond.grid).lambda_hat;
                } else {
                    AcConfig ac;
                    ac.repetitions = cond.ac_repetitions;
                    ac.seed = substream_seed(cond.seed ^ kAcStreamTag, r);
                    ac.grid = cond.grid;
                    estimates[r * n_methods + m] = ac_estimate(*sample, ac).lambda_hat;
                }
            } catch (const Error&) {
                // Counted as a failure below.
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
    if (threads <= 1) {
        for (std::size_t r = 0; r < reps; ++r) run_replication(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < reps; r = next++) run_replication(r);
            });
        }
    }

    SimulationSummary summary;
    summary.condition = cond;
    summary.generation_failures =
        static_cast<std::size_t>(std::count(generated.begin(), generated.end(), char{0}));
    bool any_success = false;
    for (std::size_t m = 0; m < n_methods; ++m) {
        std::vector<double> ok;
        ok.reserve(reps);
        for (std::size_t r = 0; r < reps; ++r) {
            const double v = estimates[r * n_methods + m];
            if (!std::isnan(v)) ok.push_back(v);
        }
        MethodSummary ms{cond.methods[m], {}, std::nullopt, ok.size(), reps - ok.size()};
        if (!ok.empty()) {
            any_success = true;
            ms.accuracy = summarize(ok, cond.true_lambda);
            if (std::abs(cond.true_lambda) >= kLambdaZero) {
                ms.percent_bias = 100.0 * ms.accuracy.bias / std::abs(cond.true_lambda);
            }
        }
        summary.methods.push_back(ms);
    }
    if (!any_success) {
        throw Error(ErrorKind::estimation_failed, "every replication failed for every method");
    }
    return summary;
}

std::vector<StudyCondition> study_one_preset(std::span<const std::size_t> sizes) {
    std::vector<StudyCondition> out;
    for (std::size_t n : sizes) {
        for (const auto& t : kStudyOneTriples) {
            StudyCondition c;
            c.study = Study::one;
            c.n = n;
            c.mu = t.mu;
            c.sigma = t.sigma;
            c.true_lambda = t.lambda;
            c.methods = {Method::sw, Method::ad};
            out.push_back(c);
        }
    }
    return out;
}

std::vector<StudyCondition> study_two_preset(std::span<const std::size_t> sizes) {
    std::vector<StudyCondition> out;
    for (double sigma : kStudyTwoSigmas) {
        for (std::size_t n : sizes) {
            for (double lambda : kStudyTwoLambdas) {
                StudyCondition c;
                c.study = Study::two;
                c.n = n;
                c.mu = 0.0;
                c.sigma = sigma;
                c.true_lambda = lambda;
                c.methods.assign(kAllMethods.begin(), kAllMethods.end());
                out.push_back(c);
            }
        }
    }
    return out;
}

void write_csv_header(std::ostream& os) {
    os << "study,n,mu,sigma,true_lambda,method,bias,se,mse,failures,replications,seed\n";
}

void write_csv_rows(std::ostream& os, const SimulationSummary& summary) {
    const auto& c = summary.condition;
    for (const auto& m : summary.methods) {
        os << name(c.study) << ',' << c.n << ',' << compact(c.mu) << ',' << compact(c.sigma) << ','
           << compact(c.true_lambda) << ',' << name(m.method) << ',';
        if (m.successes > 0) {
            os << fixed(m.accuracy.bias, 6) << ',' << fixed(m.accuracy.se, 6) << ',' << fixed(m.accuracy.mse, 6);
        } else {
            os << "NA,NA,NA";
        }
        os << ',' << m.failures << ',' << c.replications << ',' << c.seed << '\n';
    }
}

}  // namespace boxcox::sim

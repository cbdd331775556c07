#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "boxcox/artificial_covariate.hpp"
#include "boxcox/error.hpp"
#include "boxcox/ingest.hpp"
#include "boxcox/random.hpp"
#include "oracles.hpp"

using namespace boxcox;

namespace {

Sample textile() {
    return ensure_positive(io::ingest(BOXCOX_DATA_DIR "/textile.csv", io::ColumnSelector{}));
}

AcConfig small_config(std::size_t reps) {
    AcConfig cfg;
    cfg.repetitions = reps;
    cfg.grid = LambdaGrid(-3.0, 3.0, 0.05);
    return cfg;
}

}  // namespace

TEST_CASE("ols_sse examples") {
    const std::vector<double> y{1, 2, 4}, x{1, 2, 3};
    CHECK(ols_sse(y, x) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    const std::vector<double> line{3, 5, 7, 9}, x4{1, 2, 3, 4};
    CHECK(ols_sse(line, x4) == doctest::Approx(0.0));
    const std::vector<double> flat{2, 2, 2};
    try {
        (void)ols_sse(y, flat);
        FAIL("expected singular");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular);
    }
}

TEST_CASE("ols_sse agrees with the normal-equation oracle") {
    NormalGenerator gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(5 + trial), x(5 + trial);
        for (std::size_t i = 0; i < y.size(); ++i) {
            x[i] = gen(0.0, 100.0);
            y[i] = 0.3 * x[i] + gen(10.0, 4.0);
        }
        const double want = oracle::ols_sse(y, x);
        CHECK(ols_sse(y, x) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("per-repetition optimum matches a brute-force regression over the grid") {
    const auto y = textile();
    const auto cfg = small_config(10);
    const auto reps = ac_repetitions(y, cfg);
    REQUIRE(reps.lambdas.size() == 10);
    CHECK(reps.expansions == 0);

    const auto values = y.shifted();
    double log_sum = 0.0;
    for (double v : values) log_sum += std::log(v);
    const double gm = std::exp(log_sum / static_cast<double>(values.size()));
    const auto lambdas = cfg.grid.points();
    for (std::size_t r = 0; r < 10; ++r) {
        NormalGenerator gen(substream_seed(cfg.seed, r));
        std::vector<double> x(values.size());
        for (double& v : x) v = gen(cfg.covariate_mean, cfg.covariate_sd);
        double best_sse = INFINITY, best_lambda = NAN;
        for (double lambda : lambdas) {
            std::vector<double> z(values.size());
            for (std::size_t i = 0; i < z.size(); ++i) {
                z[i] = lambda == 0.0 ? gm * std::log(values[i])
                                     : (std::pow(values[i], lambda) - 1.0) / (lambda * std::pow(gm, lambda - 1.0));
            }
            const double sse = oracle::ols_sse(z, x);
            if (sse < best_sse) {
                best_sse = sse;
                best_lambda = lambda;
            }
        }
        CAPTURE(r);
        CHECK(reps.lambdas[r] == doctest::Approx(best_lambda).epsilon(1e-12));
        CHECK(reps.sse[r] == doctest::Approx(best_sse).epsilon(1e-7));
    }
}

TEST_CASE("AC is deterministic for a fixed seed") {
    const auto y = textile();
    AcConfig cfg;
    cfg.repetitions = 25;
    CHECK(ac_estimate(y, cfg) == ac_estimate(y, cfg));
    auto other = cfg;
    other.seed = 2;
    CHECK(ac_repetitions(y, cfg).lambdas != ac_repetitions(y, other).lambdas);
}

TEST_CASE("per-repetition optima are scale invariant") {
    const auto y = textile();
    const auto cfg = small_config(30);
    const auto base = ac_repetitions(y, cfg).lambdas;
    for (double c : {0.01, 7.5, 1000.0}) {
        auto scaled = y.shifted();
        for (double& v : scaled) v *= c;
        CHECK(ac_repetitions(Sample(scaled, 0.0), cfg).lambdas == base);
    }
}

TEST_CASE("AC estimate is the mean of the repetition optima") {
    const auto y = textile();
    AcConfig cfg;
    const auto reps = ac_repetitions(y, cfg);
    const auto r = ac_estimate(y, cfg);
    double sum = 0.0;
    for (double l : reps.lambdas) sum += l;
    CHECK(r.lambda_hat == doctest::Approx(sum / static_cast<double>(reps.lambdas.size())).epsilon(1e-14));
    CHECK(r.method == Method::ac);
    CHECK(r.lambda_hat >= r.grid.lower());
    CHECK(r.lambda_hat <= r.grid.upper());
    CHECK(r.lambda_hat >= *std::min_element(reps.lambdas.begin(), reps.lambdas.end()));
    CHECK(r.lambda_hat <= *std::max_element(reps.lambdas.begin(), reps.lambdas.end()));
}

TEST_CASE("AC on textile lands near the lattice estimates") {
    const auto r = ac_estimate(textile(), AcConfig{});
    CHECK(r.lambda_hat >= -0.064);
    CHECK(r.lambda_hat <= -0.024);
}

TEST_CASE("AC on log-normal data is near zero") {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        NormalGenerator gen(1000 + seed);
        std::vector<double> x(200);
        for (double& v : x) v = std::exp(gen());
        AcConfig cfg;
        cfg.repetitions = 40;
        cfg.seed = seed;
        sum += ac_estimate(Sample(x, 0.0), cfg).lambda_hat;
    }
    CHECK(std::abs(sum / 5.0) <= 0.1);
}

TEST_CASE("AC errors") {
    const Sample four({1.0, 2.0, 3.0, 4.0}, 0.0);
    CHECK_THROWS_AS((void)ac_estimate(four, AcConfig{}), Error);
    AcConfig none;
    none.repetitions = 0;
    CHECK_THROWS_AS((void)ac_estimate(textile(), none), Error);
    AcConfig bad_sd;
    bad_sd.covariate_sd = 0.0;
    CHECK_THROWS_AS((void)ac_estimate(textile(), bad_sd), Error);
}

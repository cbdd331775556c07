#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <limits>
#include <vector>

#include "boxcox/error.hpp"
#include "boxcox/random.hpp"
#include "boxcox/transform.hpp"

using namespace boxcox;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::domain;
}

double one(double y, double lambda, Convention c = Convention::conventional) {
    const std::vector<double> v{y};
    return transform(v, lambda, c)[0];
}

double inv(double z, double lambda, InverseConvention c) {
    const std::vector<double> v{z};
    return inverse_transform(v, lambda, c)[0];
}

}  // namespace

TEST_CASE("forward transform examples") {
    for (double lambda : {-2.0, -0.3, 0.0, 0.5, 3.0}) CHECK(one(1.0, lambda) == 0.0);
    CHECK(one(3.0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(one(std::exp(1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one(4.0, -1.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(one(3.0, 2.0, Convention::simple) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(one(std::exp(2.0), 0.0, Convention::simple) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(one(5.0, 1e-13) == std::log(5.0));
}

TEST_CASE("inverse transform examples") {
    CHECK(inv(4.0, 2.0, InverseConvention::study1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(inv(0.0, 2.0, InverseConvention::study1) == 1.0);
    CHECK(inv(8.0, 3.0, InverseConvention::study2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(inv(9.0, 2.0, InverseConvention::study2) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(inv(2.0, 0.0, InverseConvention::study2) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(inv(0.25, -2.0, InverseConvention::study2) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("inverse domain errors") {
    // zλ + 1 <= 0 has no real inverse.
    CHECK(kind_of([] { (void)inv(-1.0, 2.0, InverseConvention::study1); }) == ErrorKind::inverse_domain);
    CHECK(kind_of([] { (void)inv(0.6, -2.0, InverseConvention::study1); }) == ErrorKind::inverse_domain);
    CHECK(kind_of([] { (void)inv(-3.0, 2.0, InverseConvention::study2); }) == ErrorKind::inverse_domain);
    CHECK(kind_of([] { (void)inv(1.0, 0.0, InverseConvention::study1); }) == ErrorKind::inverse_domain);
}

TEST_CASE("inverse undoes the transform") {
    NormalGenerator gen(3);
    std::vector<double> y(200);
    for (double& v : y) v = std::exp(gen(0.0, 1.5));
    for (double lambda : {-2.0, -0.5, 0.5, 2.0}) {
        const auto z = transform(y, lambda, Convention::conventional);
        const auto back = inverse_transform(z, lambda, InverseConvention::study1);
        const auto zs = transform(y, lambda, Convention::simple);
        const auto back_s = inverse_transform(zs, lambda, InverseConvention::study2);
        for (std::size_t i = 0; i < y.size(); ++i) {
            CHECK(std::abs(back[i] - y[i]) <= 1e-10 * std::max(1.0, y[i]));
            CHECK(std::abs(back_s[i] - y[i]) <= 1e-10 * std::max(1.0, y[i]));
        }
    }
}

TEST_CASE("transform is continuous at zero") {
    for (double y = 0.5; y <= 10.0; y += 0.25) {
        const double at_zero = one(y, 0.0);
        for (double eps : {1e-9, -1e-9, 1e-11}) CHECK(std::abs(one(y, eps) - at_zero) <= 1e-6);
    }
    CHECK(std::abs(one(1e4, 1e-6) - one(1e4, 0.0)) < 1e-4);
}

TEST_CASE("conventional transform is increasing in y") {
    const std::vector<double> y{0.001, 0.1, 0.9, 1.0, 1.1, 5.0, 80.0, 1e5};
    for (double lambda : {-3.0, -1.0, -0.01, 0.0, 0.01, 1.0, 3.0}) {
        const auto z = transform(y, lambda, Convention::conventional);
        for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] > z[i - 1]);
    }
}

TEST_CASE("transform_into agrees with transform") {
    const std::vector<double> y{0.2, 1.0, 3.5, 44.0};
    std::vector<double> out(y.size());
    for (double lambda : {-1.5, 0.0, 0.75}) {
        transform_into(y, lambda, out);
        CHECK(out == transform(y, lambda, Convention::conventional));
    }
}

TEST_CASE("transform rejects non-positive values") {
    const std::vector<double> bad{1.0, 2.0, 0.0, 4.0};
    CHECK(kind_of([&] { (void)transform(bad, 0.5, Convention::conventional); }) == ErrorKind::positivity);
    try {
        (void)transform(bad, 0.5, Convention::conventional);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
    const std::vector<double> neg{-1.0};
    CHECK(kind_of([&] { (void)transform(neg, 1.0, Convention::simple); }) == ErrorKind::positivity);
}

TEST_CASE("ensure_positive examples") {
    const std::vector<double> pos{0.5, 2.0, 3.0};
    const auto a = ensure_positive(pos);
    CHECK(a.shift() == 0.0);
    CHECK(a.shifted() == pos);

    const std::vector<double> mixed{-1.0, 0.0, 9.0};
    const auto b = ensure_positive(mixed);
    CHECK(b.shift() == doctest::Approx(1.001).epsilon(1e-15));
    const auto s = b.shifted();
    CHECK(s[0] == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(s[2] == doctest::Approx(10.001).epsilon(1e-15));

    const std::vector<double> zero_min{0.0, 1.0, 2.0};
    CHECK(ensure_positive(zero_min).shift() == doctest::Approx(2e-4));
}

TEST_CASE("ensure_positive yields strictly positive values") {
    NormalGenerator gen(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(5 + trial % 20);
        for (double& v : y) v = gen(trial - 50.0, 1.0 + trial);
        const auto s = ensure_positive(y);
        for (double v : s.shifted()) CHECK(v > 0.0);
    }
}

TEST_CASE("sample errors") {
    const std::vector<double> flat{-2.0, -2.0, -2.0};
    CHECK(kind_of([&] { (void)ensure_positive(flat); }) == ErrorKind::degenerate_sample);
    const std::vector<double> fives{5.0, 5.0, 5.0};
    CHECK(kind_of([&] { (void)ensure_positive(fives); }) == ErrorKind::degenerate_sample);
    CHECK(kind_of([] { Sample s({}, 0.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { Sample s({1.0, std::numeric_limits<double>::quiet_NaN()}, 0.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { Sample s({-1.0, 2.0}, 0.5); }) == ErrorKind::positivity);
}

#include "boxcox/estimator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "boxcox/error.hpp"
#include "boxcox/stats.hpp"

namespace boxcox {

namespace {

// Lattice values are rounded to this resolution so that e.g. -3 + 294 * 0.01
// is stored as -0.06 rather than -0.06000000000000005.
double snap(double v) { return std::nearbyint(v * 1e12) / 1e12; }

std::string format_lambda(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

LambdaGrid::LambdaGrid(double lower, double upper, double step) : lower_(lower), upper_(upper), step_(step) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !std::isfinite(step)) {
        throw Error(ErrorKind::invalid_argument, "lambda grid bounds and step must be finite");
    }
    if (!(lower < upper)) {
        throw Error(ErrorKind::invalid_argument, "lambda grid needs lower < upper");
    }
    if (!(step > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "lambda grid step must be positive");
    }
    if ((upper - lower) / step < 10.0 - 1e-9) {
        throw Error(ErrorKind::invalid_argument, "lambda grid must span at least 10 steps");
    }
}

std::vector<double> LambdaGrid::points() const {
    const auto steps = static_cast<std::size_t>(std::floor((upper_ - lower_) / step_ + 1e-9));
    std::vector<double> pts;
    pts.reserve(steps + 2);
    bool has_zero = false;
    for (std::size_t k = 0; k <= steps; ++k) {
        double v = snap(lower_ + static_cast<double>(k) * step_);
        if (std::abs(v) < 1e-9 * step_) v = 0.0;
        has_zero = has_zero || v == 0.0;
        pts.push_back(v);
    }
    if (!has_zero && lower_ <= 0.0 && upper_ >= 0.0) {
        pts.insert(std::upper_bound(pts.begin(), pts.end(), 0.0), 0.0);
    }
    return pts;
}

LambdaGrid LambdaGrid::expanded() const {
    const double centre = 0.5 * (lower_ + upper_);
    const double half = 0.5 * (upper_ - lower_);
    return LambdaGrid(centre - 2.0 * half, centre + 2.0 * half, step_);
}

LambdaGrid default_grid() { return LambdaGrid(-3.0, 3.0, 0.01); }

std::string_view name(Method method) noexcept {
    if (method == Method::ac) return "AC";
    return name(*test_kind(method));
}

std::optional<Method> parse_method(std::string_view text) noexcept {
    if (text.size() == 2 && std::toupper(static_cast<unsigned char>(text[0])) == 'A' &&
        std::toupper(static_cast<unsigned char>(text[1])) == 'C') {
        return Method::ac;
    }
    if (auto kind = parse_test_kind(text)) return to_method(*kind);
    return std::nullopt;
}

std::optional<TestKind> test_kind(Method method) noexcept {
    switch (method) {
        case Method::sw: return TestKind::sw;
        case Method::ad: return TestKind::ad;
        case Method::cvm: return TestKind::cvm;
        case Method::pt: return TestKind::pt;
        case Method::sf: return TestKind::sf;
        case Method::lt: return TestKind::lt;
        case Method::jb: return TestKind::jb;
        case Method::ac: return std::nullopt;
    }
    return std::nullopt;
}

Method to_method(TestKind kind) noexcept {
    switch (kind) {
        case TestKind::sw: return Method::sw;
        case TestKind::ad: return Method::ad;
        case TestKind::cvm: return Method::cvm;
        case TestKind::pt: return Method::pt;
        case TestKind::sf: return Method::sf;
        case TestKind::lt: return Method::lt;
        case TestKind::jb: return Method::jb;
    }
    return Method::sw;
}

std::vector<double> bh_adjust(std::span<const double> p) {
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorKind::domain, "bh_adjust: p-values must lie in [0, 1]");
        }
    }
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        // m / (r + 1) >= 1 is rounded first so the product never drops below p.
        const double scaled = p[order[r]] * (static_cast<double>(m) / static_cast<double>(r + 1));
        running = std::min(running, scaled);
        adjusted[order[r]] = std::min(1.0, running);
    }
    return adjusted;
}

ValidationReport validate(std::span<const double> z, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::invalid_argument, "alpha must lie in (0, 1)");
    }
    ValidationReport report;
    report.alpha = alpha;
    for (std::size_t i = 0; i < ValidationReport::kTests.size(); ++i) {
        report.raw_p[i] = *run_test(ValidationReport::kTests[i], z).p_value;
    }
    const auto adjusted = bh_adjust(report.raw_p);
    std::copy(adjusted.begin(), adjusted.end(), report.adjusted_p.begin());
    report.passed = std::all_of(report.adjusted_p.begin(), report.adjusted_p.end(),
                                [alpha](double q) { return q > alpha; });
    return report;
}

std::vector<ProfilePoint> profile(const Sample& y, TestKind kind, const LambdaGrid& grid) {
    // The conventional transform is increasing in y for every λ, so sorting
    // once up front keeps each transformed sample sorted.
    const stats::SortedSample sorted(y.shifted());
    const StatisticEvaluator evaluator(kind, sorted.size());
    std::vector<double> work(sorted.size());

    const auto lambdas = grid.points();
    std::vector<ProfilePoint> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        transform_into(sorted.values(), lambda, work);
        ProfilePoint point{lambda, std::nullopt};
        if (std::all_of(work.begin(), work.end(), [](double v) { return std::isfinite(v); })) {
            if (!std::is_sorted(work.begin(), work.end())) std::sort(work.begin(), work.end());
            try {
                const double stat = evaluator.statistic(work);
                if (std::isfinite(stat)) point.statistic = stat;
            } catch (const Error&) {
                // Undefined at this λ (e.g. the transform collapsed the sample).
            }
        }
        out.push_back(point);
    }
    return out;
}

std::optional<std::size_t> select_optimum(std::span<const ProfilePoint> points, Direction dir) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].statistic) continue;
        if (!best) {
            best = i;
            continue;
        }
        const double cand = *points[i].statistic;
        const double incumbent = *points[*best].statistic;
        const bool better = dir == Direction::maximize ? cand > incumbent : cand < incumbent;
        if (better) best = i;
    }
    return best;
}

EstimationResult estimate(const Sample& y, TestKind kind, const LambdaGrid& grid, double alpha,
                          std::size_t max_expansions) {
    LambdaGrid current = grid;
    for (std::size_t expansions = 0;; ++expansions) {
        const auto points = profile(y, kind, current);
        const auto best = select_optimum(points, direction(kind));
        if (!best) {
            throw Error(ErrorKind::estimation_failed,
                        std::string(name(kind)) + ": statistic undefined at every candidate lambda");
        }
        const bool on_boundary = *best == 0 || *best + 1 == points.size();
        const double lambda_hat = points[*best].lambda;
        if (on_boundary) {
            if (expansions < max_expansions) {
                current = current.expanded();
                continue;
            }
            throw NonInteriorOptimum(lambda_hat, std::string(name(kind)) + ": optimum lambda " +
                                                     format_lambda(lambda_hat) + " remains on the grid boundary after " +
                                                     std::to_string(expansions) + " expansions");
        }
        const auto transformed = transform(y, lambda_hat, Convention::conventional);
        return EstimationResult{to_method(kind), lambda_hat, *points[*best].statistic, current,
                                expansions,      y.shift(),  validate(transformed, alpha)};
    }
}

}  // namespace boxcox

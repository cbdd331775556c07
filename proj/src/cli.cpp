#include "boxcox/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "boxcox/artificial_covariate.hpp"
#include "boxcox/error.hpp"
#include "boxcox/report.hpp"
#include "boxcox/stats.hpp"

namespace boxcox::cli {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::invalid_argument, path + ": cannot open for writing");
    f << content;
    if (!f) throw Error(ErrorKind::invalid_argument, path + ": write failed");
}

std::string transformed_csv(const std::vector<double>& raw, const Sample& sample,
                            const std::vector<io::MethodOutcome>& outcomes, Convention convention) {
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    for (const auto& m : outcomes) {
        if (m.result) columns.emplace_back(std::string(name(m.method)), transform(sample, m.result->lambda_hat, convention));
    }
    std::ostringstream os;
    os << "raw";
    for (const auto& [label, values] : columns) os << ',' << label;
    os << '\n';
    for (std::size_t i = 0; i < raw.size(); ++i) {
        os << num(raw[i]);
        for (const auto& [label, values] : columns) os << ',' << num(values[i]);
        os << '\n';
    }
    return os.str();
}

std::string plot_csv(const std::vector<double>& raw, const Sample& sample,
                     const std::vector<io::MethodOutcome>& outcomes, Convention convention, std::size_t points) {
    std::ostringstream os;
    os << "series,x,density\n";
    auto emit = [&](const std::string& series, std::span<const double> values) {
        for (const auto& p : stats::kde(values, points)) os << series << ',' << num(p.x) << ',' << num(p.density) << '\n';
    };
    emit("raw", raw);
    for (const auto& m : outcomes) {
        if (m.result) emit(std::string(name(m.method)), transform(sample, m.result->lambda_hat, convention));
    }
    return os.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

}  // namespace

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> out;
    for (const auto& raw : split(text, ',')) {
        std::string token;
        for (char c : raw) {
            if (!std::isspace(static_cast<unsigned char>(c))) token.push_back(static_cast<char>(std::tolower(c)));
        }
        if (token.empty()) continue;
        if (token == "all") {
            for (Method m : kAllMethods) {
                if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
            }
            continue;
        }
        const auto m = parse_method(token);
        if (!m) {
            throw Error(ErrorKind::invalid_argument,
                        "unknown method '" + token + "' (expected sw, ad, cvm, pt, sf, lt, jb, ac or all)");
        }
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw Error(ErrorKind::invalid_argument, "no method selected");
    return out;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.methods.empty()) throw Error(ErrorKind::invalid_argument, "no method selected");
        std::set<std::string> paths;
        for (const auto* p : {&cfg.report_path, &cfg.transformed_path, &cfg.plot_path}) {
            if (*p && !paths.insert(**p).second) {
                throw Error(ErrorKind::invalid_argument, "output path '" + **p + "' is used more than once");
            }
        }
        const LambdaGrid grid(cfg.lambda_min, cfg.lambda_max, cfg.step);
        const auto raw = io::ingest(cfg.input, cfg.column);
        const Sample sample = ensure_positive(raw);

        io::EstimateReport report;
        report.input = cfg.input;
        report.column = cfg.column.describe();
        report.n = raw.size();
        report.shift = sample.shift();
        report.grid = grid;
        report.alpha = cfg.alpha;
        report.seed = cfg.seed;
        report.ac_repetitions = cfg.ac_repetitions;
        for (std::size_t i = 0; i < ValidationReport::kTests.size(); ++i) {
            const auto kind = ValidationReport::kTests[i];
            if (raw.size() >= min_size(kind) && raw.size() <= max_size(kind)) report.screening[i] = run_test(kind, raw);
        }

        bool any_error = false;
        bool any_failed = false;
        for (Method method : cfg.methods) {
            io::MethodOutcome outcome{method, std::nullopt, {}, {}};
            try {
                if (auto kind = test_kind(method)) {
                    outcome.result = estimate(sample, *kind, grid, cfg.alpha);
                } else {
                    AcConfig ac;
                    ac.seed = cfg.seed;
                    ac.repetitions = cfg.ac_repetitions;
                    ac.grid = grid;
                    ac.alpha = cfg.alpha;
                    outcome.result = ac_estimate(sample, ac);
                }
                any_failed = any_failed || !outcome.result->validation.passed;
            } catch (const Error& e) {
                any_error = true;
                outcome.error_kind = std::string(to_string(e.kind()));
                outcome.error_message = e.what();
                err << "error: " << name(method) << ": " << e.what() << '\n';
            }
            report.methods.push_back(std::move(outcome));
        }

        const std::string json = io::to_json_text(report);
        if (cfg.report_path) {
            write_file(*cfg.report_path, json);
            out << io::format_table(report);
        } else {
            out << json;
        }
        if (cfg.transformed_path) {
            write_file(*cfg.transformed_path, transformed_csv(raw, sample, report.methods, cfg.convention));
        }
        if (cfg.plot_path) {
            write_file(*cfg.plot_path, plot_csv(raw, sample, report.methods, cfg.convention, cfg.plot_points));
        }
        if (any_error) return kExitError;
        return any_failed ? kExitValidationFailed : kExitPassed;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitError;
    }
}

std::vector<sim::StudyCondition> build_conditions(const SimulateConfig& cfg) {
    const bool study_one = cfg.study == sim::Study::one;
    std::vector<std::size_t> sizes = cfg.sizes;
    if (sizes.empty()) {
        sizes = study_one ? std::vector<std::size_t>{20, 100} : std::vector<std::size_t>{20, 30, 50, 100, 500};
    }

    std::vector<sim::StudyCondition> conds;
    if (cfg.mus.empty() && cfg.sigmas.empty() && cfg.lambdas.empty()) {
        conds = study_one ? sim::study_one_preset(sizes) : sim::study_two_preset(sizes);
    } else {
        const auto mus = !cfg.mus.empty() ? cfg.mus : std::vector<double>{study_one ? -5.0 : 0.0};
        const auto sigmas = !cfg.sigmas.empty() ? cfg.sigmas : std::vector<double>{study_one ? 1.0 : 5.0};
        const auto lambdas = !cfg.lambdas.empty() ? cfg.lambdas : std::vector<double>{study_one ? -2.0 : 0.0};
        for (std::size_t n : sizes) {
            for (double mu : mus) {
                for (double sigma : sigmas) {
                    for (double lambda : lambdas) {
                        sim::StudyCondition c;
                        c.study = cfg.study;
                        c.n = n;
                        c.mu = mu;
                        c.sigma = sigma;
                        c.true_lambda = lambda;
                        if (study_one) {
                            c.methods = {Method::sw, Method::ad};
                        } else {
                            c.methods.assign(kAllMethods.begin(), kAllMethods.end());
                        }
                        conds.push_back(c);
                    }
                }
            }
        }
    }
    for (auto& c : conds) {
        c.replications = cfg.replications;
        c.seed = cfg.seed;
        c.ac_repetitions = cfg.ac_repetitions;
        if (cfg.methods) c.methods = *cfg.methods;
        sim::check_condition(c);
    }
    return conds;
}

int cmd_simulate(const SimulateConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto conds = build_conditions(cfg);
        std::ostringstream csv;
        sim::write_csv_header(csv);
        for (const auto& c : conds) sim::write_csv_rows(csv, sim::run_study(c, cfg.threads));
        if (cfg.output_path) {
            write_file(*cfg.output_path, csv.str());
        } else {
            out << csv.str();
        }
        return 0;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return 1;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Box-Cox transformation parameter estimation by normality-test grid search"};
    app.require_subcommand(1);

    RunConfig est;
    std::string column = "1";
    std::string methods = "all";
    std::string convention = "conventional";
    std::string report_path, transformed_path, plot_path;
    auto* estimate_cmd = app.add_subcommand("estimate", "Estimate lambda for a data column");
    estimate_cmd->add_option("--input", est.input, "CSV or whitespace-separated text file")->required();
    estimate_cmd->add_option("--column", column, "Column name or 1-based index")->capture_default_str();
    estimate_cmd->add_option("--method", methods, "all, or a comma list of sw,ad,cvm,pt,sf,lt,jb,ac")
        ->capture_default_str();
    estimate_cmd->add_option("--lambda-min", est.lambda_min)->capture_default_str();
    estimate_cmd->add_option("--lambda-max", est.lambda_max)->capture_default_str();
    estimate_cmd->add_option("--step", est.step)->capture_default_str();
    estimate_cmd->add_option("--alpha", est.alpha)->capture_default_str();
    estimate_cmd->add_option("--seed", est.seed, "Seed of the artificial covariate streams")->capture_default_str();
    estimate_cmd->add_option("--ac-reps", est.ac_repetitions)->capture_default_str();
    estimate_cmd->add_option("--report", report_path, "Write the JSON report here instead of stdout");
    estimate_cmd->add_option("--transformed", transformed_path, "Write transformed data CSV");
    estimate_cmd->add_option("--plot-data", plot_path, "Write kernel density CSV (series,x,density)");
    estimate_cmd->add_option("--convention", convention, "conventional or simple, for emitted data")
        ->check(CLI::IsMember({"conventional", "simple"}))
        ->capture_default_str();

    SimulateConfig simcfg;
    std::string study;
    std::string sim_methods;
    std::string output_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo accuracy study");
    simulate_cmd->add_option("--study", study, "I or II")->required()->check(CLI::IsMember({"I", "II", "1", "2"}));
    simulate_cmd->add_option("--n", simcfg.sizes, "Sample sizes")->delimiter(',');
    simulate_cmd->add_option("--mu", simcfg.mus, "Means of the generating normal")->delimiter(',');
    simulate_cmd->add_option("--sigma", simcfg.sigmas, "Standard deviations")->delimiter(',');
    simulate_cmd->add_option("--lambda", simcfg.lambdas, "True lambda values")->delimiter(',');
    simulate_cmd->add_option("--method", sim_methods, "Methods (default: SW,AD for I; all for II)");
    simulate_cmd->add_option("--reps", simcfg.replications)->capture_default_str();
    simulate_cmd->add_option("--seed", simcfg.seed)->capture_default_str();
    simulate_cmd->add_option("--ac-reps", simcfg.ac_repetitions)->capture_default_str();
    simulate_cmd->add_option("--threads", simcfg.threads, "0 = hardware concurrency")->capture_default_str();
    simulate_cmd->add_option("--output", output_path, "CSV path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*estimate_cmd) {
            est.column = io::ColumnSelector::parse(column);
            est.methods = parse_methods(methods);
            est.convention = convention == "simple" ? Convention::simple : Convention::conventional;
            if (!report_path.empty()) est.report_path = report_path;
            if (!transformed_path.empty()) est.transformed_path = transformed_path;
            if (!plot_path.empty()) est.plot_path = plot_path;
            return cmd_estimate(est, out, err);
        }
        simcfg.study = *sim::parse_study(study);
        if (!sim_methods.empty()) simcfg.methods = parse_methods(sim_methods);
        if (!output_path.empty()) simcfg.output_path = output_path;
        return cmd_simulate(simcfg, out, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace boxcox::cli

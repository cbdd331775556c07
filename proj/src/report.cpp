#include "boxcox/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace boxcox::io {

namespace {

using nlohmann::ordered_json;

ordered_json p_map(const std::array<double, 3>& p) {
    ordered_json out = ordered_json::object();
    for (std::size_t i = 0; i < ValidationReport::kTests.size(); ++i) {
        out[std::string(name(ValidationReport::kTests[i]))] = round_decimals(p[i], 3);
    }
    return out;
}

std::string cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%8.3f", v);
    return buf;
}

}  // namespace

double round_decimals(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(v * scale) / scale;
    return r == 0.0 ? 0.0 : r;  // no "-0"
}

double round_significant(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return std::strtod(buf, nullptr);
}

std::string to_json_text(const EstimateReport& report) {
    ordered_json doc;
    doc["input"] = report.input;
    doc["column"] = report.column;
    doc["n"] = report.n;
    doc["shift"] = round_significant(report.shift, 6);
    doc["settings"] = {
        {"lambda_min", report.grid.lower()},
        {"lambda_max", report.grid.upper()},
        {"step", report.grid.step()},
        {"alpha", report.alpha},
        {"seed", report.seed},
        {"ac_repetitions", report.ac_repetitions},
    };

    ordered_json screening = ordered_json::object();
    for (std::size_t i = 0; i < report.screening.size(); ++i) {
        const auto kind = ValidationReport::kTests[i];
        const auto& outcome = report.screening[i];
        if (outcome) {
            screening[std::string(name(kind))] = {{"statistic", round_significant(outcome->statistic, 6)},
                                                  {"p_value", round_significant(*outcome->p_value, 4)}};
        } else {
            screening[std::string(name(kind))] = nullptr;
        }
    }
    doc["raw_screening"] = screening;

    ordered_json methods = ordered_json::array();
    for (const auto& m : report.methods) {
        ordered_json entry;
        entry["method"] = std::string(name(m.method));
        if (m.result) {
            const auto& r = *m.result;
            entry["lambda_hat"] = round_decimals(r.lambda_hat, 3);
            entry["objective"] = round_significant(r.objective, 6);
            entry["shift"] = round_significant(r.shift, 6);
            entry["expansions"] = r.expansions;
            entry["grid"] = {{"lower", r.grid.lower()}, {"upper", r.grid.upper()}, {"step", r.grid.step()}};
            entry["validation"] = {{"raw_p", p_map(r.validation.raw_p)},
                                   {"adjusted_p", p_map(r.validation.adjusted_p)},
                                   {"alpha", r.validation.alpha},
                                   {"passed", r.validation.passed}};
        } else {
            entry["error"] = {{"kind", m.error_kind}, {"message", m.error_message}};
        }
        methods.push_back(entry);
    }
    doc["methods"] = methods;
    return doc.dump(2) + "\n";
}

std::string format_table(const EstimateReport& report) {
    std::ostringstream os;
    os << report.input << " (n = " << report.n << ", shift = " << report.shift << ")\n";
    os << "raw data:";
    for (std::size_t i = 0; i < report.screening.size(); ++i) {
        os << "  " << name(ValidationReport::kTests[i]) << "-pval = ";
        if (report.screening[i]) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4g", *report.screening[i]->p_value);
            os << buf;
        } else {
            os << "n/a";
        }
    }
    os << "\n\n" << "         ";
    for (const auto& m : report.methods) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%8s", std::string(name(m.method)).c_str());
        os << buf;
    }
    os << "\n";

    auto row = [&](const char* label, auto value_of) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%-9s", label);
        os << buf;
        for (const auto& m : report.methods) os << (m.result ? cell(value_of(*m.result)) : std::string("   error"));
        os << "\n";
    };
    row("lambda", [](const EstimationResult& r) { return round_decimals(r.lambda_hat, 3); });
    for (std::size_t i = 0; i < ValidationReport::kTests.size(); ++i) {
        const std::string label = std::string(name(ValidationReport::kTests[i])) + "-pval";
        row(label.c_str(), [i](const EstimationResult& r) { return r.validation.adjusted_p[i]; });
    }
    for (const auto& m : report.methods) {
        if (!m.result) os << name(m.method) << ": " << m.error_message << "\n";
    }
    return os.str();
}

}  // namespace boxcox::io

#include "boxcox/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "boxcox/error.hpp"

namespace boxcox::io {

namespace {

struct Record {
    std::size_t line;  // 1-based line the record starts on
    std::vector<std::string> fields;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool blank(const Record& r) {
    return std::all_of(r.fields.begin(), r.fields.end(), [](const std::string& f) { return trim(f).empty(); });
}

std::vector<Record> parse_csv(std::string_view text, std::string_view source) {
    std::vector<Record> records;
    Record current{1, {}};
    std::string field;
    std::size_t line = 1;
    bool quoted = false;
    bool field_started = false;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        if (!blank(current)) records.push_back(std::move(current));
        current = Record{line, {}};
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && trim(field).empty()) {
                    field.clear();
                    quoted = true;
                    field_started = true;
                } else {
                    field.push_back(c);
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default:
                field.push_back(c);
                field_started = field_started || !std::isspace(static_cast<unsigned char>(c));
                break;
        }
    }
    if (quoted) {
        throw Error(ErrorKind::ingestion, std::string(source) + ": unterminated quoted field starting on line " +
                                              std::to_string(current.line));
    }
    if (!field.empty() || !current.fields.empty()) end_record();
    return records;
}

std::vector<Record> parse_whitespace(std::string_view text) {
    std::vector<Record> records;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream fields(raw);
        Record r{line, {}};
        for (std::string f; fields >> f;) r.fields.push_back(f);
        if (!r.fields.empty()) records.push_back(std::move(r));
    }
    return records;
}

std::optional<double> to_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string join_lines(const std::vector<std::size_t>& lines) {
    std::string out;
    const std::size_t shown = std::min<std::size_t>(lines.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) out += ", ";
        out += std::to_string(lines[i]);
    }
    if (lines.size() > shown) out += ", ... (" + std::to_string(lines.size()) + " total)";
    return out;
}

}  // namespace

ColumnSelector::ColumnSelector(std::size_t one_based_index) : choice_(one_based_index) {
    if (one_based_index == 0) throw Error(ErrorKind::invalid_argument, "column index is 1-based");
}

ColumnSelector ColumnSelector::parse(std::string_view text) {
    text = trim(text);
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        std::size_t idx = 0;
        std::from_chars(text.data(), text.data() + text.size(), idx);
        return ColumnSelector(idx);
    }
    if (text.empty()) throw Error(ErrorKind::invalid_argument, "empty column selector");
    return ColumnSelector(std::string(text));
}

std::string ColumnSelector::describe() const {
    if (const auto* n = name()) return "'" + *n + "'";
    return "#" + std::to_string(*index());
}

std::vector<double> parse_column(std::string_view text, const ColumnSelector& column, std::string_view source) {
    const bool csv = text.find(',') != std::string_view::npos;
    const auto records = csv ? parse_csv(text, source) : parse_whitespace(text);
    const std::string where(source);
    if (records.empty()) throw Error(ErrorKind::ingestion, where + ": no data rows");

    const auto& first = records.front().fields;
    const bool has_header =
        std::any_of(first.begin(), first.end(), [](const std::string& f) { return !to_number(f).has_value(); });

    std::size_t col = 0;
    if (const auto* wanted = column.name()) {
        if (!has_header) {
            throw Error(ErrorKind::ingestion, where + ": column " + column.describe() +
                                                  " requested by name but the input has no header row");
        }
        const auto it = std::find_if(first.begin(), first.end(),
                                     [&](const std::string& f) { return trim(f) == *wanted; });
        if (it == first.end()) {
            std::string available;
            for (const auto& f : first) available += (available.empty() ? "" : ", ") + std::string(trim(f));
            throw Error(ErrorKind::ingestion,
                        where + ": column " + column.describe() + " not found (available: " + available + ")");
        }
        col = static_cast<std::size_t>(it - first.begin());
    } else {
        col = *column.index() - 1;
    }

    std::vector<double> values;
    std::vector<std::size_t> bad_lines;
    std::vector<std::size_t> short_lines;
    for (std::size_t r = has_header ? 1 : 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (col >= rec.fields.size()) {
            short_lines.push_back(rec.line);
            continue;
        }
        const auto v = to_number(rec.fields[col]);
        if (!v || !std::isfinite(*v)) {
            bad_lines.push_back(rec.line);
            continue;
        }
        values.push_back(*v);
    }
    if (!short_lines.empty()) {
        throw Error(ErrorKind::ingestion, where + ": column " + column.describe() + " missing on line(s) " +
                                              join_lines(short_lines));
    }
    if (!bad_lines.empty()) {
        throw Error(ErrorKind::ingestion, where + ": non-numeric or non-finite value in column " +
                                              column.describe() + " on line(s) " + join_lines(bad_lines));
    }
    if (values.empty()) throw Error(ErrorKind::ingestion, where + ": no usable rows in column " + column.describe());
    return values;
}

std::vector<double> ingest(const std::filesystem::path& path, const ColumnSelector& column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ingestion, path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_column(buf.str(), column, path.string());
}

}  // namespace boxcox::io

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace boxcox::io {

/// A column chosen by header name or by 1-based position.
class ColumnSelector {
public:
    ColumnSelector() : choice_(std::size_t{1}) {}
    explicit ColumnSelector(std::size_t one_based_index);
    explicit ColumnSelector(std::string header_name) : choice_(std::move(header_name)) {}

    /// All-digit text selects by position, anything else by name.
    [[nodiscard]] static ColumnSelector parse(std::string_view text);

    [[nodiscard]] std::string describe() const;
    [[nodiscard]] const std::string* name() const noexcept { return std::get_if<std::string>(&choice_); }
    [[nodiscard]] const std::size_t* index() const noexcept { return std::get_if<std::size_t>(&choice_); }

private:
    std::variant<std::size_t, std::string> choice_;
};

/// CSV (RFC 4180 quoting) when the text contains a comma, otherwise
/// whitespace-separated columns. A first row with any non-numeric field is a
/// header. Every value of the selected column must be a finite number; the
/// error lists the offending line numbers.
[[nodiscard]] std::vector<double> parse_column(std::string_view text, const ColumnSelector& column,
                                               std::string_view source = "<input>");

/// Reads `path` and applies parse_column. Throws ErrorKind::ingestion.
[[nodiscard]] std::vector<double> ingest(const std::filesystem::path& path, const ColumnSelector& column);

}  // namespace boxcox::io

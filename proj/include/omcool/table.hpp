#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace omcool {

using Cell = std::variant<double, std::string>;

/// Tabular result of a solve, sweep, taxonomy, or atomic run.
///
/// axis_count numeric columns hold grid coordinates, after any leading label
/// columns (case or configuration names). Rows follow row-major grid order.
/// Metadata is written as leading "# key: value" lines.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::size_t axis_count = 0;

    /// Throws DomainError when absent.
    std::size_t column_index(std::string_view name) const;
    bool has_column(std::string_view name) const;
    /// Throws DomainError when the cell holds text.
    double number(std::size_t row, std::size_t column) const;
    const std::string* metadata_value(std::string_view key) const;
    void set_metadata(std::string key, std::string value);

    bool operator==(const ResultTable&) const = default;
};

/// Shortest representation that parses back to the same double; "nan",
/// "inf", "-inf" for non-finite values.
std::string format_double(double value);

std::string to_csv(const ResultTable& table);

/// Inverse of to_csv. Cells that parse completely as numbers become numbers.
/// Throws ParseError on ragged rows or an empty document.
ResultTable parse_csv(std::string_view text);

}  // namespace omcool

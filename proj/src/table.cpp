#include "omcool/table.hpp"

#include <charconv>
#include <cmath>

#include "omcool/errors.hpp"

namespace omcool {

std::size_t ResultTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw DomainError("table has no column '" + std::string(name) + "'");
}

bool ResultTable::has_column(std::string_view name) const {
    for (const auto& c : columns)
        if (c == name) return true;
    return false;
}

double ResultTable::number(std::size_t row, std::size_t column) const {
    const auto& cell = rows.at(row).at(column);
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    throw DomainError("cell (" + std::to_string(row) + ", " + columns.at(column) + ") is not numeric");
}

const std::string* ResultTable::metadata_value(std::string_view key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

void ResultTable::set_metadata(std::string key, std::string value) {
    for (auto& [k, v] : metadata)
        if (k == key) {
            v = std::move(value);
            return;
        }
    metadata.emplace_back(std::move(key), std::move(value));
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string quote(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<std::string> split_record(std::string_view line, std::size_t line_number) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    if (quoted) throw ParseError(ParseErrorKind::syntax, "csv line " + std::to_string(line_number) + ": unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

Cell parse_cell(const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (!text.empty() && res.ec == std::errc() && res.ptr == end) return value;
    return text;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (const auto& [k, v] : table.metadata) out += "# " + k + ": " + v + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + quote(table.columns[i]);
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* d = std::get_if<double>(&row[i])) out += format_double(*d);
            else out += quote(std::get<std::string>(row[i]));
        }
        out += "\n";
    }
    return out;
}

ResultTable parse_csv(std::string_view text) {
    ResultTable table;
    bool header = false;
    std::size_t line_number = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header && line.starts_with("# ")) {
            const auto colon = line.find(": ");
            if (colon == std::string_view::npos)
                throw ParseError(ParseErrorKind::syntax, "csv line " + std::to_string(line_number) + ": malformed metadata");
            table.metadata.emplace_back(std::string(line.substr(2, colon - 2)), std::string(line.substr(colon + 2)));
            continue;
        }
        auto fields = split_record(line, line_number);
        if (!header) {
            table.columns = std::move(fields);
            header = true;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw ParseError(ParseErrorKind::syntax, "csv line " + std::to_string(line_number) + ": expected " +
                                                         std::to_string(table.columns.size()) + " fields, got " +
                                                         std::to_string(fields.size()));
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_cell(f));
        table.rows.push_back(std::move(row));
    }
    if (!header) throw ParseError(ParseErrorKind::syntax, "csv: no header row");
    if (const auto* axes = table.metadata_value("axes")) {
        std::size_t n = 0;
        const auto res = std::from_chars(axes->data(), axes->data() + axes->size(), n);
        if (res.ec != std::errc() || n > table.columns.size())
            throw ParseError(ParseErrorKind::wrong_type, "csv: bad axes metadata '" + *axes + "'");
        table.axis_count = n;
    }
    return table;
}

}  // namespace omcool

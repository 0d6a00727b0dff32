#include "rgsrate/table.h"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rgsrate {

void table::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("row width does not match header");
    rows.push_back(std::move(cells));
}

std::string csv_escape(const std::string& field) {
    const bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs)
        return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& os, const table& t) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (size_t i = 0; i < row.size(); ++i)
            obj[t.columns[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

} // namespace rgsrate

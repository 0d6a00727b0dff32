#ifndef RGSRATE_TABLE_H
#define RGSRATE_TABLE_H

#include <ostream>
#include <string>
#include <vector>

namespace rgsrate {

// Rectangular output table; cells are preformatted strings.
struct table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

// RFC-4180 quoting: fields with comma, quote or newline are quoted, inner
// quotes doubled.
std::string csv_escape(const std::string& field);
void write_csv(std::ostream& os, const table& t);

// Array of one object per row; numeric-looking cells stay strings to keep
// the two formats byte-stable against each other.
void write_json(std::ostream& os, const table& t);

} // namespace rgsrate

#endif

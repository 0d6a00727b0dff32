#ifndef RGSRATE_CONFIG_H
#define RGSRATE_CONFIG_H

#include <string>
#include <utility>
#include <vector>

namespace rgsrate {

// Flat key = value document: '#' comments, blank lines ignored, later keys
// override earlier ones. Order is preserved for serialization.
using kv_pairs = std::vector<std::pair<std::string, std::string>>;

kv_pairs parse_config_text(const std::string& text);
std::string serialize_config(const kv_pairs& kv);

// Round-trip-exact decimal form (%.17g trimmed to the shortest string that
// parses back bit-identically).
std::string format_double(double v);

// "1000", "1000km", "50Latt" (suffix case-insensitive) -> km.
double parse_distance_km(const std::string& s, double l_att_km);

} // namespace rgsrate

#endif

#include "rgsrate/config.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace rgsrate {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

kv_pairs parse_config_text(const std::string& text) {
    kv_pairs out;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        const std::string line =
            text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " +
                                        std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " +
                                        std::to_string(line_no) +
                                        ": empty key");
        out.emplace_back(key, value);
    }
    return out;
}

std::string serialize_config(const kv_pairs& kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::string best;
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v &&
            (best.empty() || std::strlen(buf) < best.size()))
            best = buf;
    }
    return best;
}

double parse_distance_km(const std::string& s, double l_att_km) {
    const std::string t = trim(s);
    const std::string lo = lower(t);
    double factor = 1.0;
    size_t cut = t.size();
    if (lo.size() >= 4 && lo.compare(lo.size() - 4, 4, "latt") == 0) {
        factor = l_att_km;
        cut = t.size() - 4;
    } else if (lo.size() >= 2 && lo.compare(lo.size() - 2, 2, "km") == 0) {
        cut = t.size() - 2;
    }
    const std::string num = trim(t.substr(0, cut));
    if (num.empty())
        throw std::invalid_argument("bad distance: '" + s + "'");
    char* end = nullptr;
    const double v = std::strtod(num.c_str(), &end);
    if (end != num.c_str() + num.size())
        throw std::invalid_argument("bad distance: '" + s + "'");
    return v * factor;
}

} // namespace rgsrate

#include "tele/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace tele {

namespace {

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    // Exponent after rounding to nine digits, so 0.9999999999 counts as 1.
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    const int magnitude = std::atoi(std::strchr(buf, 'e') + 1);
    const int decimals = std::clamp(8 - magnitude, 0, 30);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) return "0";
    return s;
}

std::string format_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CSV row has wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote(cells[i]);
    }
    out_ << '\n';
}

}  // namespace tele

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tele {

// Fixed notation, 9 significant digits, '.' separator, no exponent.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);  // empty when absent

// Minimal RFC-4180 writer: header row first, '\n' line endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
    std::size_t columns_;
};

}  // namespace tele

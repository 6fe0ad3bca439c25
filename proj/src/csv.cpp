#include "stokeshs/csv.hpp"

#include <cmath>
#include <cstdio>

namespace stokeshs::csvio {

std::string format_number(double v) {
    char buf[64];
    if (v == 0.0) {
        return "0";
    }
    const double a = std::abs(v);
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (a < 1e-4 || a > 1e6) {
        std::snprintf(buf, sizeof(buf), "%.12e", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
    }
    return buf;
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

Writer::Writer(const std::string& path, const std::vector<std::string>& config_lines)
    : out_(path) {
    for (const auto& line : config_lines) out_ << "# " << line << "\n";
}

void Writer::header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i)
        out_ << (i ? "," : "") << quote(cols[i]);
    out_ << "\n";
}

void Writer::row(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ",";
        if (std::holds_alternative<double>(cells[i])) {
            out_ << format_number(std::get<double>(cells[i]));
        } else if (std::holds_alternative<long>(cells[i])) {
            out_ << std::get<long>(cells[i]);
        } else {
            out_ << quote(std::get<std::string>(cells[i]));
        }
    }
    out_ << "\n";
}

}  // namespace stokeshs::csvio

#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace stokeshs::csvio {

/// RFC-4180 number formatting: '.' decimal separator, exponent notation for
/// |x| < 1e-4 or |x| > 1e6 (and always enough digits to round-trip).
std::string format_number(double v);

/// quote an arbitrary string field if it contains separators/quotes
std::string quote(const std::string& s);

using Cell = std::variant<double, long, std::string>;

/// CSV writer: '#'-prefixed header comment lines carry the full effective
/// configuration, then one header row, then data rows in input order.
class Writer {
  public:
    Writer(const std::string& path, const std::vector<std::string>& config_lines);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<Cell>& cells);
    bool good() const { return static_cast<bool>(out_); }

  private:
    std::ofstream out_;
};

}  // namespace stokeshs::csvio

#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace scar::cli {

/// Shortest-safe text for a double: 17 significant digits, round-trip exact.
std::string format_double(double v);

// Comma-separated, '.' decimal, LF line endings, header row first.
class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string>;

  CsvWriter(std::ostream& os, std::vector<std::string> header);
  void row(const std::vector<Cell>& cells);
  std::size_t columns() const { return header_.size(); }

 private:
  std::ostream& os_;
  std::vector<std::string> header_;
};

}  // namespace scar::cli

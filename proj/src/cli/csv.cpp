#include "csv.hpp"

#include <cstdio>

#include "scar/error.hpp"

namespace scar::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header)
    : os_(os), header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) os_ << (i ? "," : "") << header_[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != header_.size()) throw Error("CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    if (const auto* d = std::get_if<double>(&cells[i]))
      os_ << format_double(*d);
    else if (const auto* n = std::get_if<long long>(&cells[i]))
      os_ << *n;
    else
      os_ << std::get<std::string>(cells[i]);
  }
  os_ << '\n';
}

}  // namespace scar::cli

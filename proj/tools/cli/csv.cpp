#include "csv.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace cachewave::cli {

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::logic_error(fmt::format("csv row has {} cells, header has {}",
                                       cells.size(), header_.size()));
  }
  rows_.push_back(std::move(cells));
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::render(const std::vector<std::string>& preamble) const {
  std::string out;
  for (const std::string& line : preamble) {
    out += "# ";
    out += line;
    out += '\n';
  }
  append_line(out, header_);
  for (const auto& row : rows_) append_line(out, row);
  return out;
}

std::string cell(double v) { return fmt::format("{}", v); }
std::string cell(std::size_t v) { return fmt::format("{}", v); }
std::string cell(std::string_view v) { return std::string(v); }

}  // namespace cachewave::cli

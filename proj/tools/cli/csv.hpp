#pragma once

#include <string>
#include <vector>

namespace cachewave::cli {

/// Long-format table rendered as CSV under a `#` metadata preamble.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::size_t size() const noexcept { return rows_.size(); }

  std::string render(const std::vector<std::string>& preamble) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest text that round-trips the double.
std::string cell(double v);
std::string cell(std::size_t v);
std::string cell(std::string_view v);

}  // namespace cachewave::cli

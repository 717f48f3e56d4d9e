#pragma once

// Minimal CSV plumbing shared by the stage readers and writers. Fields never
// contain commas or quotes in any of the formats this project reads.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "adl/activity_model.hpp"

namespace adl::csv {

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

// Reads the next line that is not blank. Strips a trailing '\r'. line_no is advanced.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no);

// Column lookup over a header row. index() is -1 when absent.
class Header {
 public:
  explicit Header(const std::vector<std::string>& cols);
  int index(std::string_view name) const;
  bool has(std::string_view name) const { return index(name) >= 0; }
  std::size_t size() const { return cols_.size(); }
  const std::vector<std::string>& columns() const { return cols_; }

 private:
  std::vector<std::string> cols_;
};

std::string join_ids(const IdSet& ids);              // "1;2;5"
IdSet parse_ids(std::string_view text);              // throws std::invalid_argument
std::string format_double(double v);                  // shortest round-trip form
double parse_double(std::string_view text);           // throws std::invalid_argument

}  // namespace adl::csv

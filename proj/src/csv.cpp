#include "adl/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace adl::csv {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) return true;
  }
  return false;
}

Header::Header(const std::vector<std::string>& cols) : cols_(cols) {}

int Header::index(std::string_view name) const {
  for (std::size_t i = 0; i < cols_.size(); ++i)
    if (cols_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string join_ids(const IdSet& ids) {
  std::string out;
  for (int id : ids) {
    if (!out.empty()) out += ';';
    out += std::to_string(id);
  }
  return out;
}

IdSet parse_ids(std::string_view text) {
  IdSet ids;
  text = trim(text);
  if (text.empty()) return ids;
  for (const auto& part : split(text, ';')) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
      throw std::invalid_argument("bad id \"" + part + "\"");
    ids.insert(v);
  }
  return ids;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("bad number \"" + std::string(text) + "\"");
  return v;
}

}  // namespace adl::csv

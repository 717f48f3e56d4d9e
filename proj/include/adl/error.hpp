#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace adl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : Error(compose(what, violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string compose(const std::string& what, const std::vector<std::string>& v) {
    std::string out = what;
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

// Unknown or duplicate names: activity labels, channels, matrix labels.
class LookupError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter outside its documented range. key() names it.
class RangeError : public Error {
 public:
  RangeError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace adl

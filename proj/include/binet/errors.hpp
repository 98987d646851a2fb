#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace binet {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. The message carries "path:line: what".
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Violated precondition or semantic error (unknown word, missing edge, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad configuration (unknown key, out-of-range value). The CLI maps this to
// a usage error, everything else above to a data error.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace binet

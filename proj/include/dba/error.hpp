#pragma once

#include <stdexcept>
#include <string>

namespace dba {

// Base for every error the library raises on bad input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid session or family configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's domain (e.g. non-positive ABV).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Statistic requested on too few observations.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A judge row with fewer than two distinct raw scores.
class DegenerateRowError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. Carries the 1-based row (header is row 1) and
// column name when they are known.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t row, std::string column,
             const std::string& what)
      : Error(format(source, row, column, what)),
        source_(std::move(source)),
        row_(row),
        column_(std::move(column)) {}

  explicit ParseError(const std::string& what) : Error(what) {}

  const std::string& source() const { return source_; }
  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  static std::string format(const std::string& source, std::size_t row,
                            const std::string& column,
                            const std::string& what) {
    std::string msg = source;
    if (row > 0) msg += ":row " + std::to_string(row);
    if (!column.empty()) msg += ":column " + column;
    return msg + ": " + what;
  }

  std::string source_;
  std::size_t row_ = 0;
  std::string column_;
};

}  // namespace dba

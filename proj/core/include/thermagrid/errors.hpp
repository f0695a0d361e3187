#pragma once

#include <stdexcept>
#include <string>

namespace thermagrid {

/// Bad user input: malformed config, out-of-range parameter, broken invariant.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The bipartite instance admits no source-side perfect matching (|targets| < |sources|).
class InfeasibleMatchingError : public std::runtime_error {
 public:
  explicit InfeasibleMatchingError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while reading config or writing reports.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thermagrid

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgcn {

/// A precondition of an operation was violated by the caller (dimension
/// mismatch, off-manifold input, unsupported activation tag, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input lies outside the mathematical domain of a function, e.g. a strict
/// Lorentzian norm of a time-like vector or a ball point on the boundary.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Centroid denominator vanished; only reachable with corrupted inputs.
class DegenerateConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric is undefined for the given input (single-class AUC, fewer than
/// four nodes for hyperbolicity, no countable pairs for distortion).
class UndefinedMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration (unknown key, wrong type, bad value).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

namespace detail {
inline void require(bool ok, const char* msg) {
  if (!ok) throw ContractViolation(msg);
}
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ContractViolation(msg);
}
}  // namespace detail

}  // namespace lgcn

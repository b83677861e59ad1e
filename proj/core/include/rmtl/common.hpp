#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rmtl {

/// Base class for all errors raised by the toolkit.  The kind maps onto the
/// command-line exit status.
class Error : public std::runtime_error {
public:
  enum class Kind { Usage, Data, Numeric };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Invalid parameter values (levels, truncation times, flags).
class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(Kind::Usage, what) {}
};

/// Input data that cannot be analysed (malformed rows, degenerate groups).
class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(Kind::Data, what) {}
};

/// Root-finding, calibration or series evaluation failures.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(Kind::Numeric, what) {}
};

/// Collects non-fatal warnings.  Functions accept a nullable pointer; a null
/// sink silently drops messages.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void warn(Diagnostics* sink, std::string message) {
  if (sink != nullptr) sink->warn(std::move(message));
}

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

}  // namespace rmtl

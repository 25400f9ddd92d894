#pragma once

#include <stdexcept>
#include <string>

namespace qbt {

/// Requested object exceeds what the truncated representation can hold
/// (basis dimension, dense realization, series length, cutoff search).
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to produce a trustworthy result.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario configuration violates an invariant of the requested scenario.
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qbt

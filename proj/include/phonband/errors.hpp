// SPDX-License-Identifier: Apache-2.0

#ifndef PHONBAND_ERRORS_HPP
#define PHONBAND_ERRORS_HPP

#include <stdexcept>

namespace phonband {

// Invalid run configuration or geometry/discretization mismatch.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed (root finder, factorization, eigensolver).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phonband

#endif  // PHONBAND_ERRORS_HPP

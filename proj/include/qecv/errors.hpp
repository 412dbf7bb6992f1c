// Copyright 2026 The qecv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qecv {

/** Malformed input: bad spec, out-of-range index, mismatched sizes. */
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string &message)
      : std::invalid_argument(message) {}
};

/** Operands of incompatible dimension. */
class DimensionMismatch : public InvalidInput {
 public:
  explicit DimensionMismatch(const std::string &message)
      : InvalidInput(message) {}
};

/** A numerical precondition (Hermiticity, normalization, finiteness) failed. */
class NumericalError : public std::domain_error {
 public:
  explicit NumericalError(const std::string &message)
      : std::domain_error(message) {}
};

/** Dense-simulation resource guard exceeded. */
class GuardExceeded : public std::length_error {
 public:
  explicit GuardExceeded(const std::string &message)
      : std::length_error(message) {}
};

/** Recovery requested for a (code, channel) pair that is not correctable. */
class NotCorrectable : public std::logic_error {
 public:
  explicit NotCorrectable(const std::string &message)
      : std::logic_error(message) {}
};

/// Largest qubit count rendered as a dense matrix.
inline constexpr int kDenseQubitLimit = 12;
/// Largest qubit count for which an explicit Choi matrix is formed.
inline constexpr int kChoiQubitLimit = 6;

namespace detail {
inline int env_limit(const char *name, int fallback) {
  const char *value = std::getenv(name);
  if (value == nullptr || *value == '\0') return fallback;
  char *end = nullptr;
  long parsed = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || parsed <= 0 || parsed > 30) return fallback;
  return static_cast<int>(parsed);
}
}  // namespace detail

/// Dense qubit limit, overridable through QECV_UNSAFE_DENSE_LIMIT. Raising it
/// can exhaust memory.
inline int dense_qubit_limit() {
  return detail::env_limit("QECV_UNSAFE_DENSE_LIMIT", kDenseQubitLimit);
}

/// Explicit Choi qubit limit, overridable through QECV_UNSAFE_CHOI_LIMIT.
inline int choi_qubit_limit() {
  return detail::env_limit("QECV_UNSAFE_CHOI_LIMIT", kChoiQubitLimit);
}

inline void require_dense(int n, const char *what) {
  if (n > dense_qubit_limit()) {
    throw GuardExceeded(std::string(what) + ": " + std::to_string(n) +
                        " qubits exceeds dense limit of " +
                        std::to_string(dense_qubit_limit()));
  }
}

}  // namespace qecv

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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qecv/errors.hpp"
#include "qecv/linalg.hpp"

namespace qecv {

/**
 * [[n, k]] code given by an isometry V from the 2^k logical space into the
 * 2^n physical space. Column j of V encodes logical basis state |j>, with the
 * logical qubits in computational order.
 */
class CodeSpace {
 public:
  CodeSpace(int n, int k, Matrix isometry)
      : n_(n), k_(k), isometry_(std::move(isometry)) {
    if (n < 0 || k < 0 || k > n)
      throw InvalidInput("CodeSpace: need 0 <= k <= n, got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
    require_dense(n, "CodeSpace");
    if (isometry_.rows() != (Eigen::Index{1} << n) || isometry_.cols() != (Eigen::Index{1} << k))
      throw DimensionMismatch("CodeSpace: isometry must be 2^n x 2^k");
    if (!all_finite(isometry_)) throw NumericalError("CodeSpace: non-finite amplitude");
    Matrix gram = isometry_.adjoint() * isometry_;
    if (max_abs_diff(gram, Matrix::Identity(gram.rows(), gram.cols())) > 1e-10)
      throw NumericalError("CodeSpace: codewords are not orthonormal");
  }

  int n() const { return n_; }
  int k() const { return k_; }
  Eigen::Index physical_dim() const { return isometry_.rows(); }
  Eigen::Index logical_dim() const { return isometry_.cols(); }
  const Matrix &isometry() const { return isometry_; }

  Matrix projector() const { return isometry_ * isometry_.adjoint(); }

  Vector encode(const Vector &logical) const {
    if (logical.size() != logical_dim())
      throw DimensionMismatch("CodeSpace::encode: logical state has wrong dimension");
    return isometry_ * logical;
  }

 private:
  int n_;
  int k_;
  Matrix isometry_;
};

/// Codewords |0>^{(x)n} and |1>^{(x)n}, n = 2m + 1.
inline CodeSpace repetition_code(int m) {
  if (m < 1) throw InvalidInput("repetition_code: m must be >= 1");
  const int n = 2 * m + 1;
  require_dense(n, "repetition_code");
  Matrix v = Matrix::Zero(Eigen::Index{1} << n, 2);
  v(0, 0) = 1;
  v((Eigen::Index{1} << n) - 1, 1) = 1;
  return CodeSpace(n, 1, std::move(v));
}

/// |psi> -> |psi> (x) |0> (x) |+>; the two ancillas are the last qubits.
inline CodeSpace ancilla_code(int n) {
  if (n < 3) throw InvalidInput("ancilla_code: need at least 3 qubits");
  require_dense(n, "ancilla_code");
  const int k = n - 2;
  const double amp = 1.0 / std::sqrt(2.0);
  Matrix v = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << k);
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    v(4 * j + 0, j) = amp;  // ancillas |0>|0>
    v(4 * j + 1, j) = amp;  // ancillas |0>|1>
  }
  return CodeSpace(n, k, std::move(v));
}

/// Orthonormalizes the given codewords by modified Gram-Schmidt.
inline CodeSpace from_codewords(const std::vector<Vector> &vectors) {
  if (vectors.empty()) throw InvalidInput("from_codewords: no codewords");
  const auto dim = vectors.front().size();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw InvalidInput("from_codewords: vector length is not a power of two");
  int k = 0;
  while ((std::size_t{1} << k) < vectors.size()) ++k;
  if ((std::size_t{1} << k) != vectors.size())
    throw InvalidInput("from_codewords: codeword count " + std::to_string(vectors.size()) +
                       " is not a power of two");
  require_dense(n, "from_codewords");
  Matrix v(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim)
      throw DimensionMismatch("from_codewords: codewords differ in length");
    Vector w = vectors[j];
    double scale = w.norm();
    if (!std::isfinite(scale)) throw NumericalError("from_codewords: non-finite amplitude");
    for (std::size_t i = 0; i < j; ++i) w -= v.col(i).dot(w) * v.col(i);
    double remaining = w.norm();
    if (scale == 0 || remaining <= 1e-10 * scale)
      throw InvalidInput("from_codewords: codeword " + std::to_string(j) +
                         " is linearly dependent on the previous ones");
    v.col(j) = w / remaining;
  }
  return CodeSpace(n, k, std::move(v));
}

}  // namespace qecv

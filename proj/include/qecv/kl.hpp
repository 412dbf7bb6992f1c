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

// Knill-Laflamme verification of (code, channel) pairs, together with the
// complementary-channel and reference/environment characterizations of the
// same property.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qecv/channels.hpp"
#include "qecv/codes.hpp"
#include "qecv/errors.hpp"
#include "qecv/linalg.hpp"

namespace qecv {

inline constexpr double kDefaultKLTolerance = 1e-8;

struct KLMatrix {
  Matrix M;          // M_ij = Tr[V^dag L_i^dag L_j V] / 2^k
  double residual;   // max_ij || V^dag L_i^dag L_j V - M_ij I ||_F
};

struct KLReport {
  Matrix M;
  double residual = 0;
  double tolerance = kDefaultKLTolerance;
  bool correctable = false;
  bool degenerate = false;
  int rank_M = 0;
  int rank_choi = 0;
  std::size_t kraus_supplied = 0;  // cardinality before minimization
  bool minimized = false;          // supplied set was not minimal
};

namespace detail {
inline void check_code_channel(const CodeSpace &code, const KrausSet &kraus) {
  if (kraus.input_dim() != code.physical_dim() || kraus.output_dim() != code.physical_dim())
    throw DimensionMismatch("channel acts on dimension " + std::to_string(kraus.input_dim()) +
                            ", code lives in dimension " +
                            std::to_string(code.physical_dim()));
}

inline void check_code_channel(const CodeSpace &code, const PauliChannel &c) {
  if (c.num_qubits() != code.n())
    throw DimensionMismatch("channel acts on " + std::to_string(c.num_qubits()) +
                            " qubits, code has " + std::to_string(code.n()));
}

// L_i V for every Kraus operator.
inline std::vector<Matrix> encoded_errors(const CodeSpace &code, const KrausSet &kraus) {
  std::vector<Matrix> out;
  out.reserve(kraus.size());
  for (const auto &op : kraus.operators()) out.push_back(op * code.isometry());
  return out;
}
}  // namespace detail

namespace detail {
// sqrt(p) P V for every term; the terms of a PauliChannel are already minimal.
inline std::vector<Matrix> encoded_errors(const CodeSpace &code, const PauliChannel &channel) {
  std::vector<Matrix> out;
  out.reserve(channel.size());
  for (const auto &t : channel.terms()) out.push_back(std::sqrt(t.p) * t.op.apply(code.isometry()));
  return out;
}

inline KLMatrix kl_from_encoded(const std::vector<Matrix> &errors, Eigen::Index logical) {
  const auto count = static_cast<Eigen::Index>(errors.size());
  const Matrix eye = Matrix::Identity(logical, logical);
  KLMatrix out{Matrix::Zero(count, count), 0.0};
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = i; j < count; ++j) {
      Matrix block = errors[i].adjoint() * errors[j];
      cplx m = block.trace() / static_cast<double>(logical);
      out.M(i, j) = m;
      out.M(j, i) = std::conj(m);
      out.residual = std::max(out.residual, (block - m * eye).norm());
    }
  return out;
}
}  // namespace detail

inline KLMatrix kl_matrix(const CodeSpace &code, const KrausSet &kraus) {
  detail::check_code_channel(code, kraus);
  return detail::kl_from_encoded(detail::encoded_errors(code, kraus), code.logical_dim());
}

inline KLMatrix kl_matrix(const CodeSpace &code, const PauliChannel &channel) {
  detail::check_code_channel(code, channel);
  return detail::kl_from_encoded(detail::encoded_errors(code, channel), code.logical_dim());
}

namespace detail {
inline KLReport kl_report(KLMatrix kl, std::size_t minimal, std::size_t supplied, double tol) {
  auto &[M, residual] = kl;
  KLReport r;
  r.rank_M = numerical_rank(M);
  r.M = std::move(M);
  r.residual = residual;
  r.tolerance = tol;
  r.correctable = residual <= tol;
  r.rank_choi = static_cast<int>(minimal);
  r.degenerate = r.rank_M < r.rank_choi;
  r.kraus_supplied = supplied;
  r.minimized = minimal != supplied;
  return r;
}
}  // namespace detail

/// Knill-Laflamme verdict on the minimal Kraus set of `kraus`; degeneracy is
/// rank(M) < choi rank.
inline KLReport is_correctable(const CodeSpace &code, const KrausSet &kraus,
                               double tol = kDefaultKLTolerance) {
  detail::check_code_channel(code, kraus);
  const KrausSet minimal = minimal_kraus(kraus);
  return detail::kl_report(kl_matrix(code, minimal), minimal.size(), kraus.size(), tol);
}

inline KLReport is_correctable(const CodeSpace &code, const PauliChannel &channel,
                               double tol = kDefaultKLTolerance) {
  detail::check_code_channel(code, channel);
  return detail::kl_report(kl_matrix(code, channel), channel.size(), channel.size(), tol);
}

/// Environment state rho^{E'}_{ij} = Tr[L_i rho L_j^dagger] left by the
/// Stinespring dilation U|psi>|eta> = sum_i L_i|psi>|e_i>. For a correctable
/// pair this is M^T whatever the code input.
inline Matrix complementary_state(const CodeSpace &code, const KrausSet &kraus,
                                  const Matrix &input) {
  detail::check_code_channel(code, kraus);
  if (input.rows() != code.physical_dim() || input.cols() != code.physical_dim())
    throw DimensionMismatch("complementary_state: input has wrong dimension");
  if (std::abs(input.trace() - cplx(1.0)) > 1e-9)
    throw NumericalError("complementary_state: input does not have unit trace");
  Matrix outside = input - code.projector() * input;
  if (outside.norm() > 1e-10)
    throw InvalidInput("complementary_state: input is not supported on the code");
  // input = W W^dagger, so Tr[L_i input L_j^dagger] = <vec(L_j W), vec(L_i W)>.
  auto [values, vectors] = eigh(input);
  if (values.minCoeff() < -1e-9)
    throw NumericalError("complementary_state: input is not positive semidefinite");
  Eigen::Index rank = 0;
  while (rank < values.size() && values(rank) > 1e-14 * std::max(values(0), 1.0)) ++rank;
  Matrix W = vectors.leftCols(rank) * values.head(rank).cwiseSqrt().asDiagonal();
  const auto count = static_cast<Eigen::Index>(kraus.size());
  Matrix columns(input.rows() * rank, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    Matrix LW = kraus[i] * W;
    columns.col(i) = Eigen::Map<const Vector>(LW.data(), LW.size());
  }
  return (columns.adjoint() * columns).transpose();
}

struct DeletionCheck {
  bool constant = false;     // output independent of the input state
  double spread = 0;         // max entrywise distance between outputs
  double distance_to_MT = 0; // max entrywise distance from M^T
  int samples = 0;
};

/// Evaluates the complementary channel on `samples` Haar-random code states.
inline DeletionCheck deletion_channel_check(const CodeSpace &code, const KrausSet &kraus,
                                            int samples = 20, std::uint64_t seed = 0,
                                            double tol = 1e-9) {
  if (samples < 2) throw InvalidInput("deletion_channel_check: need at least 2 samples");
  std::mt19937_64 rng(seed);
  const Matrix MT = kl_matrix(code, kraus).M.transpose();
  DeletionCheck out;
  out.samples = samples;
  Matrix first;
  for (int s = 0; s < samples; ++s) {
    Vector psi = code.encode(haar_random_state(code.logical_dim(), rng));
    Matrix env = complementary_state(code, kraus, psi * psi.adjoint());
    if (s == 0)
      first = env;
    else
      out.spread = std::max(out.spread, max_abs_diff(env, first));
    out.distance_to_MT = std::max(out.distance_to_MT, max_abs_diff(env, MT));
  }
  out.constant = out.spread <= tol;
  return out;
}

struct ProductCheck {
  bool is_product = false;
  double deviation = 0;  // || rho^{RE} - rho^R (x) rho^E ||_1
};

/**
 * Purifies the maximally mixed code state with a 2^k-dimensional reference,
 * applies the Stinespring dilation of `kraus`, traces out the system and
 * measures how far the reference/environment state is from a product.
 */
inline ProductCheck reference_environment_product_check(const CodeSpace &code,
                                                         const KrausSet &kraus,
                                                         double tol = 1e-8) {
  detail::check_code_channel(code, kraus);
  const Eigen::Index ref = code.logical_dim(), sys = code.physical_dim();
  const auto env = static_cast<Eigen::Index>(kraus.size());
  if (ref * sys * env > (Eigen::Index{1} << (dense_qubit_limit() + 12)))
    throw GuardExceeded("reference_environment_product_check: joint state too large");
  const auto errors = detail::encoded_errors(code, kraus);
  const double norm = 1.0 / std::sqrt(static_cast<double>(ref));
  Vector psi(ref * sys * env);
  for (Eigen::Index l = 0; l < ref; ++l)
    for (Eigen::Index s = 0; s < sys; ++s)
      for (Eigen::Index e = 0; e < env; ++e)
        psi((l * sys + s) * env + e) = norm * errors[e](s, l);
  const std::vector<Eigen::Index> dims{ref, sys, env};
  const std::vector<int> keep{0, 2};
  Matrix rho_re = reduced_density(psi, dims, keep);
  Matrix rho_r = partial_trace(rho_re, {ref, env}, {0});
  Matrix rho_e = partial_trace(rho_re, {ref, env}, {1});
  ProductCheck out;
  out.deviation = trace_norm(rho_re - kron(rho_r, rho_e));
  out.is_product = out.deviation <= tol;
  return out;
}

}  // namespace qecv

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

// Dense complex linear algebra shared by the verification modules. Thin
// wrappers over Eigen with the rank and Hermiticity policies fixed in one
// place.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "qecv/errors.hpp"

namespace qecv {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Singular values below max(rows, cols) * sigma_max * relative are treated as
/// zero.
struct RankTolerance {
  double relative = 1e-10;
};

inline bool all_finite(const Matrix &m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

inline double rank_threshold(double largest, Eigen::Index rows,
                             Eigen::Index cols, RankTolerance tol = {}) {
  return static_cast<double>(std::max(rows, cols)) * largest * tol.relative;
}

inline RealVector singular_values(const Matrix &m) {
  if (!all_finite(m)) throw NumericalError("singular_values: non-finite entry");
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

inline int numerical_rank(const Matrix &m, RankTolerance tol = {}) {
  if (m.size() == 0) throw InvalidInput("numerical_rank: empty matrix");
  RealVector s = singular_values(m);
  if (s.size() == 0) return 0;
  double cut = rank_threshold(s.maxCoeff(), m.rows(), m.cols(), tol);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return rank;
}

inline double hermitian_defect(const Matrix &m) {
  return (m - m.adjoint()).norm();
}

inline bool is_hermitian(const Matrix &m, double relative = 1e-10) {
  return m.rows() == m.cols() && hermitian_defect(m) <= relative * m.norm();
}

struct Eigh {
  RealVector values;  // descending
  Matrix vectors;     // columns match values
};

/// Hermitian eigendecomposition, eigenvalues in descending order.
inline Eigh eigh(const Matrix &m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigh: matrix not square");
  if (!all_finite(m)) throw NumericalError("eigh: non-finite entry");
  if (!is_hermitian(m)) throw NumericalError("eigh: matrix is not Hermitian");
  Matrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigh: eigensolver did not converge");
  Eigh out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Sum of singular values.
inline double trace_norm(const Matrix &m) { return singular_values(m).sum(); }

inline Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector &a, const Vector &b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace detail {

// Splits every composite index into (kept, traced) indices, subsystem 0 being
// the most significant digit.
struct SubsystemSplit {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> traced;
  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
};

inline SubsystemSplit split_subsystems(std::span<const Eigen::Index> dims,
                                       std::span<const int> keep,
                                       Eigen::Index total) {
  Eigen::Index product = 1;
  for (auto d : dims) {
    if (d <= 0) throw InvalidInput("partial_trace: subsystem dimension must be positive");
    product *= d;
  }
  if (product != total)
    throw DimensionMismatch("partial_trace: product of dims " +
                            std::to_string(product) + " != matrix dimension " +
                            std::to_string(total));
  std::vector<bool> kept_flag(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= dims.size())
      throw InvalidInput("partial_trace: keep index out of range");
    if (kept_flag[k]) throw InvalidInput("partial_trace: duplicate keep index");
    kept_flag[k] = true;
  }
  SubsystemSplit s;
  for (std::size_t q = 0; q < dims.size(); ++q)
    (kept_flag[q] ? s.kept_dim : s.traced_dim) *= dims[q];
  s.kept.resize(total);
  s.traced.resize(total);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rest = idx;
    Eigen::Index kept = 0, traced = 0, kept_scale = 1, traced_scale = 1;
    for (std::size_t q = dims.size(); q-- > 0;) {
      Eigen::Index digit = rest % dims[q];
      rest /= dims[q];
      if (kept_flag[q]) {
        kept += digit * kept_scale;
        kept_scale *= dims[q];
      } else {
        traced += digit * traced_scale;
        traced_scale *= dims[q];
      }
    }
    s.kept[idx] = kept;
    s.traced[idx] = traced;
  }
  return s;
}

}  // namespace detail

/// Reduces `m` onto the subsystems listed in `keep`, which stay in their
/// original relative order.
inline Matrix partial_trace(const Matrix &m, std::span<const Eigen::Index> dims,
                            std::span<const int> keep) {
  if (m.rows() != m.cols()) throw DimensionMismatch("partial_trace: matrix not square");
  auto split = detail::split_subsystems(dims, keep, m.rows());
  std::vector<std::vector<Eigen::Index>> groups(split.traced_dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) groups[split.traced[i]].push_back(i);
  Matrix out = Matrix::Zero(split.kept_dim, split.kept_dim);
  for (const auto &group : groups)
    for (auto i : group)
      for (auto j : group) out(split.kept[i], split.kept[j]) += m(i, j);
  return out;
}

inline Matrix partial_trace(const Matrix &m, std::initializer_list<Eigen::Index> dims,
                            std::initializer_list<int> keep) {
  return partial_trace(m, std::span(dims.begin(), dims.size()),
                       std::span(keep.begin(), keep.size()));
}

/// Reduced density matrix of the pure state `psi` on the kept subsystems,
/// without forming |psi><psi|.
inline Matrix reduced_density(const Vector &psi, std::span<const Eigen::Index> dims,
                              std::span<const int> keep) {
  auto split = detail::split_subsystems(dims, keep, psi.size());
  Matrix amplitudes = Matrix::Zero(split.kept_dim, split.traced_dim);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    amplitudes(split.kept[i], split.traced[i]) = psi(i);
  return amplitudes * amplitudes.adjoint();
}

/// <psi|rho|psi> for a normalized psi and a density matrix rho.
inline double fidelity(const Vector &psi, const Matrix &rho) {
  if (rho.rows() != rho.cols() || rho.rows() != psi.size())
    throw DimensionMismatch("fidelity: state and density matrix sizes differ");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw NumericalError("fidelity: state vector is not normalized");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-9)
    throw NumericalError("fidelity: density matrix does not have unit trace");
  auto spectrum = eigh(rho).values;
  if (spectrum.minCoeff() < -1e-9)
    throw NumericalError("fidelity: density matrix is not positive semidefinite");
  cplx value = psi.dot(rho * psi);
  if (std::abs(value.imag()) > 1e-12)
    throw NumericalError("fidelity: overlap has an imaginary part");
  return std::clamp(value.real(), 0.0, 1.0);
}

/// Haar-random unit vector from normalized complex Gaussians.
template <typename Rng>
Vector haar_random_state(Eigen::Index dim, Rng &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

/// Haar-random unitary via QR of a complex Ginibre matrix.
template <typename Rng>
Matrix haar_random_unitary(Eigen::Index dim, Rng &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff: shapes differ");
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qecv

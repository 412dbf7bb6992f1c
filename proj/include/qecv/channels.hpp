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

#include <Eigen/Sparse>

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qecv/errors.hpp"
#include "qecv/linalg.hpp"
#include "qecv/pauli.hpp"

namespace qecv {

/// Probabilities below this are dropped from channels.
inline constexpr double kNegligibleProbability = 1e-12;

struct PauliTerm {
  double p;
  PauliString op;
};

/**
 * Random-Pauli channel rho -> sum_i p_i P_i rho P_i^dagger.
 *
 * Terms that agree up to a global phase are merged, and terms with
 * probability <= kNegligibleProbability are dropped, so the stored terms are
 * exactly the support of the noise.
 */
class PauliChannel {
 public:
  PauliChannel(int n, const std::vector<PauliTerm> &terms) : n_(n) {
    if (n < 0) throw InvalidInput("PauliChannel: negative qubit count");
    double total = 0;
    for (const auto &t : terms) {
      if (t.op.num_qubits() != n)
        throw DimensionMismatch("PauliChannel: term " + t.op.str() + " is not on " +
                                std::to_string(n) + " qubits");
      if (!std::isfinite(t.p) || t.p < 0)
        throw InvalidInput("PauliChannel: probability of " + t.op.str() +
                           " must be finite and non-negative");
      total += t.p;
      bool merged = false;
      for (auto &existing : terms_) {
        if (existing.op.same_support(t.op)) {
          existing.p += t.p;
          merged = true;
          break;
        }
      }
      if (!merged) terms_.push_back(t);
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw InvalidInput("PauliChannel: probabilities sum to " + std::to_string(total) +
                         ", expected 1");
    std::erase_if(terms_, [](const PauliTerm &t) { return t.p <= kNegligibleProbability; });
  }

  static PauliChannel identity(int n) { return PauliChannel(n, {{1.0, PauliString(n)}}); }

  int num_qubits() const { return n_; }
  const std::vector<PauliTerm> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  int n_;
  std::vector<PauliTerm> terms_;
};

/// Kraus representation of a channel from input_dim to output_dim.
class KrausSet {
 public:
  explicit KrausSet(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw InvalidInput("KrausSet: no Kraus operators");
    const auto rows = kraus_.front().rows(), cols = kraus_.front().cols();
    Matrix sum = Matrix::Zero(cols, cols);
    for (const auto &k : kraus_) {
      if (k.rows() != rows || k.cols() != cols)
        throw DimensionMismatch("KrausSet: Kraus operators differ in shape");
      if (!all_finite(k)) throw NumericalError("KrausSet: non-finite entry");
      if ((k.array() != cplx(0)).count() * 8 <= k.size()) {
        Eigen::SparseMatrix<cplx> sk = k.sparseView();
        sum += Matrix(sk.adjoint() * sk);
      } else {
        sum += k.adjoint() * k;
      }
    }
    double defect = (sum - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
      throw NumericalError("KrausSet: not trace preserving (defect " +
                           std::to_string(defect) + ")");
  }

  Eigen::Index input_dim() const { return kraus_.front().cols(); }
  Eigen::Index output_dim() const { return kraus_.front().rows(); }
  const std::vector<Matrix> &operators() const { return kraus_; }
  std::size_t size() const { return kraus_.size(); }
  const Matrix &operator[](std::size_t i) const { return kraus_[i]; }

 private:
  std::vector<Matrix> kraus_;
};

// ---------------------------------------------------------------------------
// Probability assignment for the correlated families

/// Identity keeps `identity`; the rest is split evenly over the error terms.
struct UniformNoise {
  double identity = 0.5;
};

/// Probability of each error term; the identity takes the remaining mass.
using ErrorWeight = std::function<double(const PauliString &)>;

using NoiseWeights = std::variant<UniformNoise, ErrorWeight>;

/// Calls f(subset) for every size-w subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int w, F &&f) {
  if (w < 0 || w > n) return;
  std::vector<int> idx(w);
  for (int i = 0; i < w; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const std::vector<int> &>(idx));
    int i = w - 1;
    while (i >= 0 && idx[i] == n - w + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Identity plus the listed error operators, weighted by `weights`.
inline PauliChannel pauli_mixture(int n, const std::vector<PauliString> &errors,
                                  const NoiseWeights &weights) {
  std::vector<PauliTerm> terms;
  terms.reserve(errors.size() + 1);
  if (const auto *uniform = std::get_if<UniformNoise>(&weights)) {
    if (uniform->identity < 0 || uniform->identity > 1)
      throw InvalidInput("identity probability must lie in [0, 1]");
    if (errors.empty()) return PauliChannel::identity(n);
    double each = (1.0 - uniform->identity) / static_cast<double>(errors.size());
    terms.push_back({uniform->identity, PauliString(n)});
    for (const auto &e : errors) terms.push_back({each, e});
  } else {
    const auto &fn = std::get<ErrorWeight>(weights);
    double total = 0;
    for (const auto &e : errors) {
      double p = fn(e);
      if (!std::isfinite(p) || p < 0)
        throw InvalidInput("probability of " + e.str() + " must be finite and non-negative");
      total += p;
      terms.push_back({p, e});
    }
    if (total > 1.0 + 1e-12)
      throw InvalidInput("error probabilities sum to " + std::to_string(total) +
                         " > 1");
    terms.insert(terms.begin(), PauliTerm{std::max(0.0, 1.0 - total), PauliString(n)});
  }
  return PauliChannel(n, terms);
}

/// W^{(x)w} on every w-subset, for W in {X, Y, Z} and each w in `weights`.
/// Ordered by weight, then subset, then letter.
inline std::vector<PauliString> correlated_errors(int n, const std::vector<int> &weights) {
  std::vector<PauliString> out;
  for (int w : weights) {
    if (w < 1 || w > n)
      throw InvalidInput("correlated weight " + std::to_string(w) + " invalid for " +
                         std::to_string(n) + " qubits");
    for_each_subset(n, w, [&](const std::vector<int> &subset) {
      for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z})
        out.push_back(PauliString::uniform(letter, subset, n));
    });
  }
  return out;
}

inline PauliChannel correlated_channel(int n, const std::vector<int> &weights,
                                       const NoiseWeights &noise = UniformNoise{}) {
  return pauli_mixture(n, correlated_errors(n, weights), noise);
}

/// p rho + sum_{i<j} p_{W,ij} W_i W_j rho W_i W_j.
inline PauliChannel pairwise_correlated(int n, const NoiseWeights &noise = UniformNoise{}) {
  if (n < 2) throw InvalidInput("pairwise_correlated: need at least 2 qubits");
  return correlated_channel(n, {2}, noise);
}

/// Even-weight correlated noise W^{(x)w}, w in {2, 4, ..., 2m}, on n = 2m+1
/// qubits. `weights` restricts the even weights present.
inline PauliChannel even_weight_correlated(int m, const NoiseWeights &noise = UniformNoise{},
                                           std::vector<int> weights = {}) {
  if (m < 1) throw InvalidInput("even_weight_correlated: m must be >= 1");
  if (weights.empty())
    for (int w = 2; w <= 2 * m; w += 2) weights.push_back(w);
  for (int w : weights)
    if (w % 2 != 0 || w < 2 || w > 2 * m)
      throw InvalidInput("even_weight_correlated: weight " + std::to_string(w) +
                         " is not an even number in [2, 2m]");
  return correlated_channel(2 * m + 1, weights, noise);
}

/// W_i W_j W_k on every triple.
inline PauliChannel triple_correlated(int n, const NoiseWeights &noise = UniformNoise{}) {
  if (n < 3) throw InvalidInput("triple_correlated: need at least 3 qubits");
  return correlated_channel(n, {3}, noise);
}

/// {I, X^{(x)n}, Y^{(x)n}, Z^{(x)n}}.
inline PauliChannel fully_correlated(int n, const NoiseWeights &noise = UniformNoise{}) {
  if (n < 1) throw InvalidInput("fully_correlated: need at least 1 qubit");
  return correlated_channel(n, {n}, noise);
}

/// All Pauli strings of weight <= t.
inline PauliChannel weight_bounded(int n, int t, const NoiseWeights &noise = UniformNoise{}) {
  if (n < 1) throw InvalidInput("weight_bounded: need at least 1 qubit");
  if (t < 0 || t > n)
    throw InvalidInput("weight_bounded: t = " + std::to_string(t) + " outside [0, n]");
  std::vector<PauliString> errors;
  for (int w = 1; w <= t; ++w) {
    for_each_subset(n, w, [&](const std::vector<int> &subset) {
      std::vector<int> digits(w, 0);
      while (true) {
        PauliString p(n);
        for (int i = 0; i < w; ++i)
          p = p * PauliString::single(static_cast<Pauli>(digits[i] + 1), subset[i], n);
        errors.push_back(p.hermitian());
        int i = w - 1;
        while (i >= 0 && digits[i] == 2) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
      }
    });
  }
  return pauli_mixture(n, errors, noise);
}

// ---------------------------------------------------------------------------
// Representations and rank

inline KrausSet to_kraus(const PauliChannel &c) {
  require_dense(c.num_qubits(), "to_kraus");
  std::vector<Matrix> ops;
  ops.reserve(c.size());
  for (const auto &t : c.terms()) ops.push_back(std::sqrt(t.p) * t.op.to_dense());
  return KrausSet(std::move(ops));
}

/// Gram matrix G_ij = Tr[K_i^dagger K_j].
inline Matrix kraus_gram(const KrausSet &k) {
  Matrix vecs(k.output_dim() * k.input_dim(), static_cast<Eigen::Index>(k.size()));
  for (std::size_t i = 0; i < k.size(); ++i)
    vecs.col(i) = Eigen::Map<const Vector>(k[i].data(), k[i].size());
  return vecs.adjoint() * vecs;
}

/// Gram matrix of {sqrt(p_i) P_i} normalized by 2^n, computed symbolically.
inline Matrix kraus_gram(const PauliChannel &c) {
  const auto &terms = c.terms();
  const auto size = static_cast<Eigen::Index>(terms.size());
  Matrix g = Matrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) {
      const auto &a = terms[i], &b = terms[j];
      if (!a.op.same_support(b.op)) continue;
      g(i, j) = std::sqrt(a.p * b.p) *
                PauliString::phase_value(b.op.phase_exp() - a.op.phase_exp());
    }
  return g;
}

inline int choi_rank(const PauliChannel &c) { return numerical_rank(kraus_gram(c)); }
inline int choi_rank(const KrausSet &k) { return numerical_rank(kraus_gram(k)); }

/// (E (x) I)(|I>><<I|), indexed (output, input) with the input as the
/// less significant factor.
inline Matrix choi_matrix(const KrausSet &k) {
  if (k.input_dim() > (Eigen::Index{1} << choi_qubit_limit()))
    throw GuardExceeded("choi_matrix: input dimension " + std::to_string(k.input_dim()) +
                        " exceeds explicit Choi limit of 2^" +
                        std::to_string(choi_qubit_limit()));
  const Eigen::Index din = k.input_dim(), dout = k.output_dim();
  Matrix vecs(dout * din, static_cast<Eigen::Index>(k.size()));
  for (std::size_t i = 0; i < k.size(); ++i)
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index n = 0; n < din; ++n) vecs(a * din + n, i) = k[i](a, n);
  return vecs * vecs.adjoint();
}

inline Matrix choi_matrix(const PauliChannel &c) {
  if (c.num_qubits() > choi_qubit_limit())
    throw GuardExceeded("choi_matrix: " + std::to_string(c.num_qubits()) +
                        " qubits exceeds explicit Choi limit");
  return choi_matrix(to_kraus(c));
}

/// Kraus set of cardinality choi_rank(k) implementing the same channel,
/// obtained by diagonalizing the Gram matrix.
inline KrausSet minimal_kraus(const KrausSet &k) {
  Matrix gram = kraus_gram(k);
  auto [values, vectors] = eigh(gram);
  double cut = rank_threshold(std::max(values(0), 0.0), gram.rows(), gram.cols());
  std::vector<Matrix> out;
  for (Eigen::Index a = 0; a < values.size(); ++a) {
    if (values(a) <= cut) continue;
    Matrix op = Matrix::Zero(k.output_dim(), k.input_dim());
    for (std::size_t j = 0; j < k.size(); ++j) op += vectors(j, a) * k[j];
    out.push_back(std::move(op));
  }
  return KrausSet(std::move(out));
}

/// Distinct Pauli terms with positive weight are already orthogonal.
inline KrausSet minimal_kraus(const PauliChannel &c) { return to_kraus(c); }

inline Matrix apply_channel(const Matrix &rho, const PauliChannel &c) {
  if (rho.rows() != rho.cols() || rho.rows() != (Eigen::Index{1} << c.num_qubits()))
    throw DimensionMismatch("apply_channel: state dimension does not match channel");
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto &t : c.terms()) out += t.p * t.op.conjugate(rho);
  return out;
}

/// A Kraus set prepared for repeated application; operators with few
/// nonzeros (syndrome projections, low-rank recoveries) are kept sparse.
class KrausApplier {
 public:
  explicit KrausApplier(const KrausSet &k) : input_dim_(k.input_dim()), output_dim_(k.output_dim()) {
    for (const auto &op : k.operators()) {
      const auto nnz = (op.array() != cplx(0)).count();
      if (nnz * 8 <= op.size())
        sparse_.push_back(op.sparseView());
      else
        dense_.push_back(op);
    }
  }

  Matrix operator()(const Matrix &rho) const {
    if (rho.rows() != rho.cols() || rho.rows() != input_dim_)
      throw DimensionMismatch("apply_channel: state dimension does not match channel");
    Matrix out = Matrix::Zero(output_dim_, output_dim_);
    for (const auto &op : sparse_) {
      Matrix left = op * rho;
      out += (op * left.adjoint()).adjoint();
    }
    for (const auto &op : dense_) out += op * rho * op.adjoint();
    return out;
  }

 private:
  Eigen::Index input_dim_, output_dim_;
  std::vector<Eigen::SparseMatrix<cplx>> sparse_;
  std::vector<Matrix> dense_;
};

inline Matrix apply_channel(const Matrix &rho, const KrausSet &k) { return KrausApplier(k)(rho); }

inline Matrix apply_channel(const Matrix &rho, const KrausApplier &k) { return k(rho); }

}  // namespace qecv

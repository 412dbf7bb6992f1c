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

// Recovery channels: explicit syndrome tables for the repetition and ancilla
// codes, the generic recovery obtained by diagonalizing the Knill-Laflamme
// matrix, and dense/trajectory simulation of encode -> noise -> recover.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "qecv/channels.hpp"
#include "qecv/codes.hpp"
#include "qecv/errors.hpp"
#include "qecv/kl.hpp"
#include "qecv/linalg.hpp"
#include "qecv/pauli.hpp"

namespace qecv {

struct SyndromeOutcome {
  std::string label;
  std::vector<int> qubits;  // support of the error class this outcome flags
  Matrix projector;
  PauliString correction;
};

struct SyndromeTable {
  int n = 0;
  std::vector<SyndromeOutcome> outcomes;
};

struct RecoveryChannel {
  KrausSet kraus;
  std::size_t reachable = 0;   // Kraus operators acting on reachable subspaces
  std::size_t completion = 0;  // operators added for trace preservation
};

namespace detail {

inline Matrix basis_projector(Eigen::Index dim, std::initializer_list<Eigen::Index> states) {
  Matrix p = Matrix::Zero(dim, dim);
  for (auto s : states) p(s, s) = 1;
  return p;
}

// Parity-check syndrome of an X-flip pattern: bit j (j = 1..n-1) is
// flip[n-1-j] xor flip[n-1], so that for three qubits a flip on qubits
// {1, 2} (0-based) reads "01".
inline std::string repetition_label(const std::vector<bool> &flip) {
  const int n = static_cast<int>(flip.size());
  std::string label;
  for (int j = 1; j < n; ++j) label += (flip[n - 1 - j] != flip[n - 1]) ? '1' : '0';
  return label;
}

}  // namespace detail

/**
 * Syndrome table for repetition_code(m) under even-weight correlated noise.
 *
 * One outcome per bit-flip class: the projector spans
 * {X_S|0...0>, X_S|1...1>} and the correction is X_S. Z-type errors of even
 * weight act trivially on the code and Y_S acts as X_S there, so X-type
 * corrections cover every term of the channel. An empty `weights` means all
 * even weights up to 2m, which makes the projectors complete.
 */
inline SyndromeTable repetition_syndrome_table(int m, std::vector<int> weights = {}) {
  if (m < 1) throw InvalidInput("repetition_syndrome_table: m must be >= 1");
  const int n = 2 * m + 1;
  require_dense(n, "repetition_syndrome_table");
  if (weights.empty())
    for (int w = 2; w <= 2 * m; w += 2) weights.push_back(w);
  std::sort(weights.begin(), weights.end());
  if (std::adjacent_find(weights.begin(), weights.end()) != weights.end())
    throw InvalidInput("repetition_syndrome_table: repeated weight");
  for (int w : weights)
    if (w < 2 || w > 2 * m || w % 2 != 0)
      throw InvalidInput("repetition_syndrome_table: weight " + std::to_string(w) +
                         " is not an even number in [2, 2m]");
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index all_ones = dim - 1;
  SyndromeTable table;
  table.n = n;
  auto add = [&](const std::vector<int> &subset) {
    std::vector<bool> flip(n, false);
    Eigen::Index pattern = 0;
    for (int q : subset) {
      flip[q] = true;
      pattern |= Eigen::Index{1} << (n - 1 - q);
    }
    table.outcomes.push_back({detail::repetition_label(flip), subset,
                              detail::basis_projector(dim, {pattern, pattern ^ all_ones}),
                              PauliString::uniform(Pauli::X, subset, n)});
  };
  add({});
  for (int w : weights) for_each_subset(n, w, add);
  std::stable_sort(table.outcomes.begin(), table.outcomes.end(),
                   [](const SyndromeOutcome &a, const SyndromeOutcome &b) {
                     if (a.qubits.size() != b.qubits.size()) return a.qubits.size() < b.qubits.size();
                     return a.label < b.label;
                   });
  return table;
}

/**
 * Syndrome table for ancilla_code(n) under fully correlated noise. The two
 * ancillas are measured in the Z and X bases; outcome |a> selects the
 * correction W^{(x)n}, which undoes the error on the data qubits and resets
 * the ancillas to |0>|+>.
 */
inline SyndromeTable ancilla_recovery(int n) {
  if (n < 3) throw InvalidInput("ancilla_recovery: need at least 3 qubits");
  require_dense(n, "ancilla_recovery");
  const double amp = 1.0 / std::sqrt(2.0);
  auto ancilla_state = [&](int z_bit, int x_sign) {
    Vector v = Vector::Zero(4);
    v(2 * z_bit + 0) = amp;
    v(2 * z_bit + 1) = x_sign * amp;
    return v;
  };
  const Matrix data_identity = Matrix::Identity(Eigen::Index{1} << (n - 2), Eigen::Index{1} << (n - 2));
  std::vector<int> all(n);
  for (int q = 0; q < n; ++q) all[q] = q;
  struct Row { const char *label; int z_bit; int x_sign; Pauli letter; };
  const Row rows[] = {{"0+", 0, +1, Pauli::I}, {"1+", 1, +1, Pauli::X},
                      {"1-", 1, -1, Pauli::Y}, {"0-", 0, -1, Pauli::Z}};
  SyndromeTable table;
  table.n = n;
  for (const auto &row : rows) {
    Vector a = ancilla_state(row.z_bit, row.x_sign);
    table.outcomes.push_back(
        {row.label, row.letter == Pauli::I ? std::vector<int>{} : all,
         kron(data_identity, Matrix(a * a.adjoint())),
         row.letter == Pauli::I ? PauliString(n) : PauliString::uniform(row.letter, all, n)});
  }
  return table;
}

/// Kraus form of a syndrome table: measure, correct, and send anything
/// outside the listed projectors through unchanged.
inline RecoveryChannel to_recovery_channel(const SyndromeTable &table) {
  require_dense(table.n, "to_recovery_channel");
  const Eigen::Index dim = Eigen::Index{1} << table.n;
  std::vector<Matrix> ops;
  Matrix rest = Matrix::Identity(dim, dim);
  for (const auto &o : table.outcomes) {
    ops.push_back(o.correction.apply(o.projector));
    rest -= o.projector;
  }
  const std::size_t reachable = ops.size();
  if (rest.norm() > 1e-10) ops.push_back(rest);
  const std::size_t completion = ops.size() - reachable;
  return RecoveryChannel{KrausSet(std::move(ops)), reachable, completion};
}

/// Largest deviation from pairwise orthogonal Hermitian idempotents.
inline double projector_defect(const SyndromeTable &table) {
  double worst = 0;
  for (std::size_t a = 0; a < table.outcomes.size(); ++a) {
    const Matrix &p = table.outcomes[a].projector;
    worst = std::max({worst, hermitian_defect(p), (p * p - p).norm()});
    for (std::size_t b = a + 1; b < table.outcomes.size(); ++b)
      worst = std::max(worst, (p * table.outcomes[b].projector).norm());
  }
  return worst;
}

/**
 * Recovery from the diagonalized Knill-Laflamme matrix M = U D U^dagger.
 *
 * The rotated errors J_a = sum_j U_ja L_j satisfy V^dag J_a^dag J_b V =
 * D_ab I, so J_a maps the code onto mutually orthogonal subspaces and
 * R_a = P_Q J_a^dagger / sqrt(D_a) brings each one back. The complement of
 * those subspaces is mapped onto the code by fixed isometries.
 */
namespace detail {
inline RecoveryChannel canonical_from_encoded(const CodeSpace &code,
                                              const std::vector<Matrix> &encoded,
                                              const Matrix &M) {
  auto [D, U] = eigh(M);
  const double cut = rank_threshold(std::max(D(0), 0.0), M.rows(), M.cols());
  const Matrix &V = code.isometry();
  const Eigen::Index dim = code.physical_dim();
  std::vector<Matrix> ops;
  Matrix reached = Matrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < D.size(); ++a) {
    if (D(a) > cut / 1e3 && D(a) <= cut * 1e3)
      throw NumericalError("canonical_recovery: eigenvalue " + std::to_string(D(a)) +
                           " of M is too close to the rank threshold " + std::to_string(cut));
    if (D(a) < -cut) throw NumericalError("canonical_recovery: M is not positive semidefinite");
    if (D(a) <= cut) continue;
    Matrix JV = Matrix::Zero(dim, code.logical_dim());
    for (std::size_t j = 0; j < encoded.size(); ++j) JV += U(j, a) * encoded[j];
    Matrix R = V * JV.adjoint() / std::sqrt(D(a));
    reached += R.adjoint() * R;
    ops.push_back(std::move(R));
  }
  const std::size_t reachable = ops.size();
  auto [values, vectors] = eigh(Matrix::Identity(dim, dim) - reached);
  std::vector<Eigen::Index> complement;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values(i) > 0.5) complement.push_back(i);
  const auto block = code.logical_dim();
  for (std::size_t start = 0; start < complement.size(); start += block) {
    Matrix F = Matrix::Zero(dim, block);
    for (Eigen::Index c = 0; c < block && start + c < complement.size(); ++c)
      F.col(c) = vectors.col(complement[start + c]);
    ops.push_back(V * F.adjoint());
  }
  const std::size_t completion = ops.size() - reachable;
  return RecoveryChannel{KrausSet(std::move(ops)), reachable, completion};
}

}  // namespace detail

inline RecoveryChannel canonical_recovery(const CodeSpace &code, const KrausSet &kraus,
                                          double tol = kDefaultKLTolerance) {
  KLReport report = is_correctable(code, kraus, tol);
  if (!report.correctable)
    throw NotCorrectable("canonical_recovery: KL residual " + std::to_string(report.residual) +
                         " exceeds tolerance " + std::to_string(tol));
  return detail::canonical_from_encoded(code, detail::encoded_errors(code, kraus),
                                        kl_matrix(code, kraus).M);
}

inline RecoveryChannel canonical_recovery(const CodeSpace &code, const PauliChannel &channel,
                                          double tol = kDefaultKLTolerance) {
  detail::check_code_channel(code, channel);
  const auto encoded = detail::encoded_errors(code, channel);
  auto [M, residual] = detail::kl_from_encoded(encoded, code.logical_dim());
  if (residual > tol)
    throw NotCorrectable("canonical_recovery: KL residual " + std::to_string(residual) +
                         " exceeds tolerance " + std::to_string(tol));
  return detail::canonical_from_encoded(code, encoded, M);
}

namespace detail {
// Choi matrix from the Kraus operators R_a (L_j V), given the encoded errors.
inline Matrix composite_choi(const CodeSpace &code, const std::vector<Matrix> &encoded,
                             const RecoveryChannel &recovery) {
  const Eigen::Index din = code.logical_dim(), dout = code.physical_dim();
  std::vector<Eigen::SparseMatrix<cplx>> ops;
  for (const auto &R : recovery.kraus.operators()) ops.push_back(R.sparseView());
  Matrix columns(dout * din, static_cast<Eigen::Index>(encoded.size() * ops.size()));
  Eigen::Index c = 0;
  for (const auto &LV : encoded)
    for (const auto &R : ops) {
      Matrix K = R * LV;
      // Most pairs miss each other's syndrome subspace entirely.
      if (K.squaredNorm() < 1e-30) continue;
      for (Eigen::Index a = 0; a < dout; ++a)
        for (Eigen::Index n = 0; n < din; ++n) columns(a * din + n, c) = K(a, n);
      ++c;
    }
  const auto used = columns.leftCols(c);
  return used * used.adjoint();
}
}  // namespace detail

/// Choi matrix of sigma -> R(E(V sigma V^dagger)), a map from the logical
/// space to the physical space.
inline Matrix corrected_choi(const CodeSpace &code, const KrausSet &channel,
                             const RecoveryChannel &recovery) {
  detail::check_code_channel(code, channel);
  detail::check_code_channel(code, recovery.kraus);
  return detail::composite_choi(code, detail::encoded_errors(code, channel), recovery);
}

inline Matrix corrected_choi(const CodeSpace &code, const PauliChannel &channel,
                             const RecoveryChannel &recovery) {
  detail::check_code_channel(code, channel);
  detail::check_code_channel(code, recovery.kraus);
  return detail::composite_choi(code, detail::encoded_errors(code, channel), recovery);
}

/// Choi matrix of the encoding itself; R o E is perfect on the code exactly
/// when corrected_choi equals this.
inline Matrix encoding_choi(const CodeSpace &code) {
  const Eigen::Index din = code.logical_dim(), dout = code.physical_dim();
  Vector vec(dout * din);
  for (Eigen::Index a = 0; a < dout; ++a)
    for (Eigen::Index n = 0; n < din; ++n) vec(a * din + n) = code.isometry()(a, n);
  return vec * vec.adjoint();
}

struct RoundtripResult {
  double worst_infidelity = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

template <typename Channel>
RoundtripResult roundtrip_check(const CodeSpace &code, const Channel &channel,
                                const RecoveryChannel &recovery, int trials,
                                std::uint64_t seed = 0) {
  detail::check_code_channel(code, channel);
  detail::check_code_channel(code, recovery.kraus);
  if (trials < 0) throw InvalidInput("roundtrip_check: negative trial count");
  std::mt19937_64 rng(seed);
  const KrausApplier recover(recovery.kraus);
  RoundtripResult out{0.0, trials, seed};
  for (int t = 0; t < trials; ++t) {
    Vector psi = code.encode(haar_random_state(code.logical_dim(), rng));
    Matrix rho = recover(apply_channel(psi * psi.adjoint(), channel));
    out.worst_infidelity = std::max(out.worst_infidelity, 1.0 - fidelity(psi, rho));
  }
  return out;
}

template <typename Channel>
RoundtripResult roundtrip_check(const CodeSpace &code, const Channel &channel,
                                const SyndromeTable &table, int trials,
                                std::uint64_t seed = 0) {
  return roundtrip_check(code, channel, to_recovery_channel(table), trials, seed);
}

// ---------------------------------------------------------------------------
// Trajectory simulation

struct MonteCarloResult {
  std::uint64_t shots = 0;
  std::uint64_t successes = 0;
  double success_fraction = 1.0;
  std::string warning;
  std::vector<std::pair<std::string, std::uint64_t>> outcome_counts;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) determined by (seed, shot, stream) alone.
inline double counter_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t stream) {
  std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(shot * 2 + stream));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct Branch {
  std::size_t outcome;  // table.outcomes.size() means "outside every projector"
  double weight;
  bool recovered;
};

}  // namespace detail

/**
 * Samples one channel term per shot, measures the syndrome, applies the
 * tabled correction and counts shots that return the code to itself up to a
 * global phase. Each shot draws its randomness from (seed, shot index), so the
 * result does not depend on `threads`.
 */
inline MonteCarloResult monte_carlo_run(const CodeSpace &code, const PauliChannel &channel,
                                        const SyndromeTable &table, std::uint64_t shots,
                                        std::uint64_t seed = 0, unsigned threads = 0) {
  detail::check_code_channel(code, channel);
  if (table.n != code.n()) throw DimensionMismatch("monte_carlo_run: table size differs from code");
  const Matrix &V = code.isometry();
  const double logical = static_cast<double>(code.logical_dim());
  const std::size_t none = table.outcomes.size();

  // Outcome distribution and exactness of every (term, outcome) branch.
  std::vector<std::vector<detail::Branch>> branches(channel.size());
  Matrix covered = Matrix::Zero(code.physical_dim(), code.physical_dim());
  std::vector<Eigen::SparseMatrix<cplx>> projectors;
  for (const auto &o : table.outcomes) {
    covered += o.projector;
    projectors.push_back(o.projector.sparseView());
  }
  const Eigen::SparseMatrix<cplx> covered_sparse = covered.sparseView();
  for (std::size_t t = 0; t < channel.size(); ++t) {
    Matrix EV = channel.terms()[t].op.apply(V);
    for (std::size_t o = 0; o <= none; ++o) {
      Matrix branch = o < none ? Matrix(projectors[o] * EV) : Matrix(EV - covered_sparse * EV);
      double weight = branch.squaredNorm() / logical;
      if (weight <= 1e-12) continue;
      bool recovered = false;
      if (o < none) {
        Matrix corrected = table.outcomes[o].correction.apply(branch);
        cplx c = (V.adjoint() * corrected).trace() / logical;
        recovered = (corrected - c * V).norm() <= 1e-9 && std::abs(std::norm(c) - weight) <= 1e-9;
      }
      branches[t].push_back({o, weight, recovered});
    }
  }

  MonteCarloResult out;
  out.shots = shots;
  for (const auto &o : table.outcomes) out.outcome_counts.emplace_back(o.label, 0);
  out.outcome_counts.emplace_back("unreachable", 0);
  if (shots == 0) {
    out.warning = "no shots requested; success fraction defined as 1";
    return out;
  }

  std::vector<double> cumulative;
  double acc = 0;
  for (const auto &term : channel.terms()) cumulative.push_back(acc += term.p);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::uint64_t &successes,
                       std::vector<std::uint64_t> &counts) {
    for (std::uint64_t s = begin; s < end; ++s) {
      double u = detail::counter_uniform(seed, s, 0) * acc;
      auto t = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      t = std::min(t, cumulative.size() - 1);
      const auto &options = branches[t];
      double total = 0;
      for (const auto &b : options) total += b.weight;
      double v = detail::counter_uniform(seed, s, 1) * total;
      const detail::Branch *pick = &options.back();
      for (const auto &b : options) {
        if (v < b.weight) { pick = &b; break; }
        v -= b.weight;
      }
      ++counts[pick->outcome];
      if (pick->recovered) ++successes;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, shots));
  std::vector<std::uint64_t> successes(threads, 0);
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(none + 1, 0));
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      std::uint64_t begin = shots * w / threads, end = shots * (w + 1) / threads;
      workers.emplace_back([&, w, begin, end] { run_range(begin, end, successes[w], counts[w]); });
    }
  }
  for (unsigned w = 0; w < threads; ++w) {
    out.successes += successes[w];
    for (std::size_t o = 0; o <= none; ++o) out.outcome_counts[o].second += counts[w][o];
  }
  out.success_fraction = static_cast<double>(out.successes) / static_cast<double>(shots);
  return out;
}

}  // namespace qecv

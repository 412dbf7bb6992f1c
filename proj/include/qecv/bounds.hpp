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

// Packing and Hamming bounds in exact integer arithmetic.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "qecv/channels.hpp"
#include "qecv/codes.hpp"
#include "qecv/errors.hpp"
#include "qecv/kl.hpp"

namespace qecv {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow_int(BigInt base, unsigned exp) {
  BigInt out = 1;
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

inline BigInt binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

enum class BoundKind { packing, hamming };

inline const char *to_string(BoundKind k) {
  return k == BoundKind::packing ? "packing" : "hamming";
}

/// dim_S >= dim_Q * rank, with dim_S = q^n and dim_Q = q^k.
struct BoundReport {
  BoundKind kind = BoundKind::packing;
  int n = 0;
  int k = 0;
  int q = 2;
  BigInt rank;
  BigInt dim_S;
  BigInt dim_Q;
  BigInt rhs;
  bool satisfied = false;
  bool saturated() const { return dim_S == rhs; }
};

inline BoundReport make_bound(BoundKind kind, int n, int k, int q, BigInt rank) {
  if (n < 0 || k < 0) throw InvalidInput("bound: n and k must be non-negative");
  if (q < 2) throw InvalidInput("bound: local dimension q must be >= 2");
  BoundReport r;
  r.kind = kind;
  r.n = n;
  r.k = k;
  r.q = q;
  r.rank = std::move(rank);
  r.dim_S = pow_int(q, n);
  r.dim_Q = pow_int(q, k);
  r.rhs = r.dim_Q * r.rank;
  r.satisfied = r.dim_S >= r.rhs;
  return r;
}

/// Channel families whose Choi rank is a closed-form function of n.
struct ChannelFamily {
  enum class Kind { pairwise, pairwise_quadruple, even_weight, triple, fully_correlated,
                    weight_bounded };
  Kind kind;
  int param = 0;  // m for even_weight, t for weight_bounded

  static ChannelFamily pairwise() { return {Kind::pairwise}; }
  static ChannelFamily pairwise_quadruple() { return {Kind::pairwise_quadruple}; }
  static ChannelFamily even_weight(int m) { return {Kind::even_weight, m}; }
  static ChannelFamily triple() { return {Kind::triple}; }
  static ChannelFamily fully_correlated() { return {Kind::fully_correlated}; }
  static ChannelFamily weight_bounded(int t) { return {Kind::weight_bounded, t}; }

  std::string name() const {
    switch (kind) {
      case Kind::pairwise: return "pairwise";
      case Kind::pairwise_quadruple: return "pairwise+quadruple";
      case Kind::even_weight: return "even_weight";
      case Kind::triple: return "triple";
      case Kind::fully_correlated: return "fully_correlated";
      case Kind::weight_bounded: return "weight_bounded";
    }
    return "?";
  }

  /// Smallest n on which every term of the family fits.
  int min_qubits() const {
    switch (kind) {
      case Kind::pairwise: return 2;
      case Kind::pairwise_quadruple: return 4;
      case Kind::even_weight: return 2 * param;
      case Kind::triple: return 3;
      case Kind::fully_correlated: return 1;
      case Kind::weight_bounded: return std::max(param, 1);
    }
    return 1;
  }

  /// Number of distinct Pauli terms (identity included), i.e. the Choi rank
  /// when every probability is positive.
  BigInt rank(int n) const {
    if (n < min_qubits())
      throw InvalidInput(name() + " family needs at least " + std::to_string(min_qubits()) +
                         " qubits");
    switch (kind) {
      case Kind::pairwise: return 1 + 3 * binomial(n, 2);
      case Kind::pairwise_quadruple: return 1 + 3 * binomial(n, 2) + 3 * binomial(n, 4);
      case Kind::even_weight: {
        BigInt r = 1;
        for (int i = 1; i <= param; ++i) r += 3 * binomial(n, 2 * i);
        return r;
      }
      case Kind::triple: return 1 + 3 * binomial(n, 3);
      case Kind::fully_correlated: return 4;
      case Kind::weight_bounded: {
        BigInt r = 0;
        for (int i = 0; i <= param; ++i) r += pow_int(3, i) * binomial(n, i);
        return r;
      }
    }
    return 0;
  }

  /// The family realized as a channel on n qubits.
  PauliChannel channel(int n, const NoiseWeights &noise = UniformNoise{}) const {
    switch (kind) {
      case Kind::pairwise: return pairwise_correlated(n, noise);
      case Kind::pairwise_quadruple:
        if (n < 4) throw InvalidInput("pairwise+quadruple family needs at least 4 qubits");
        return correlated_channel(n, {2, 4}, noise);
      case Kind::even_weight: {
        if (param < 1 || n < 2 * param)
          throw InvalidInput("even_weight family with m=" + std::to_string(param) +
                             " needs at least " + std::to_string(2 * param) + " qubits");
        std::vector<int> weights;
        for (int w = 2; w <= 2 * param; w += 2) weights.push_back(w);
        return correlated_channel(n, weights, noise);
      }
      case Kind::triple: return triple_correlated(n, noise);
      case Kind::fully_correlated: return qecv::fully_correlated(n, noise);
      case Kind::weight_bounded: return qecv::weight_bounded(n, param, noise);
    }
    throw InvalidInput("unknown family");
  }
};

inline BoundReport packing_check(int n, int k, const PauliChannel &channel) {
  if (channel.num_qubits() != n)
    throw DimensionMismatch("packing_check: channel acts on " +
                            std::to_string(channel.num_qubits()) + " qubits, not " +
                            std::to_string(n));
  return make_bound(BoundKind::packing, n, k, 2, choi_rank(channel));
}

inline BoundReport packing_check(int n, int k, const KrausSet &kraus) {
  if (kraus.input_dim() != (Eigen::Index{1} << n))
    throw DimensionMismatch("packing_check: channel dimension does not match n");
  return make_bound(BoundKind::packing, n, k, 2, choi_rank(kraus));
}

inline BoundReport packing_check(int n, int k, const ChannelFamily &family) {
  return make_bound(BoundKind::packing, n, k, 2, family.rank(n));
}

/// q^k * sum_{i=0}^{t} (q^2 - 1)^i C(n, i).
inline BigInt hamming_rhs(int n, int k, int t, int q = 2) {
  if (t < 0 || t > n)
    throw InvalidInput("hamming_rhs: t = " + std::to_string(t) + " outside [0, n]");
  if (q < 2) throw InvalidInput("hamming_rhs: q must be >= 2");
  if (k < 0) throw InvalidInput("hamming_rhs: k must be non-negative");
  BigInt sum = 0;
  for (int i = 0; i <= t; ++i) sum += pow_int(q * q - 1, i) * binomial(n, i);
  return pow_int(q, k) * sum;
}

inline BoundReport hamming_check(int n, int k, int t, int q = 2) {
  return make_bound(BoundKind::hamming, n, k, q, hamming_rhs(n, k, t, q) / pow_int(q, k));
}

struct MinLength {
  int n = -1;
  std::vector<BoundReport> scan;  // every length tried, ascending
};

inline constexpr int kMaxScanLength = 4096;

/// Smallest n >= k admissible for the family with 2^n >= 2^k rank(n).
inline MinLength min_n_packing(int k, const ChannelFamily &family) {
  if (k < 0) throw InvalidInput("min_n_packing: k must be non-negative");
  MinLength out;
  for (int n = std::max(k, family.min_qubits()); n <= kMaxScanLength; ++n) {
    out.scan.push_back(packing_check(n, k, family));
    if (out.scan.back().satisfied) {
      out.n = n;
      return out;
    }
  }
  throw InvalidInput("min_n_packing: no length found below scan limit");
}

/// Smallest n >= max(k, t) with q^n >= hamming_rhs(n, k, t, q).
inline MinLength min_n_hamming(int k, int t, int q = 2) {
  if (k < 0 || t < 0) throw InvalidInput("min_n_hamming: k and t must be non-negative");
  MinLength out;
  for (int n = std::max({k, t, 1}); n <= kMaxScanLength; ++n) {
    out.scan.push_back(hamming_check(n, k, t, q));
    if (out.scan.back().satisfied) {
      out.n = n;
      return out;
    }
  }
  throw InvalidInput("min_n_hamming: no length found below scan limit");
}

/// Packing bound evaluated on every n in [lo, hi].
inline std::vector<BoundReport> packing_scan(int k, const ChannelFamily &family, int lo,
                                             int hi) {
  std::vector<BoundReport> out;
  for (int n = std::max(lo, family.min_qubits()); n <= hi; ++n)
    out.push_back(packing_check(n, k, family));
  return out;
}

enum class Verdict {
  degenerate_violation,  // correctable, degenerate, packing bound violated
  consistency_error,     // correctable, nondegenerate, bound violated: impossible
  bound_respected,       // correctable and within the bound
  not_correctable,
};

inline const char *to_string(Verdict v) {
  switch (v) {
    case Verdict::degenerate_violation: return "packing-bound violation by degenerate code";
    case Verdict::consistency_error: return "consistency error: nondegenerate code violates packing bound";
    case Verdict::bound_respected: return "correctable within packing bound";
    case Verdict::not_correctable: return "not correctable";
  }
  return "?";
}

struct ViolationReport {
  KLReport kl;
  BoundReport bound;
  Verdict verdict = Verdict::not_correctable;
};

inline Verdict classify(const KLReport &kl, const BoundReport &bound) {
  if (!kl.correctable) return Verdict::not_correctable;
  if (bound.satisfied) return Verdict::bound_respected;
  return kl.degenerate ? Verdict::degenerate_violation : Verdict::consistency_error;
}

inline ViolationReport violation_report(const CodeSpace &code, const PauliChannel &channel,
                                        double tol = kDefaultKLTolerance) {
  ViolationReport r;
  r.kl = is_correctable(code, channel, tol);
  r.bound = packing_check(code.n(), code.k(), channel);
  r.verdict = classify(r.kl, r.bound);
  return r;
}

inline ViolationReport violation_report(const CodeSpace &code, const KrausSet &kraus,
                                        double tol = kDefaultKLTolerance) {
  ViolationReport r;
  r.kl = is_correctable(code, kraus, tol);
  r.bound = packing_check(code.n(), code.k(), kraus);
  r.verdict = classify(r.kl, r.bound);
  return r;
}

}  // namespace qecv

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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "qecv/recovery.hpp"

using namespace qecv;

namespace {

PauliChannel with_extra_terms(const PauliChannel &base,
                              const std::vector<std::pair<double, std::string>> &extra) {
  double mass = 0;
  for (const auto &[p, op] : extra) mass += p;
  std::vector<PauliTerm> terms;
  for (const auto &t : base.terms()) terms.push_back({t.p * (1 - mass), t.op});
  for (const auto &[p, op] : extra) terms.push_back({p, PauliString::parse(op)});
  return PauliChannel(base.num_qubits(), terms);
}

std::vector<std::string> labels(const SyndromeTable &t) {
  std::vector<std::string> out;
  for (const auto &o : t.outcomes) out.push_back(o.label);
  return out;
}

std::uint64_t count_of(const MonteCarloResult &r, const std::string &label) {
  for (const auto &[l, c] : r.outcome_counts)
    if (l == label) return c;
  return 0;
}

struct Case {
  std::string name;
  CodeSpace code;
  PauliChannel channel;
  SyndromeTable table;
};

std::vector<Case> correctable_cases() {
  return {
      {"rep3_pairwise", repetition_code(1), pairwise_correlated(3), repetition_syndrome_table(1)},
      {"rep5_even_weight", repetition_code(2), even_weight_correlated(2),
       repetition_syndrome_table(2)},
      {"ancilla3_triple", ancilla_code(3), triple_correlated(3), ancilla_recovery(3)},
      {"ancilla5_fully", ancilla_code(5), fully_correlated(5), ancilla_recovery(5)},
  };
}

}  // namespace

TEST(recovery, repetition_labels_and_order) {
  auto t = repetition_syndrome_table(1);
  EXPECT_EQ(labels(t), (std::vector<std::string>{"00", "01", "10", "11"}));
  EXPECT_EQ(t.outcomes[1].qubits, (std::vector<int>{1, 2}));
  EXPECT_EQ(t.outcomes[2].qubits, (std::vector<int>{0, 2}));
  EXPECT_EQ(t.outcomes[3].qubits, (std::vector<int>{0, 1}));
  EXPECT_EQ(t.outcomes[3].correction.letters(), "XXI");

  auto five = repetition_syndrome_table(2);
  EXPECT_EQ(five.outcomes.size(), 16u);  // 1 + C(5,2) + C(5,4)
  Matrix sum = Matrix::Zero(32, 32);
  for (const auto &o : five.outcomes) sum += o.projector;
  EXPECT_LT(max_abs_diff(sum, Matrix::Identity(32, 32)), 1e-15);
  EXPECT_LT(projector_defect(five), 1e-15);
  EXPECT_EQ(repetition_syndrome_table(2, {2}).outcomes.size(), 11u);
  EXPECT_THROW(repetition_syndrome_table(2, {3}), InvalidInput);
}

TEST(recovery, corrections_return_branches_to_code) {
  for (const auto &c : correctable_cases()) {
    EXPECT_LT(projector_defect(c.table), 1e-14) << c.name;
    const Matrix &V = c.code.isometry();
    const double k = static_cast<double>(c.code.logical_dim());
    for (const auto &term : c.channel.terms()) {
      Matrix EV = term.op.to_dense() * V;
      int hits = 0;
      for (const auto &o : c.table.outcomes) {
        Matrix branch = o.projector * EV;
        if (branch.norm() < 1e-12) continue;
        ++hits;
        Matrix back = o.correction.to_dense() * branch;
        cplx phase = (V.adjoint() * back).trace() / k;
        EXPECT_NEAR(std::abs(phase), 1.0, 1e-12) << c.name << " " << term.op.str();
        EXPECT_LT((back - phase * V).norm(), 1e-12) << c.name << " " << term.op.str();
      }
      EXPECT_EQ(hits, 1) << c.name << " " << term.op.str();
    }
  }
}

TEST(recovery, ancilla_syndrome_states) {
  Vector zero_plus(4);
  zero_plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0, 0;
  auto t = ancilla_recovery(3);
  EXPECT_EQ(labels(t), (std::vector<std::string>{"0+", "1+", "1-", "0-"}));
  const std::pair<std::string, std::string> expected[] = {{"XX", "1+"}, {"YY", "1-"}, {"ZZ", "0-"}};
  for (const auto &[error, label] : expected) {
    Vector hit = PauliString::parse(error).apply(zero_plus);
    Vector data = Vector::Zero(2);
    data(0) = 1;
    Vector full = kron(data, hit);
    for (const auto &o : t.outcomes) {
      double weight = (o.projector * full).squaredNorm();
      EXPECT_NEAR(weight, o.label == label ? 1.0 : 0.0, 1e-14) << error << " " << o.label;
    }
  }
}

TEST(recovery, roundtrips_and_agreement) {
  for (const auto &c : correctable_cases()) {
    auto canonical = canonical_recovery(c.code, c.channel);
    auto table = to_recovery_channel(c.table);
    EXPECT_EQ(table.completion, 0u) << c.name;
    EXPECT_LT(roundtrip_check(c.code, c.channel, canonical, 100, 0).worst_infidelity, 1e-9)
        << c.name;
    EXPECT_LT(roundtrip_check(c.code, c.channel, c.table, 100, 0).worst_infidelity, 1e-9)
        << c.name;
    Matrix a = corrected_choi(c.code, c.channel, canonical);
    Matrix b = corrected_choi(c.code, c.channel, table);
    EXPECT_LT(max_abs_diff(a, b), 1e-8) << c.name;
    EXPECT_LT(max_abs_diff(a, encoding_choi(c.code)), 1e-8) << c.name;
    // Dense Kraus path agrees with the Pauli path.
    EXPECT_LT(max_abs_diff(a, corrected_choi(c.code, to_kraus(c.channel), canonical)), 1e-10);
  }
}

TEST(recovery, canonical_structure) {
  auto rep = canonical_recovery(repetition_code(1), pairwise_correlated(3));
  EXPECT_EQ(rep.reachable, 4u);
  EXPECT_EQ(rep.completion, 0u);

  // Only Z pairs: one reachable subspace, the rest completed by isometries.
  auto only_z = pairwise_correlated(3, ErrorWeight([](const PauliString &p) {
                                      return p.letters().find('Z') != std::string::npos ? 0.1 : 0.0;
                                    }));
  auto partial = canonical_recovery(repetition_code(1), only_z);
  EXPECT_EQ(partial.reachable, 1u);
  EXPECT_EQ(partial.completion, 3u);
  EXPECT_LT(roundtrip_check(repetition_code(1), only_z, partial, 20).worst_infidelity, 1e-9);

  EXPECT_THROW(canonical_recovery(ancilla_code(5), triple_correlated(5)), NotCorrectable);
}

TEST(recovery, z_even_noise_is_invisible) {
  // Even numbers of Z flips act trivially on both codewords.
  auto code = repetition_code(2);
  auto z_only = even_weight_correlated(2, ErrorWeight([](const PauliString &p) {
                                          return p.letters().find('Z') != std::string::npos ? 0.02 : 0.0;
                                        }));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    Vector psi = code.encode(haar_random_state(2, rng));
    Matrix rho = psi * psi.adjoint();
    EXPECT_LT(max_abs_diff(apply_channel(rho, z_only), rho), 1e-14);
  }
  auto mc = monte_carlo_run(code, z_only, repetition_syndrome_table(2), 2000, 5);
  EXPECT_EQ(mc.success_fraction, 1.0);
  EXPECT_EQ(count_of(mc, "0000"), 2000u);
}

TEST(recovery, monte_carlo_perfect_on_correctable_pairs) {
  for (const auto &c : correctable_cases()) {
    auto mc = monte_carlo_run(c.code, c.channel, c.table, 10000, 7);
    EXPECT_EQ(mc.success_fraction, 1.0) << c.name;
    EXPECT_EQ(mc.successes, 10000u);
    std::uint64_t total = 0;
    for (const auto &[label, count] : mc.outcome_counts) total += count;
    EXPECT_EQ(total, 10000u);
    EXPECT_EQ(count_of(mc, "unreachable"), 0u);
  }
}

TEST(recovery, monte_carlo_thread_independent) {
  auto code = repetition_code(1);
  auto channel = with_extra_terms(pairwise_correlated(3), {{0.1, "IXI"}});
  auto table = repetition_syndrome_table(1);
  auto one = monte_carlo_run(code, channel, table, 5000, 42, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    auto many = monte_carlo_run(code, channel, table, 5000, 42, threads);
    EXPECT_EQ(many.successes, one.successes);
    EXPECT_EQ(many.outcome_counts, one.outcome_counts);
  }
  EXPECT_NE(monte_carlo_run(code, channel, table, 5000, 43, 1).outcome_counts, one.outcome_counts);
}

TEST(recovery, monte_carlo_detects_misidentified_error) {
  // A single X on the middle qubit shares the syndrome of X on the outer pair,
  // so the table applies a logical flip on exactly those shots.
  const double px = 0.1;
  auto code = repetition_code(1);
  auto channel = with_extra_terms(pairwise_correlated(3), {{px, "IXI"}});
  EXPECT_FALSE(is_correctable(code, channel).correctable);
  const std::uint64_t shots = 20000;
  auto mc = monte_carlo_run(code, channel, repetition_syndrome_table(1), shots, 1);
  EXPECT_LT(mc.success_fraction, 1.0);
  const double sigma = std::sqrt(px * (1 - px) / static_cast<double>(shots));
  EXPECT_NEAR(1.0 - mc.success_fraction, px, 5 * sigma);
  EXPECT_GT(roundtrip_check(code, channel, repetition_syndrome_table(1), 20).worst_infidelity, 1e-3);
}

TEST(recovery, monte_carlo_unreachable_outcomes) {
  // A table for weight-2 flips only misses the weight-4 flips of m = 2.
  auto code = repetition_code(2);
  auto channel = even_weight_correlated(2);
  auto mc = monte_carlo_run(code, channel, repetition_syndrome_table(2, {2}), 4000, 2);
  EXPECT_GT(count_of(mc, "unreachable"), 0u);
  EXPECT_LT(mc.success_fraction, 1.0);
  EXPECT_EQ(to_recovery_channel(repetition_syndrome_table(2, {2})).completion, 1u);
}

TEST(recovery, zero_shots) {
  auto mc = monte_carlo_run(repetition_code(1), pairwise_correlated(3),
                            repetition_syndrome_table(1), 0);
  EXPECT_EQ(mc.success_fraction, 1.0);
  EXPECT_FALSE(mc.warning.empty());
}

TEST(recovery, rejects_mismatched_inputs) {
  EXPECT_THROW(monte_carlo_run(repetition_code(1), pairwise_correlated(3),
                               repetition_syndrome_table(2), 10),
               DimensionMismatch);
  EXPECT_THROW(roundtrip_check(repetition_code(1), pairwise_correlated(3),
                               repetition_syndrome_table(1), -1),
               InvalidInput);
}

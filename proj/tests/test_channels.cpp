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

#include <functional>
#include <random>
#include <set>
#include <string>

#include "qecv/channels.hpp"

using namespace qecv;

namespace {

// Brute force over all 4^n letter strings: count those accepted by `keep`.
int enumerate(int n, const std::function<bool(const std::string &)> &keep) {
  int count = 0;
  for (int code = 0; code < (1 << (2 * n)); ++code) {
    std::string s;
    for (int q = 0; q < n; ++q) s += "IXYZ"[(code >> (2 * q)) & 3];
    count += keep(s);
  }
  return count;
}

int letter_weight(const std::string &s) {
  int w = 0;
  for (char c : s) w += c != 'I';
  return w;
}

// Non-identity letters all equal, with weight in `weights`.
std::function<bool(const std::string &)> uniform_letter(std::set<int> weights) {
  return [weights](const std::string &s) {
    char seen = 0;
    for (char c : s) {
      if (c == 'I') continue;
      if (seen && c != seen) return false;
      seen = c;
    }
    return letter_weight(s) == 0 || weights.count(letter_weight(s)) > 0;
  };
}

std::set<std::string> letter_set(const PauliChannel &c) {
  std::set<std::string> out;
  for (const auto &t : c.terms()) out.insert(t.op.letters());
  return out;
}

Matrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_random_unitary(dim, rng);
}

// sum_j U_ij K_j
KrausSet remix(const KrausSet &k, const Matrix &u) {
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Matrix m = Matrix::Zero(k.output_dim(), k.input_dim());
    for (Eigen::Index j = 0; j < u.cols(); ++j) m += u(i, j) * k[j];
    out.push_back(m);
  }
  return KrausSet(out);
}

}  // namespace

TEST(channels, term_counts_match_enumeration) {
  EXPECT_EQ(pairwise_correlated(3).size(), 10u);
  EXPECT_EQ(enumerate(3, uniform_letter({2})), 10);

  auto even = even_weight_correlated(2);
  EXPECT_EQ(even.size(), 46u);
  EXPECT_EQ(static_cast<int>(even.size()), enumerate(5, uniform_letter({2, 4})));
  auto quad = even_weight_correlated(2, UniformNoise{}, {4});
  EXPECT_EQ(quad.size(), 16u);
  EXPECT_EQ(static_cast<int>(quad.size()), enumerate(5, uniform_letter({4})));

  EXPECT_EQ(triple_correlated(3).size(), 4u);
  EXPECT_EQ(triple_correlated(4).size(), 13u);
  EXPECT_EQ(13, enumerate(4, uniform_letter({3})));

  EXPECT_EQ(weight_bounded(5, 1).size(), 16u);
  EXPECT_EQ(16, enumerate(5, [](const std::string &s) { return letter_weight(s) <= 1; }));
  EXPECT_EQ(weight_bounded(3, 3).size(), 64u);
  EXPECT_EQ(weight_bounded(3, 0).size(), 1u);
  EXPECT_EQ(fully_correlated(5).size(), 4u);
}

TEST(channels, families_reduce_to_each_other) {
  EXPECT_EQ(letter_set(even_weight_correlated(1)), letter_set(pairwise_correlated(3)));
  EXPECT_EQ(letter_set(fully_correlated(3)), letter_set(triple_correlated(3)));
  for (int n = 2; n <= 4; ++n) {
    auto c = weight_bounded(n, 2);
    EXPECT_EQ(static_cast<int>(c.size()),
              enumerate(n, [](const std::string &s) { return letter_weight(s) <= 2; }));
  }
}

TEST(channels, probabilities_and_validation) {
  auto only_z = pairwise_correlated(2, ErrorWeight([](const PauliString &p) {
                                      return p.letters() == "ZZ" ? 0.1 : 0.0;
                                    }));
  EXPECT_EQ(only_z.size(), 2u);
  EXPECT_EQ(letter_set(only_z), (std::set<std::string>{"II", "ZZ"}));
  auto none = triple_correlated(3, ErrorWeight([](const PauliString &) { return 0.0; }));
  EXPECT_EQ(none.size(), 1u);
  EXPECT_EQ(choi_rank(none), 1);

  EXPECT_THROW(pairwise_correlated(1), InvalidInput);
  EXPECT_THROW(weight_bounded(3, 4), InvalidInput);
  EXPECT_THROW(pairwise_correlated(3, ErrorWeight([](const PauliString &) { return 0.2; })),
               InvalidInput);
  EXPECT_THROW(PauliChannel(1, {{0.5, PauliString::parse("X")}}), InvalidInput);
  // Terms equal up to phase merge.
  PauliChannel merged(1, {{0.25, PauliString::parse("X")},
                          {0.25, PauliString::parse("-X")},
                          {0.5, PauliString::parse("I")}});
  EXPECT_EQ(merged.size(), 2u);
}

TEST(channels, every_family_is_trace_preserving) {
  for (const auto &c : {pairwise_correlated(3), even_weight_correlated(2), triple_correlated(4),
                        fully_correlated(4), weight_bounded(3, 2)}) {
    double total = 0;
    for (const auto &t : c.terms()) total += t.p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    auto k = to_kraus(c);
    Matrix sum = Matrix::Zero(k.input_dim(), k.input_dim());
    for (const auto &op : k.operators()) sum += op.adjoint() * op;
    EXPECT_LT(max_abs_diff(sum, Matrix::Identity(k.input_dim(), k.input_dim())), 1e-10);
  }
  EXPECT_THROW(KrausSet({Matrix::Identity(2, 2) * 0.5}), NumericalError);
}

TEST(channels, choi_rank_agrees_with_explicit_choi) {
  for (const auto &c : {pairwise_correlated(3), triple_correlated(3), fully_correlated(3),
                        weight_bounded(3, 1), weight_bounded(2, 2), pairwise_correlated(2)}) {
    const int terms = static_cast<int>(c.size());
    EXPECT_EQ(choi_rank(c), terms);
    EXPECT_EQ(choi_rank(to_kraus(c)), terms);
    Matrix r = choi_matrix(to_kraus(c));
    EXPECT_EQ(numerical_rank(r), terms);
    EXPECT_NEAR(r.trace().real(), std::pow(2.0, c.num_qubits()), 1e-10);
    EXPECT_LT(max_abs_diff(r, choi_matrix(c)), 1e-12);
  }
}

TEST(channels, choi_of_simple_qubit_channels) {
  KrausSet id({Matrix::Identity(2, 2)});
  Matrix r = choi_matrix(id);
  EXPECT_EQ(numerical_rank(r), 1);
  EXPECT_NEAR(r.trace().real(), 2.0, 1e-14);
  EXPECT_NEAR(r(0, 3).real(), 1.0, 1e-14);  // |00> + |11>

  auto depolarize = weight_bounded(1, 1, UniformNoise{0.25});
  Matrix d = choi_matrix(to_kraus(depolarize));
  EXPECT_LT(max_abs_diff(d, Matrix::Identity(4, 4) / 2.0), 1e-14);
  EXPECT_EQ(choi_rank(depolarize), 4);
}

TEST(channels, choi_guard) {
  EXPECT_THROW(choi_matrix(KrausSet({Matrix::Identity(256, 256)})), GuardExceeded);
}

TEST(channels, rank_invariant_under_remixing) {
  auto k = to_kraus(pairwise_correlated(3));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Matrix u = random_unitary(static_cast<Eigen::Index>(k.size()), seed);
    KrausSet mixed = remix(k, u);
    EXPECT_EQ(choi_rank(mixed), 10);
    EXPECT_LT(max_abs_diff(choi_matrix(mixed), choi_matrix(k)), 1e-12);
  }
}

TEST(channels, minimal_kraus_compresses) {
  Matrix half = Matrix::Identity(2, 2) / std::sqrt(2.0);
  KrausSet doubled({half, half});
  auto m = minimal_kraus(doubled);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_LT(max_abs_diff(choi_matrix(m), choi_matrix(doubled)), 1e-12);

  // Padding with a zero block and remixing hides the rank; minimization restores it.
  auto k = to_kraus(triple_correlated(3));
  std::vector<Matrix> ops = k.operators();
  ops.push_back(Matrix::Zero(8, 8));
  ops.push_back(Matrix::Zero(8, 8));
  KrausSet padded = remix(KrausSet(ops), random_unitary(6, 9));
  auto minimal = minimal_kraus(padded);
  EXPECT_EQ(minimal.size(), 4u);
  EXPECT_LT(max_abs_diff(choi_matrix(minimal), choi_matrix(k)), 1e-9);
  EXPECT_EQ(minimal_kraus(pairwise_correlated(3)).size(), 10u);
}

TEST(channels, symbolic_application_matches_dense) {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 4; ++n) {
    auto c = weight_bounded(n, std::min(n, 2));
    Vector psi = haar_random_state(Eigen::Index{1} << n, rng);
    Matrix rho = psi * psi.adjoint();
    EXPECT_LT(max_abs_diff(apply_channel(rho, c), apply_channel(rho, to_kraus(c))), 1e-13);
  }
}

TEST(channels, pairwise_on_plus_states) {
  // Z_1 Z_2 alone maps |++><++| to |--><--| with its probability.
  auto c = pairwise_correlated(2, ErrorWeight([](const PauliString &p) {
                                 return p.letters() == "ZZ" ? 0.3 : 0.0;
                               }));
  Vector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  Vector minus(2);
  minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  Vector pp = kron(plus, plus), mm = kron(minus, minus);
  Matrix expected = 0.7 * pp * pp.adjoint() + 0.3 * mm * mm.adjoint();
  EXPECT_LT(max_abs_diff(apply_channel(pp * pp.adjoint(), c), expected), 1e-14);
}

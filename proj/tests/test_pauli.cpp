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

#include "qecv/pauli.hpp"

using namespace qecv;

namespace {

// Independent oracle: Kronecker product of the textbook 2x2 matrices.
Matrix letter_matrix(char c) {
  const cplx i(0, 1);
  Matrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix oracle(const std::string &letters, cplx phase = 1) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : letters) out = kron(out, letter_matrix(c));
  return phase * out;
}

std::string random_letters(int n, std::mt19937_64 &rng) {
  std::string s;
  for (int q = 0; q < n; ++q) s += "IXYZ"[rng() % 4];
  return s;
}

PauliString random_pauli(int n, std::mt19937_64 &rng) {
  static const char *prefix[4] = {"+", "+i", "-", "-i"};
  return PauliString::parse(std::string(prefix[rng() % 4]) + random_letters(n, rng));
}

}  // namespace

TEST(pauli, dense_matches_kron_oracle) {
  EXPECT_LT(max_abs_diff(PauliString::parse("Y").to_dense(), letter_matrix('Y')), 1e-15);
  EXPECT_LT(max_abs_diff(PauliString::parse("XIZ").to_dense(), oracle("XIZ")), 1e-15);
  EXPECT_LT(max_abs_diff(PauliString::parse("-iYYI").to_dense(), oracle("YYI", cplx(0, -1))),
            1e-15);
  // Qubit 0 is the most significant bit of the basis index.
  auto x0 = PauliString::single(Pauli::X, 0, 3).to_dense();
  EXPECT_EQ(x0(4, 0), cplx(1));
}

TEST(pauli, parse_str_roundtrip) {
  for (const char *s : {"+XIZ", "-iYYI", "+iZ", "-XXXX", "+IIII"})
    EXPECT_EQ(PauliString::parse(s).str(), s);
  EXPECT_EQ(PauliString::parse("XZ").str(), "+XZ");
  EXPECT_EQ(PauliString::parse("-iYYI").letters(), "YYI");
  EXPECT_THROW(PauliString::parse("XQ"), InvalidInput);
}

TEST(pauli, exhaustive_products_small_n) {
  for (int n = 1; n <= 2; ++n) {
    const int count = 1 << (2 * n);
    for (int a = 0; a < count * 4; ++a)
      for (int b = 0; b < count; ++b) {
        std::string la, lb;
        for (int q = 0; q < n; ++q) {
          la += "IXYZ"[(a >> (2 * q)) & 3];
          lb += "IXYZ"[(b >> (2 * q)) & 3];
        }
        const cplx phase = PauliString::phase_value(a / count);
        PauliString pa = PauliString::parse(la) * PauliString(n).with_phase(a / count);
        PauliString pb = PauliString::parse(lb);
        Matrix expected = oracle(la, phase) * oracle(lb);
        EXPECT_LT(max_abs_diff((pa * pb).to_dense(), expected), 1e-14) << la << " " << lb;
        Matrix comm = oracle(la) * oracle(lb) - oracle(lb) * oracle(la);
        EXPECT_EQ(commutes(pa, pb), comm.norm() < 1e-12);
      }
  }
}

TEST(pauli, randomized_products_and_weight) {
  std::mt19937_64 rng(11);
  for (int n = 3; n <= 6; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
      Matrix da = a.to_dense(), db = b.to_dense();
      EXPECT_LT(max_abs_diff((a * b).to_dense(), da * db), 1e-13);
      EXPECT_LT(max_abs_diff(a.adjoint().to_dense(), da.adjoint()), 1e-13);
      EXPECT_EQ(commutes(a, b), (da * db - db * da).norm() < 1e-10);
      int w = 0;
      for (char c : a.letters()) w += c != 'I';
      EXPECT_EQ(weight(a), w);
    }
}

TEST(pauli, associativity_and_involution) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 70);  // crosses a word boundary
    PauliString a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    PauliString h = a.hermitian();
    EXPECT_EQ(h * h, PauliString(n));
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_EQ(PauliString::parse(a.str()), a);
  }
}

TEST(pauli, matrix_free_application) {
  PauliString p = PauliString::parse("-iXYZY");
  Matrix d = p.to_dense();
  Matrix m = Matrix::Random(16, 3);
  Vector v = Vector::Random(16);
  Matrix rho = Matrix::Random(16, 16);
  EXPECT_LT(max_abs_diff(p.apply(m), d * m), 1e-13);
  EXPECT_LT(max_abs_diff(p.apply(v), d * v), 1e-13);
  EXPECT_LT(max_abs_diff(p.conjugate(rho), d * rho * d.adjoint()), 1e-13);
}

TEST(pauli, size_mismatch_and_guard) {
  EXPECT_THROW(PauliString(2) * PauliString(3), DimensionMismatch);
  EXPECT_THROW(PauliString::single(Pauli::X, 3, 3), InvalidInput);
  EXPECT_THROW(PauliString(20).to_dense(), GuardExceeded);
}

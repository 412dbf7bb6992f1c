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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qecv/errors.hpp"
#include "qecv/linalg.hpp"

namespace qecv {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * n-qubit Pauli operator  i^phase * prod_q X_q^{x_q} Z_q^{z_q}.
 *
 * Qubit 0 is the leftmost tensor factor (most significant bit of a basis
 * index). Bits are packed 64 per word; unused high bits of the last word are
 * always zero.
 */
class PauliString {
 public:
  using word = std::uint64_t;

  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(int n)
      : n_(n), x_(word_count(n), 0), z_(word_count(n), 0) {
    if (n < 0) throw InvalidInput("PauliString: negative qubit count");
  }

  static PauliString identity(int n) { return PauliString(n); }

  static PauliString single(Pauli kind, int position, int n) {
    PauliString p(n);
    if (position < 0 || position >= n)
      throw InvalidInput("PauliString::single: position " +
                         std::to_string(position) + " out of range for " +
                         std::to_string(n) + " qubits");
    p.set(position, kind);
    return p;
  }

  /// The same letter on every listed qubit, e.g. X_i X_j.
  static PauliString uniform(Pauli kind, const std::vector<int> &positions, int n) {
    PauliString p(n);
    for (int q : positions) {
      if (q < 0 || q >= n) throw InvalidInput("PauliString::uniform: position out of range");
      if (p.letter(q) != Pauli::I)
        throw InvalidInput("PauliString::uniform: repeated position");
      p.set(q, kind);
    }
    return p;
  }

  /// Parses "+XIZ", "-iYYI", "XZ" (implicit +). The prefix is the phase of
  /// the Hermitian letter product, so "+Y" is the Pauli Y matrix.
  static PauliString parse(std::string_view text) {
    int text_phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') text_phase = 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      text_phase += 1;
      ++pos;
    }
    std::string_view letters = text.substr(pos);
    PauliString p(static_cast<int>(letters.size()));
    for (std::size_t q = 0; q < letters.size(); ++q) {
      switch (letters[q]) {
        case 'I': case '_': break;
        case 'X': p.set(static_cast<int>(q), Pauli::X); break;
        case 'Y': p.set(static_cast<int>(q), Pauli::Y); break;
        case 'Z': p.set(static_cast<int>(q), Pauli::Z); break;
        default:
          throw InvalidInput("PauliString::parse: bad character '" +
                             std::string(1, letters[q]) + "' in \"" +
                             std::string(text) + "\"");
      }
    }
    p.phase_ = static_cast<std::uint8_t>((p.phase_ + text_phase) & 3);
    return p;
  }

  std::string str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[hermitian_phase()];
    out.reserve(out.size() + n_);
    for (int q = 0; q < n_; ++q) out += "IXYZ"[static_cast<int>(letter(q))];
    return out;
  }

  /// Letter string without the phase prefix.
  std::string letters() const { return str().substr(hermitian_phase() % 2 ? 2 : 1); }

  int num_qubits() const { return n_; }
  int phase_exp() const { return phase_; }
  bool x(int q) const { return (x_[q / 64] >> (q % 64)) & 1u; }
  bool z(int q) const { return (z_[q / 64] >> (q % 64)) & 1u; }

  Pauli letter(int q) const {
    bool xb = x(q), zb = z(q);
    if (xb && zb) return Pauli::Y;
    if (xb) return Pauli::X;
    if (zb) return Pauli::Z;
    return Pauli::I;
  }

  int weight() const {
    int w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
    return w;
  }

  /// Phase relative to the product of Hermitian letters (Y counted as Y).
  int hermitian_phase() const { return (phase_ - y_count()) & 3; }
  bool is_hermitian() const { return hermitian_phase() % 2 == 0; }

  /// True when both operators agree up to a global phase.
  bool same_support(const PauliString &o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  PauliString with_phase(int phase) const {
    PauliString p = *this;
    p.phase_ = static_cast<std::uint8_t>(phase & 3);
    return p;
  }

  /// Same letters with the Hermitian (+) sign.
  PauliString hermitian() const { return with_phase(y_count()); }

  PauliString adjoint() const {
    PauliString p = *this;
    p.phase_ = static_cast<std::uint8_t>((-phase_ + 2 * xz_overlap(*this, *this)) & 3);
    return p;
  }

  friend PauliString operator*(const PauliString &a, const PauliString &b) {
    check_sizes(a, b, "multiply");
    PauliString c(a.n_);
    for (std::size_t i = 0; i < a.x_.size(); ++i) {
      c.x_[i] = a.x_[i] ^ b.x_[i];
      c.z_[i] = a.z_[i] ^ b.z_[i];
    }
    // Z^a X^b = (-1)^{ab} X^b Z^a when moving b's X past a's Z.
    c.phase_ = static_cast<std::uint8_t>(
        (a.phase_ + b.phase_ + 2 * xz_overlap_zx(a, b)) & 3);
    return c;
  }

  friend bool operator==(const PauliString &, const PauliString &) = default;

  /// Total order on (n, x, z, phase) for use as a map key.
  friend std::strong_ordering operator<=>(const PauliString &a, const PauliString &b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    if (auto c = a.z_ <=> b.z_; c != 0) return c;
    return a.phase_ <=> b.phase_;
  }

  /// Amplitude and target of P|col>: P|col> = value * |row>.
  struct Column {
    std::size_t row;
    cplx value;
  };

  Column column(std::size_t col) const {
    std::size_t xmask = mask(x_), zmask = mask(z_);
    int sign = std::popcount(zmask & col) & 1;
    return {col ^ xmask, phase_value((phase_ + 2 * sign) & 3)};
  }

  /// Dense 2^n x 2^n matrix.
  Matrix to_dense() const {
    require_dense(n_, "PauliString::to_dense");
    const std::size_t dim = std::size_t{1} << n_;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      auto [r, v] = column(c);
      m(r, c) = v;
    }
    return m;
  }

  /// P * v without forming the matrix.
  Vector apply(const Vector &v) const {
    require_dense(n_, "PauliString::apply");
    check_dim(v.size());
    Vector out(v.size());
    for (std::size_t c = 0; c < static_cast<std::size_t>(v.size()); ++c) {
      auto [r, val] = column(c);
      out(r) = val * v(c);
    }
    return out;
  }

  /// P * m (left multiplication), column-by-column permutation with signs.
  Matrix apply(const Matrix &m) const {
    require_dense(n_, "PauliString::apply");
    check_dim(m.rows());
    Matrix out(m.rows(), m.cols());
    for (std::size_t c = 0; c < static_cast<std::size_t>(m.rows()); ++c) {
      auto [r, val] = column(c);
      out.row(r) = val * m.row(c);
    }
    return out;
  }

  /// P rho P^dagger.
  Matrix conjugate(const Matrix &rho) const {
    require_dense(n_, "PauliString::conjugate");
    check_dim(rho.rows());
    const std::size_t dim = rho.rows();
    std::vector<std::size_t> target(dim);
    std::vector<cplx> value(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      auto [r, v] = column(c);
      target[c] = r;
      value[c] = v;
    }
    Matrix out(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i)
        out(target[i], target[j]) = value[i] * rho(i, j) * std::conj(value[j]);
    return out;
  }

  static cplx phase_value(int phase) {
    static const cplx kValues[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kValues[phase & 3];
  }

 private:
  static std::size_t word_count(int n) { return n <= 0 ? 0 : (n + 63) / 64; }

  void set(int q, Pauli kind) {
    word bit = word{1} << (q % 64);
    bool old_y = letter(q) == Pauli::Y;
    x_[q / 64] &= ~bit;
    z_[q / 64] &= ~bit;
    if (kind == Pauli::X || kind == Pauli::Y) x_[q / 64] |= bit;
    if (kind == Pauli::Z || kind == Pauli::Y) z_[q / 64] |= bit;
    // Y = i X Z
    int delta = (kind == Pauli::Y ? 1 : 0) - (old_y ? 1 : 0);
    phase_ = static_cast<std::uint8_t>((phase_ + delta) & 3);
  }

  int y_count() const {
    int c = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) c += std::popcount(x_[i] & z_[i]);
    return c;
  }

  // a.x . b.z  (mod 4 is enough for phases)
  static int xz_overlap(const PauliString &a, const PauliString &b) {
    int c = 0;
    for (std::size_t i = 0; i < a.x_.size(); ++i) c += std::popcount(a.x_[i] & b.z_[i]);
    return c;
  }

  // a.z . b.x
  static int xz_overlap_zx(const PauliString &a, const PauliString &b) {
    return xz_overlap(b, a);
  }

  // Index bitmask with qubit 0 as the most significant bit.
  std::size_t mask(const std::vector<word> &bits) const {
    std::size_t m = 0;
    for (int q = 0; q < n_; ++q)
      if ((bits[q / 64] >> (q % 64)) & 1u) m |= std::size_t{1} << (n_ - 1 - q);
    return m;
  }

  void check_dim(Eigen::Index d) const {
    if (d != (Eigen::Index{1} << n_))
      throw DimensionMismatch("PauliString: operand dimension " + std::to_string(d) +
                              " does not match " + std::to_string(n_) + " qubits");
  }

  static void check_sizes(const PauliString &a, const PauliString &b, const char *op) {
    if (a.n_ != b.n_)
      throw DimensionMismatch(std::string("PauliString::") + op + ": qubit counts " +
                              std::to_string(a.n_) + " and " + std::to_string(b.n_));
  }

  friend bool commutes(const PauliString &a, const PauliString &b);

  int n_ = 0;
  std::uint8_t phase_ = 0;
  std::vector<word> x_;
  std::vector<word> z_;
};

inline PauliString multiply(const PauliString &a, const PauliString &b) { return a * b; }

inline bool commutes(const PauliString &a, const PauliString &b) {
  PauliString::check_sizes(a, b, "commutes");
  int form = PauliString::xz_overlap(a, b) + PauliString::xz_overlap(b, a);
  return form % 2 == 0;
}

inline int weight(const PauliString &p) { return p.weight(); }

inline Matrix to_dense(const PauliString &p) { return p.to_dense(); }

}  // namespace qecv

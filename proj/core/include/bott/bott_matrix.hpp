#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bott/integer.hpp"

namespace bott {

// Largest tower height supported.  Monomials are bitmasks over the stages.
inline constexpr int kMaxStages = 16;

// A degree-two class sum_i c_i x_i, stored densely in the x-basis.
// Index 0 holds the coefficient of x_1.
struct DegreeTwoClass {
  std::vector<Integer> coeffs;

  DegreeTwoClass() = default;
  explicit DegreeTwoClass(int n) : coeffs(static_cast<std::size_t>(n)) {}
  explicit DegreeTwoClass(std::vector<Integer> c) : coeffs(std::move(c)) {}

  static DegreeTwoClass basis(int n, int i);  // x_i, 1-indexed

  int n() const { return static_cast<int>(coeffs.size()); }
  // 1-indexed access to the coefficient of x_i.
  const Integer& operator[](int i) const { return coeffs[static_cast<std::size_t>(i - 1)]; }
  Integer& operator[](int i) { return coeffs[static_cast<std::size_t>(i - 1)]; }

  bool is_zero() const;
  Integer content() const;  // gcd of coefficients, 0 for the zero class
  bool is_primitive() const { return content() == 1; }
  // Largest index with a nonzero coefficient, 0 for the zero class.
  int top_index() const;
  // Sign-normalised copy: first nonzero coefficient positive.
  DegreeTwoClass canonical_sign() const;

  DegreeTwoClass& operator+=(const DegreeTwoClass& o);
  DegreeTwoClass& operator-=(const DegreeTwoClass& o);
  DegreeTwoClass& operator*=(const Integer& s);
  friend DegreeTwoClass operator+(DegreeTwoClass a, const DegreeTwoClass& b) { return a += b; }
  friend DegreeTwoClass operator-(DegreeTwoClass a, const DegreeTwoClass& b) { return a -= b; }
  friend DegreeTwoClass operator*(const Integer& s, DegreeTwoClass a) { return a *= s; }
  DegreeTwoClass operator-() const;

  friend bool operator==(const DegreeTwoClass&, const DegreeTwoClass&) = default;
  friend bool operator<(const DegreeTwoClass& a, const DegreeTwoClass& b);

  nlohmann::json to_json() const;
  static DegreeTwoClass from_json(const nlohmann::json& j);
  std::string to_string() const;  // "2x2 - x1" style, for diagnostics
};

struct MatrixEntry {
  int i = 0;
  int j = 0;
  Integer value;
};

// Strictly upper-triangular integer matrix A^i_j (1 <= i < j <= n); the
// complete presentation of a Bott tower.  Immutable after construction.
class BottMatrix {
 public:
  // The tower CP^1.
  BottMatrix() : BottMatrix(1) {}

  static BottMatrix validate(int n, std::span<const MatrixEntry> entries);
  static BottMatrix zero(int n) { return BottMatrix(n); }
  // cols[k] lists A^1_{k+2} .. A^{k+1}_{k+2}.
  static BottMatrix from_columns(const std::vector<std::vector<Integer>>& cols);
  // Hirzebruch surface Sigma_a.
  static BottMatrix hirzebruch(const Integer& a);

  int n() const { return n_; }
  const Integer& entry(int i, int j) const;
  BottMatrix with_entry(int i, int j, const Integer& value) const;

  // Twist class of stage j; alpha(1) is zero.
  DegreeTwoClass alpha(int j) const;

  // Entries in column order A12, A13, A23, A14, ...
  std::span<const Integer> flat() const { return entries_; }
  Integer max_abs_entry() const;
  bool is_zero() const;

  friend bool operator==(const BottMatrix& a, const BottMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }
  // Lexicographic order: n first, then the column-order entry sequence.
  friend bool operator<(const BottMatrix& a, const BottMatrix& b);

  nlohmann::json to_json() const;
  static BottMatrix from_json(const nlohmann::json& j);
  // Canonical compact JSON text; equal keys iff equal matrices.
  std::string key() const { return to_json().dump(); }

  static std::size_t offset(int i, int j) {
    return static_cast<std::size_t>((j - 1) * (j - 2) / 2 + (i - 1));
  }

 private:
  explicit BottMatrix(int n);

  int n_;
  std::vector<Integer> entries_;
};

}  // namespace bott

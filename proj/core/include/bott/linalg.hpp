#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "bott/bott_matrix.hpp"
#include "bott/integer.hpp"

namespace bott {

// Dense integer matrix, row-major, 0-indexed.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  static IntMatrix identity(int n);
  // Columns given as degree-two classes of equal length.
  static IntMatrix from_columns(const std::vector<DegreeTwoClass>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Integer& at(int r, int c) { return data_[index(r, c)]; }
  const Integer& at(int r, int c) const { return data_[index(r, c)]; }

  DegreeTwoClass column(int c) const;
  void set_column(int c, const DegreeTwoClass& v);

  bool is_square() const { return rows_ == cols_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // JSON: array of rows.
  nlohmann::json to_json() const;
  static IntMatrix from_json(const nlohmann::json& j);

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * cols_ + c); }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

DegreeTwoClass apply(const IntMatrix& p, const DegreeTwoClass& v);

// Fraction-free Gaussian elimination (Bareiss).
Integer determinant(const IntMatrix& m);
int rank(const IntMatrix& m);

// Inverse of a square matrix with determinant +-1; nullopt otherwise.
std::optional<IntMatrix> inverse_unimodular(const IntMatrix& m);

// num * den^{-1} when den is square and invertible over Q and the result is
// integral; nullopt otherwise.
std::optional<IntMatrix> divide_right(const IntMatrix& num, const IntMatrix& den);

// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form, all
// positive.  Their count is the rank.
std::vector<Integer> elementary_divisors(IntMatrix m);

}  // namespace bott

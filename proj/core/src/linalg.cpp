#include "bott/linalg.hpp"

#include <algorithm>
#include <utility>

#include "bott/error.hpp"

namespace bott {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<DegreeTwoClass>& cols) {
  const int r = cols.empty() ? 0 : cols.front().n();
  IntMatrix m(r, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) m.set_column(c, cols[static_cast<std::size_t>(c)]);
  return m;
}

DegreeTwoClass IntMatrix::column(int c) const {
  DegreeTwoClass v(rows_);
  for (int r = 0; r < rows_; ++r) v.coeffs[static_cast<std::size_t>(r)] = at(r, c);
  return v;
}

void IntMatrix::set_column(int c, const DegreeTwoClass& v) {
  if (v.n() != rows_) throw BottError(ErrorCode::DimensionMismatch, "column length mismatch");
  for (int r = 0; r < rows_; ++r) at(r, c) = v.coeffs[static_cast<std::size_t>(r)];
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw BottError(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Integer& aik = a.at(i, k);
      if (is_zero(aik)) continue;
      for (int j = 0; j < b.cols_; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

nlohmann::json IntMatrix::to_json() const {
  auto rows = nlohmann::json::array();
  for (int r = 0; r < rows_; ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < cols_; ++c) row.push_back(integer_to_json(at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix IntMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw BottError(ErrorCode::ParseError, "matrix must be an array of rows");
  const int r = static_cast<int>(j.size());
  const int c = r == 0 ? 0 : static_cast<int>(j.front().size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != c) {
      throw BottError(ErrorCode::ParseError, "ragged matrix rows");
    }
    for (int k = 0; k < c; ++k) m.at(i, k) = integer_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

DegreeTwoClass apply(const IntMatrix& p, const DegreeTwoClass& v) {
  if (p.cols() != v.n()) throw BottError(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  DegreeTwoClass out(p.rows());
  for (int c = 0; c < p.cols(); ++c) {
    const Integer& vc = v.coeffs[static_cast<std::size_t>(c)];
    if (is_zero(vc)) continue;
    for (int r = 0; r < p.rows(); ++r) out.coeffs[static_cast<std::size_t>(r)] += p.at(r, c) * vc;
  }
  return out;
}

Integer determinant(const IntMatrix& input) {
  if (!input.is_square()) throw BottError(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const int n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(m.at(k, k))) {
      int p = k + 1;
      while (p < n && is_zero(m.at(p, k))) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

// Row-reduces a rational copy; returns the rank.
int rational_rank(std::vector<std::vector<Rational>>& a, int rows, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && sgn(a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
    for (int i = r + 1; i < rows; ++i) {
      auto& row = a[static_cast<std::size_t>(i)];
      if (sgn(row[static_cast<std::size_t>(c)]) == 0) continue;
      Rational f = row[static_cast<std::size_t>(c)] / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      for (int k = c; k < cols; ++k) row[static_cast<std::size_t>(k)] -= f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<std::vector<Rational>>> rational_inverse(const IntMatrix& m) {
  const int n = m.rows();
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(m.at(i, j));
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(c)]);
    auto& pivot_row = a[static_cast<std::size_t>(c)];
    Rational inv = 1 / pivot_row[static_cast<std::size_t>(c)];
    for (auto& v : pivot_row) v *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      auto& row = a[static_cast<std::size_t>(i)];
      Rational f = row[static_cast<std::size_t>(c)];
      if (sgn(f) == 0) continue;
      for (int k = 0; k < 2 * n; ++k) row[static_cast<std::size_t>(k)] -= f * pivot_row[static_cast<std::size_t>(k)];
    }
  }
  std::vector<std::vector<Rational>> inv(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
    }
  }
  return inv;
}

}  // namespace

int rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m.rows()),
                                       std::vector<Rational>(static_cast<std::size_t>(m.cols())));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(m.at(i, j));
  }
  return rational_rank(a, m.rows(), m.cols());
}

std::optional<IntMatrix> inverse_unimodular(const IntMatrix& m) {
  if (!m.is_square()) return std::nullopt;
  if (abs(determinant(m)) != 1) return std::nullopt;
  return divide_right(IntMatrix::identity(m.rows()), m);
}

std::optional<IntMatrix> divide_right(const IntMatrix& num, const IntMatrix& den) {
  if (!den.is_square() || num.cols() != den.rows()) {
    throw BottError(ErrorCode::DimensionMismatch, "divide_right shape mismatch");
  }
  auto inv = rational_inverse(den);
  if (!inv) return std::nullopt;
  const int n = den.rows();
  IntMatrix out(num.rows(), n);
  for (int i = 0; i < num.rows(); ++i) {
    for (int j = 0; j < n; ++j) {
      Rational acc = 0;
      for (int k = 0; k < n; ++k) {
        const Integer& v = num.at(i, k);
        if (!is_zero(v)) acc += Rational(v) * (*inv)[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      }
      acc.canonicalize();
      if (acc.get_den() != 1) return std::nullopt;
      out.at(i, j) = acc.get_num();
    }
  }
  return out;
}

std::vector<Integer> elementary_divisors(IntMatrix m) {
  const int rows = m.rows();
  const int cols = m.cols();
  auto swap_rows = [&](int a, int b) {
    for (int c = 0; c < cols; ++c) std::swap(m.at(a, c), m.at(b, c));
  };
  auto swap_cols = [&](int a, int b) {
    for (int r = 0; r < rows; ++r) std::swap(m.at(r, a), m.at(r, b));
  };

  std::vector<Integer> diag;
  for (int k = 0; k < std::min(rows, cols); ++k) {
    // smallest nonzero entry of the trailing block as pivot
    int pr = -1, pc = -1;
    for (int r = k; r < rows; ++r) {
      for (int c = k; c < cols; ++c) {
        if (is_zero(m.at(r, c))) continue;
        if (pr < 0 || abs(m.at(r, c)) < abs(m.at(pr, pc))) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr < 0) break;
    swap_rows(k, pr);
    swap_cols(k, pc);

    for (;;) {
      bool clean = true;
      for (int r = k + 1; r < rows; ++r) {
        if (is_zero(m.at(r, k))) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(r, k).get_mpz_t(), m.at(k, k).get_mpz_t());
        for (int c = k; c < cols; ++c) m.at(r, c) -= q * m.at(k, c);
        if (!is_zero(m.at(r, k))) {
          swap_rows(k, r);
          clean = false;
        }
      }
      for (int c = k + 1; c < cols; ++c) {
        if (is_zero(m.at(k, c))) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(k, c).get_mpz_t(), m.at(k, k).get_mpz_t());
        for (int r = k; r < rows; ++r) m.at(r, c) -= q * m.at(r, k);
        if (!is_zero(m.at(k, c))) {
          swap_cols(k, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      int bad_r = -1;
      for (int r = k + 1; r < rows && bad_r < 0; ++r) {
        for (int c = k + 1; c < cols; ++c) {
          if (!mpz_divisible_p(m.at(r, c).get_mpz_t(), m.at(k, k).get_mpz_t())) {
            bad_r = r;
            break;
          }
        }
      }
      if (bad_r < 0) break;
      for (int c = k; c < cols; ++c) m.at(k, c) += m.at(bad_r, c);
    }
    diag.push_back(abs(m.at(k, k)));
  }
  return diag;
}

}  // namespace bott

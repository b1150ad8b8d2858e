#include "bott/bott_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "bott/error.hpp"

namespace bott {

DegreeTwoClass DegreeTwoClass::basis(int n, int i) {
  DegreeTwoClass c(n);
  c[i] = 1;
  return c;
}

bool DegreeTwoClass::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& v) { return bott::is_zero(v); });
}

Integer DegreeTwoClass::content() const {
  Integer g = 0;
  for (const auto& v : coeffs) g = gcd(g, v);
  return g;
}

int DegreeTwoClass::top_index() const {
  for (int i = n(); i >= 1; --i) {
    if (!bott::is_zero((*this)[i])) return i;
  }
  return 0;
}

DegreeTwoClass DegreeTwoClass::canonical_sign() const {
  for (const auto& v : coeffs) {
    if (sgn(v) > 0) return *this;
    if (sgn(v) < 0) return -*this;
  }
  return *this;
}

DegreeTwoClass& DegreeTwoClass::operator+=(const DegreeTwoClass& o) {
  if (o.n() != n()) throw BottError(ErrorCode::DimensionMismatch, "degree-two classes of different length");
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
  return *this;
}

DegreeTwoClass& DegreeTwoClass::operator-=(const DegreeTwoClass& o) {
  if (o.n() != n()) throw BottError(ErrorCode::DimensionMismatch, "degree-two classes of different length");
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= o.coeffs[k];
  return *this;
}

DegreeTwoClass& DegreeTwoClass::operator*=(const Integer& s) {
  for (auto& v : coeffs) v *= s;
  return *this;
}

DegreeTwoClass DegreeTwoClass::operator-() const {
  DegreeTwoClass r = *this;
  for (auto& v : r.coeffs) v = -v;
  return r;
}

bool operator<(const DegreeTwoClass& a, const DegreeTwoClass& b) {
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
}

nlohmann::json DegreeTwoClass::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& v : coeffs) arr.push_back(integer_to_json(v));
  return arr;
}

DegreeTwoClass DegreeTwoClass::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw BottError(ErrorCode::ParseError, "degree-two class must be an array");
  DegreeTwoClass c;
  for (const auto& v : j) c.coeffs.push_back(integer_from_json(v));
  return c;
}

std::string DegreeTwoClass::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int i = 1; i <= n(); ++i) {
    const Integer& c = (*this)[i];
    if (bott::is_zero(c)) continue;
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag.get_str();
    out << "x" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

BottMatrix::BottMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n * (n - 1) / 2)) {}

BottMatrix BottMatrix::validate(int n, std::span<const MatrixEntry> entries) {
  if (n < 1) throw BottError(ErrorCode::BadDimension, "stage count must be positive, got " + std::to_string(n));
  if (n > kMaxStages) {
    throw BottError(ErrorCode::BadDimension,
                    "stage count " + std::to_string(n) + " exceeds supported maximum " + std::to_string(kMaxStages));
  }
  BottMatrix m(n);
  for (const auto& e : entries) {
    if (e.i >= e.j) {
      throw BottError(ErrorCode::NonTriangular,
                      "entry at (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") is not strictly upper triangular");
    }
    if (e.i < 1 || e.j > n) {
      throw BottError(ErrorCode::IndexOutOfRange,
                      "entry at (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") outside 1.." + std::to_string(n));
    }
    m.entries_[offset(e.i, e.j)] = e.value;
  }
  return m;
}

BottMatrix BottMatrix::from_columns(const std::vector<std::vector<Integer>>& cols) {
  const int n = static_cast<int>(cols.size()) + 1;
  std::vector<MatrixEntry> entries;
  for (int j = 2; j <= n; ++j) {
    const auto& col = cols[static_cast<std::size_t>(j - 2)];
    if (static_cast<int>(col.size()) != j - 1) {
      throw BottError(ErrorCode::NonTriangular, "column " + std::to_string(j) + " must have " +
                                                    std::to_string(j - 1) + " entries, got " +
                                                    std::to_string(col.size()));
    }
    for (int i = 1; i < j; ++i) entries.push_back({i, j, col[static_cast<std::size_t>(i - 1)]});
  }
  return validate(n, entries);
}

BottMatrix BottMatrix::hirzebruch(const Integer& a) { return from_columns({{a}}); }

const Integer& BottMatrix::entry(int i, int j) const {
  if (i < 1 || j > n_ || i >= j) {
    throw BottError(ErrorCode::IndexOutOfRange, "no entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return entries_[offset(i, j)];
}

BottMatrix BottMatrix::with_entry(int i, int j, const Integer& value) const {
  entry(i, j);
  BottMatrix m = *this;
  m.entries_[offset(i, j)] = value;
  return m;
}

DegreeTwoClass BottMatrix::alpha(int j) const {
  if (j < 1 || j > n_) {
    throw BottError(ErrorCode::IndexOutOfRange, "stage " + std::to_string(j) + " outside 1.." + std::to_string(n_));
  }
  DegreeTwoClass a(n_);
  for (int i = 1; i < j; ++i) a[i] = entries_[offset(i, j)];
  return a;
}

Integer BottMatrix::max_abs_entry() const {
  Integer m = 0;
  for (const auto& v : entries_) {
    if (abs(v) > m) m = abs(v);
  }
  return m;
}

bool BottMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return bott::is_zero(v); });
}

bool operator<(const BottMatrix& a, const BottMatrix& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end());
}

nlohmann::json BottMatrix::to_json() const {
  auto cols = nlohmann::json::array();
  for (int j = 2; j <= n_; ++j) {
    auto col = nlohmann::json::array();
    for (int i = 1; i < j; ++i) col.push_back(integer_to_json(entries_[offset(i, j)]));
    cols.push_back(std::move(col));
  }
  return {{"n", n_}, {"cols", std::move(cols)}};
}

BottMatrix BottMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw BottError(ErrorCode::ParseError, "matrix must be an object with integer \"n\"");
  }
  const auto n64 = j.at("n").get<std::int64_t>();
  if (n64 < 1 || n64 > kMaxStages) {
    throw BottError(ErrorCode::BadDimension, "stage count " + std::to_string(n64) + " outside 1.." +
                                                 std::to_string(kMaxStages));
  }
  const int n = static_cast<int>(n64);
  const auto cols = j.value("cols", nlohmann::json::array());
  if (!cols.is_array() || static_cast<int>(cols.size()) != n - 1) {
    throw BottError(ErrorCode::BadDimension, "\"cols\" must list exactly n-1 = " + std::to_string(n - 1) + " columns");
  }
  std::vector<std::vector<Integer>> raw;
  for (const auto& col : cols) {
    if (!col.is_array()) throw BottError(ErrorCode::ParseError, "each column must be an array");
    std::vector<Integer> c;
    for (const auto& v : col) c.push_back(integer_from_json(v));
    raw.push_back(std::move(c));
  }
  return from_columns(raw);
}

}  // namespace bott

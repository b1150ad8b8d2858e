#include "bott/ring.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include "bott/error.hpp"

namespace bott {

namespace {

using Exponents = std::array<std::uint8_t, kMaxStages>;

void prune_zeros(RingElement::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return is_zero(kv.second); });
}

}  // namespace

Monomial Monomial::of(std::initializer_list<int> indices) {
  Monomial m;
  for (int i : indices) m.support |= Mask{1} << (i - 1);
  return m;
}

std::vector<int> Monomial::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= kMaxStages; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string Monomial::to_string() const {
  if (support == 0) return "1";
  std::string s;
  for (int i : indices()) s += "x" + std::to_string(i);
  return s;
}

RingElement::RingElement(std::shared_ptr<const Ring> ring, Terms terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
  prune_zeros(terms_);
}

Integer RingElement::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

RingElement RingElement::homogeneous_part(int k) const {
  Terms out;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == k) out.emplace(m, c);
  }
  return RingElement(ring_, std::move(out));
}

bool RingElement::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& kv) { return kv.first.degree() == d; });
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    if (m.support == 0) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str();
      out << m.to_string();
    }
    first = false;
  }
  return out.str();
}

void RingElement::require_same_ambient(const RingElement& o) const {
  if (ring_ != o.ring_ && ring_->matrix() != o.ring_->matrix()) {
    throw BottError(ErrorCode::AmbientMismatch, "ring elements live over different Bott matrices");
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  require_same_ambient(o);
  for (const auto& [m, c] : o.terms_) terms_[m] += c;
  prune_zeros(terms_);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  require_same_ambient(o);
  for (const auto& [m, c] : o.terms_) terms_[m] -= c;
  prune_zeros(terms_);
  return *this;
}

RingElement& RingElement::operator*=(const Integer& s) {
  for (auto& [m, c] : terms_) c *= s;
  prune_zeros(terms_);
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) { return a.ring().mul(a, b); }

bool operator==(const RingElement& a, const RingElement& b) {
  if (a.ring_ != b.ring_ && a.ring_->matrix() != b.ring_->matrix()) return false;
  return a.terms_ == b.terms_;
}

std::shared_ptr<const Ring> Ring::make(BottMatrix m) {
  return std::shared_ptr<const Ring>(new Ring(std::move(m)));
}

RingElement Ring::zero() const { return RingElement(shared_from_this(), {}); }

RingElement Ring::one() const { return monomial(Monomial{}, 1); }

RingElement Ring::x(int i) const {
  if (i < 1 || i > n()) {
    throw BottError(ErrorCode::IndexOutOfRange, "generator x" + std::to_string(i) + " outside 1.." + std::to_string(n()));
  }
  return monomial(Monomial::of({i}), 1);
}

RingElement Ring::monomial(Monomial m, const Integer& c) const {
  if (n() < kMaxStages && (m.support >> n()) != 0) {
    throw BottError(ErrorCode::IndexOutOfRange, "monomial " + m.to_string() + " uses a stage beyond " + std::to_string(n()));
  }
  return RingElement(shared_from_this(), {{m, c}});
}

RingElement Ring::embed(const DegreeTwoClass& c) const {
  if (c.n() != n()) throw BottError(ErrorCode::DimensionMismatch, "degree-two class has wrong length");
  RingElement::Terms terms;
  for (int i = 1; i <= n(); ++i) {
    if (!is_zero(c[i])) terms.emplace(Monomial::of({i}), c[i]);
  }
  return RingElement(shared_from_this(), std::move(terms));
}

void Ring::accumulate_product(Monomial s, Monomial t, const Integer& c, RingElement::Terms& out) const {
  if ((s.support & t.support) == 0) {
    out[Monomial{s.support | t.support}] += c;
    return;
  }
  const int nn = n();
  std::vector<std::pair<Exponents, Integer>> work;
  Exponents start{};
  for (int i = 0; i < nn; ++i) {
    start[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(((s.support >> i) & 1U) + ((t.support >> i) & 1U));
  }
  work.emplace_back(start, c);
  while (!work.empty()) {
    auto [e, coeff] = std::move(work.back());
    work.pop_back();
    int j = nn - 1;
    while (j >= 0 && e[static_cast<std::size_t>(j)] < 2) --j;
    if (j < 0) {
      Mask mask = 0;
      for (int i = 0; i < nn; ++i) {
        if (e[static_cast<std::size_t>(i)]) mask |= Mask{1} << i;
      }
      out[Monomial{mask}] += coeff;
      continue;
    }
    // x_j^2 -> sum_{i<j} A^i_j x_i x_j
    e[static_cast<std::size_t>(j)] -= 1;
    for (int i = 0; i < j; ++i) {
      const Integer& a = matrix_.entry(i + 1, j + 1);
      if (is_zero(a)) continue;
      Exponents next = e;
      next[static_cast<std::size_t>(i)] += 1;
      work.emplace_back(next, coeff * a);
    }
  }
}

RingElement Ring::mul(const RingElement& u, const RingElement& v) const {
  if ((u.ring_ptr().get() != this && u.ring().matrix() != matrix_) ||
      (v.ring_ptr().get() != this && v.ring().matrix() != matrix_)) {
    throw BottError(ErrorCode::AmbientMismatch, "cannot multiply elements of different rings");
  }
  RingElement::Terms out;
  for (const auto& [ms, cs] : u.terms()) {
    for (const auto& [mt, ct] : v.terms()) accumulate_product(ms, mt, cs * ct, out);
  }
  return RingElement(shared_from_this(), std::move(out));
}

RingElement Ring::power(const RingElement& z, unsigned k) const {
  RingElement result = one();
  RingElement base = z;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

std::vector<Monomial> Ring::basis(int k) const {
  std::vector<Monomial> out;
  if (k < 0 || k > n()) return out;
  const Mask limit = n() == 32 ? ~Mask{0} : ((Mask{1} << n()) - 1);
  for (Mask m = 0;; ++m) {
    if (std::popcount(m) == k) out.push_back(Monomial{m});
    if (m == limit) break;
  }
  return out;
}

RingElement mul(const RingElement& u, const RingElement& v) { return u.ring().mul(u, v); }

RingElement power(const RingElement& z, unsigned k) { return z.ring().power(z, k); }

std::uint64_t graded_rank(const BottMatrix& m, int k) {
  const int n = m.n();
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<Integer> degree_four_product(const BottMatrix& m, const DegreeTwoClass& u, const DegreeTwoClass& v) {
  const int n = m.n();
  if (u.n() != n || v.n() != n) throw BottError(ErrorCode::DimensionMismatch, "degree-two class has wrong length");
  std::vector<Integer> out(static_cast<std::size_t>(degree_four_rank(n)));
  Integer t;
  for (int b = 1; b <= n; ++b) {
    if (is_zero(u[b]) && is_zero(v[b])) continue;
    for (int a = 1; a < b; ++a) {
      t = u[a] * v[b];
      t += u[b] * v[a];
      out[static_cast<std::size_t>(pair_index(a, b))] += t;
    }
    // x_b^2 = sum_{i<b} A^i_b x_i x_b
    t = u[b] * v[b];
    if (is_zero(t)) continue;
    for (int i = 1; i < b; ++i) {
      const Integer& a = m.entry(i, b);
      if (!is_zero(a)) out[static_cast<std::size_t>(pair_index(i, b))] += t * a;
    }
  }
  return out;
}

bool all_zero(const std::vector<Integer>& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return is_zero(x); });
}

}  // namespace bott

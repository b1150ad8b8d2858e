#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bott/bott_matrix.hpp"
#include "bott/integer.hpp"

namespace bott {

using Mask = std::uint32_t;

// Square-free monomial x_S; bit i-1 of the support set stands for x_i.
struct Monomial {
  Mask support = 0;

  static Monomial of(std::initializer_list<int> indices);

  int degree() const { return std::popcount(support); }  // half degree |S|
  bool contains(int i) const { return (support >> (i - 1)) & 1U; }
  std::vector<int> indices() const;
  std::string to_string() const;  // "x1x3", "1" for the unit

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class Ring;

// An element of H*(B_n) in normal form over the square-free monomial basis.
// Zero coefficients are never stored, so equality is structural.
class RingElement {
 public:
  using Terms = std::map<Monomial, Integer>;

  RingElement(std::shared_ptr<const Ring> ring, Terms terms);

  const Ring& ring() const { return *ring_; }
  const std::shared_ptr<const Ring>& ring_ptr() const { return ring_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(Monomial m) const;
  // Degree-2k part, k in half degrees.
  RingElement homogeneous_part(int k) const;
  bool is_homogeneous() const;
  std::string to_string() const;

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Integer& s);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const Integer& s, RingElement a) { return a *= s; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement operator-() const;

  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  void require_same_ambient(const RingElement& o) const;

  std::shared_ptr<const Ring> ring_;
  Terms terms_;
};

// H*(B_n) = Z[x_1..x_n] / (x_j^2 = alpha_j x_j).  Immutable; share through
// shared_ptr so elements can refer back to their ambient ring.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static std::shared_ptr<const Ring> make(BottMatrix m);

  const BottMatrix& matrix() const { return matrix_; }
  int n() const { return matrix_.n(); }

  RingElement zero() const;
  RingElement one() const;
  RingElement x(int i) const;
  RingElement monomial(Monomial m, const Integer& c = 1) const;
  RingElement embed(const DegreeTwoClass& c) const;
  RingElement alpha(int j) const { return embed(matrix_.alpha(j)); }

  RingElement mul(const RingElement& u, const RingElement& v) const;
  RingElement power(const RingElement& z, unsigned k) const;

  // Square-free monomials of half degree k, in increasing mask order.
  std::vector<Monomial> basis(int k) const;

  // Adds c * x_S * x_T, reduced to normal form, into out.  Repeated indices
  // are rewritten largest first via x_j^2 -> alpha_j x_j.
  void accumulate_product(Monomial s, Monomial t, const Integer& c, RingElement::Terms& out) const;

 private:
  explicit Ring(BottMatrix m) : matrix_(std::move(m)) {}

  BottMatrix matrix_;
};

// Free-function forms of the ring operations.
RingElement mul(const RingElement& u, const RingElement& v);
RingElement power(const RingElement& z, unsigned k);
std::uint64_t graded_rank(const BottMatrix& m, int k);

// Number of degree-four basis monomials x_a x_b (a < b), i.e. C(n, 2).
inline int degree_four_rank(int n) { return n * (n - 1) / 2; }
// Position of x_a x_b (a < b, 1-indexed) in the degree-four basis; the order
// matches Ring::basis(2).
inline int pair_index(int a, int b) { return (b - 1) * (b - 2) / 2 + (a - 1); }

// u * v for degree-two classes, as coordinates in the degree-four basis.
// Equivalent to mul(embed(u), embed(v)) but without the generic reducer.
std::vector<Integer> degree_four_product(const BottMatrix& m, const DegreeTwoClass& u, const DegreeTwoClass& v);
inline std::vector<Integer> square(const BottMatrix& m, const DegreeTwoClass& z) {
  return degree_four_product(m, z, z);
}
bool all_zero(const std::vector<Integer>& v);

}  // namespace bott

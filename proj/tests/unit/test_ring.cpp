#include <doctest.h>

#include <random>

#include "bott/error.hpp"
#include "bott/ring.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bott;

namespace {

RingElement random_element(const Ring& r, gen::Rng& rng, int max_terms) {
  RingElement out = r.zero();
  const int terms = gen::uniform(rng, 0, max_terms);
  for (int k = 0; k < terms; ++k) {
    const Mask s = static_cast<Mask>(gen::uniform(rng, 0, (1 << r.n()) - 1));
    out += r.monomial(Monomial{s}, gen::uniform(rng, -4, 4));
  }
  return out;
}

oracle::Poly to_poly(const RingElement& e) {
  oracle::Poly p;
  for (const auto& [m, c] : e.terms()) {
    oracle::Exponents ex{};
    for (int i : m.indices()) ex[i] = 1;
    oracle::add_term(p, ex, c.get_si());
  }
  return p;
}

}  // namespace

TEST_CASE("validate accepts triangular data and rejects the rest") {
  CHECK(BottMatrix::validate(1, {}).n() == 1);
  const MatrixEntry e3[] = {{1, 2, 3}};
  const auto s3 = BottMatrix::validate(2, e3);
  CHECK(s3 == BottMatrix::hirzebruch(3));
  const MatrixEntry lower[] = {{2, 1, 1}};
  try {
    BottMatrix::validate(2, lower);
    FAIL("accepted a lower-triangular entry");
  } catch (const BottError& e) {
    CHECK(e.code() == ErrorCode::NonTriangular);
  }
  try {
    BottMatrix::validate(0, {});
    FAIL("accepted n = 0");
  } catch (const BottError& e) {
    CHECK(e.code() == ErrorCode::BadDimension);
  }
}

TEST_CASE("alpha reads twists off the columns") {
  const auto m = BottMatrix::from_columns({{1}, {0, 2}});
  CHECK(m.alpha(1).is_zero());
  CHECK(BottMatrix::hirzebruch(7).alpha(2) == DegreeTwoClass(std::vector<Integer>{7, 0}));
  CHECK(m.alpha(3) == DegreeTwoClass(std::vector<Integer>{0, 2, 0}));
  CHECK_THROWS_AS(m.alpha(4), BottError);
  CHECK_THROWS_AS(m.alpha(0), BottError);
}

TEST_CASE("mul examples") {
  auto any = Ring::make(BottMatrix::from_columns({{3}, {-1, 2}}));
  CHECK((any->x(1) * any->x(1)).is_zero());

  auto s1 = Ring::make(BottMatrix::hirzebruch(1));
  CHECK(s1->x(2) * s1->x(2) == s1->monomial(Monomial::of({1, 2})));

  auto m = Ring::make(BottMatrix::from_columns({{1}, {0, 1}}));
  const auto x2x3 = m->monomial(Monomial::of({2, 3}));
  CHECK(x2x3 * m->x(2) == m->monomial(Monomial::of({1, 2, 3})));

  auto other = Ring::make(BottMatrix::hirzebruch(3));
  CHECK_THROWS_AS(s1->x(1) * other->x(1), BottError);
  auto twin = Ring::make(BottMatrix::hirzebruch(1));
  CHECK(s1->x(2) * twin->x(2) == s1->monomial(Monomial::of({1, 2})));
}

TEST_CASE("power examples") {
  auto m = Ring::make(BottMatrix::from_columns({{1}, {0, 1}}));
  CHECK(power(m->x(1), 2).is_zero());
  CHECK(power(m->alpha(3), 2) == m->monomial(Monomial::of({1, 2})));
  CHECK(power(m->one(), 5) == m->one());
  CHECK(power(m->x(2), 0) == m->one());
}

TEST_CASE("graded rank matches the basis") {
  CHECK(graded_rank(BottMatrix::zero(4), 2) == 6);
  CHECK(graded_rank(BottMatrix::zero(2), 1) == 2);
  const auto m = BottMatrix::from_columns({{2}, {-1, 1}});
  CHECK(graded_rank(m, 3) == 1);
  auto r = Ring::make(m);
  CHECK_FALSE(r->monomial(Monomial::of({1, 2, 3})).is_zero());
  for (int n = 1; n <= 6; ++n) {
    auto rz = Ring::make(BottMatrix::zero(n));
    for (int k = 0; k <= n + 1; ++k) CHECK(rz->basis(k).size() == graded_rank(rz->matrix(), k));
  }
}

TEST_CASE("ring axioms on random elements") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen::uniform(rng, 1, 5);
    auto r = Ring::make(gen::matrix(rng, n, 3));
    const auto u = random_element(*r, rng, 4);
    const auto v = random_element(*r, rng, 4);
    const auto w = random_element(*r, rng, 4);
    CHECK(u * v == v * u);
    CHECK((u * v) * w == u * (v * w));
    CHECK(u * (v + w) == u * v + u * w);
    CHECK(u * r->one() == u);
  }
}

TEST_CASE("largest-first reduction agrees with random-order rewriting") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform(rng, 1, 5);
    const auto m = gen::matrix(rng, n, 3);
    auto r = Ring::make(m);
    const auto t = oracle::from(m);
    const auto u = random_element(*r, rng, 3);
    const auto v = random_element(*r, rng, 3);
    const auto expected = oracle::reduce_random(t, oracle::multiply(to_poly(u), to_poly(v)), rng);
    CHECK(to_poly(u * v) == expected);
  }
}

TEST_CASE("products respect the grading") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform(rng, 2, 5);
    auto r = Ring::make(gen::matrix(rng, n, 2));
    const int du = gen::uniform(rng, 0, n);
    const int dv = gen::uniform(rng, 0, n);
    const auto u = random_element(*r, rng, 4).homogeneous_part(du);
    const auto v = random_element(*r, rng, 4).homogeneous_part(dv);
    const auto p = u * v;
    CHECK(p.is_homogeneous());
    for (const auto& [mono, c] : p.terms()) CHECK(mono.degree() == du + dv);
  }
}

TEST_CASE("top class and the defining relations") {
  gen::Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform(rng, 1, 6);
    auto r = Ring::make(gen::matrix(rng, n, 3));
    RingElement top = r->one();
    for (int i = 1; i <= n; ++i) top = top * r->x(i);
    REQUIRE(top.terms().size() == 1);
    CHECK(top.terms().begin()->second == 1);
    CHECK(top.terms().begin()->first.degree() == n);
    for (int j = 1; j <= n; ++j) CHECK(r->x(j) * r->x(j) == r->alpha(j) * r->x(j));
  }
}

TEST_CASE("degree_four_product agrees with the generic reducer") {
  gen::Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform(rng, 2, 5);
    const auto m = gen::matrix(rng, n, 3);
    auto r = Ring::make(m);
    DegreeTwoClass u(n), v(n);
    for (int i = 1; i <= n; ++i) {
      u[i] = gen::uniform(rng, -5, 5);
      v[i] = gen::uniform(rng, -5, 5);
    }
    const auto fast = degree_four_product(m, u, v);
    const auto slow = r->embed(u) * r->embed(v);
    const auto basis = r->basis(2);
    for (std::size_t k = 0; k < basis.size(); ++k) CHECK(fast[k] == slow.coefficient(basis[k]));
  }
}

TEST_CASE("coefficients beyond 64 bits stay exact") {
  const Integer huge("123456789012345678901234567890");
  const auto m = BottMatrix::from_columns({{huge}});
  auto r = Ring::make(m);
  CHECK((r->x(2) * r->x(2)).coefficient(Monomial::of({1, 2})) == huge);
  CHECK(BottMatrix::from_json(m.to_json()) == m);
}

#include <doctest.h>

#include "bott/error.hpp"
#include "bott/fixtures.hpp"
#include "bott/invariants.hpp"
#include "bott/isomorphism.hpp"
#include "bott/moves.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bott;

namespace {

DegreeTwoClass cls(std::vector<Integer> c) { return DegreeTwoClass(std::move(c)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const BottError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InternalInvariantViolation;
}

Integer max_entry(const IntMatrix& p) {
  Integer m = 0;
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) m = std::max<Integer>(m, abs(p.at(r, c)));
  }
  return m;
}

// A partner for m: either a random move image or an unrelated matrix.
BottMatrix partner(gen::Rng& rng, const BottMatrix& m, int c) {
  if (gen::uniform(rng, 0, 1) == 0) return gen::matrix(rng, m.n(), c);
  BottMatrix cur = m;
  for (int s = gen::uniform(rng, 1, 4); s > 0; --s) {
    auto spec = gen::move(rng, cur, 1);
    if (!spec) break;
    cur = apply_move(cur, *spec).matrix;
  }
  return cur;
}

const BottMatrix kM3 = BottMatrix::from_columns({{1}, {0, 1}});

}  // namespace

TEST_CASE("iso_check examples") {
  CHECK(iso_check(IsoCandidate::identity(fixtures::m_star())));
  const auto phis = paper_automorphisms(fixtures::m_star());
  REQUIRE(phis.size() == 4);
  // phi_1: x_3 -> 2y_4 - y_3 + alpha_3 = 2y_4 + y_3 with alpha_3 = 2y_2
  CHECK(phis[0].image(3) == cls({0, 2, -1, 2}));
  CHECK(iso_check(phis[0]));

  IsoCandidate naive{BottMatrix::hirzebruch(0), BottMatrix::hirzebruch(1), IntMatrix::identity(2), false};
  CHECK_FALSE(iso_check(naive));
  IsoCandidate singular{BottMatrix::zero(2), BottMatrix::zero(2), IntMatrix::from_columns({cls({1, 0}), cls({1, 0})}),
                        false};
  CHECK_FALSE(iso_check(singular));
  IsoCandidate mismatch{BottMatrix::zero(2), BottMatrix::zero(3), IntMatrix::identity(2), false};
  CHECK(code_of([&] { iso_check(mismatch); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("is_stable examples") {
  const auto id = certify(IsoCandidate::identity(fixtures::m_star()), "identity");
  for (int k = 1; k <= 4; ++k) CHECK(is_stable(id, k));
  const auto phis = paper_automorphisms(fixtures::m_star());
  CHECK_FALSE(is_stable(phis[0], 3));
  CHECK(is_stable(phis[0], 2));
  IsoCandidate raw = IsoCandidate::identity(kM3);
  raw.verified = false;
  CHECK(code_of([&] { is_stable(raw, 1); }) == ErrorCode::Unverified);
}

TEST_CASE("qtrivial_search examples") {
  CHECK(qtrivial_search(BottMatrix::hirzebruch(0), BottMatrix::hirzebruch(1)).status == IsoStatus::NonIso);
  const auto v13 = qtrivial_search(BottMatrix::hirzebruch(1), BottMatrix::hirzebruch(3));
  REQUIRE(v13.status == IsoStatus::Iso);
  CHECK(iso_check(*v13.certificate));

  const auto autos = qtrivial_isomorphisms(BottMatrix::hirzebruch(0), BottMatrix::hirzebruch(0));
  CHECK(autos.size() == 8);
  const auto t0 = oracle::from(BottMatrix::hirzebruch(0));
  CHECK(oracle::unimodular_isos(t0, t0, 2, 0) == 8);

  CHECK(code_of([] { qtrivial_search(kM3, kM3); }) == ErrorCode::NotQTrivial);
}

TEST_CASE("bounded_search examples") {
  const auto sep = bounded_search(BottMatrix::hirzebruch(0), BottMatrix::hirzebruch(1), 3);
  CHECK(sep.status == IsoStatus::NonIso);
  CHECK(sep.reason == "spanIndex");
  CHECK(sep.witness.at("field") == "spanIndex");

  const auto self = bounded_search(fixtures::m_star(), fixtures::m_star(), 3);
  REQUIRE(self.status == IsoStatus::Iso);
  CHECK(iso_check(*self.certificate));

  // twisted far away from kM3 by a bundle change with a large u
  const auto far = bundle_change(kM3, 2, cls({10, 0, 0}));
  CHECK(far.matrix == BottMatrix::from_columns({{-19}, {10, 1}}));
  const auto small = bounded_search(kM3, far.matrix, 3);
  CHECK(small.status == IsoStatus::Unknown);
  CHECK(small.bound == 3);
  const auto full = exhaustive_search(kM3, far.matrix);
  REQUIRE(full.status == IsoStatus::Iso);
  CHECK(iso_check(*full.certificate));
  CHECK(are_isomorphic(kM3, far.matrix, 3, false).status == IsoStatus::Unknown);
  CHECK(are_isomorphic(kM3, far.matrix, 3).status == IsoStatus::Iso);

  CHECK(code_of([] { bounded_search(BottMatrix::zero(2), BottMatrix::zero(3), 1); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("exceptional automorphisms of the four-stage fixture") {
  const auto phis = paper_automorphisms(fixtures::m_star());
  REQUIRE(phis.size() == 4);
  for (const auto& phi : phis) CHECK(iso_check(phi));
  CHECK(phis[2].image(3) == cls({0, 0, 1, -2}));
  CHECK(phis[2].image(4) == cls({0, 0, 0, -1}));
  const auto wrong = fixtures::m_star().with_entry(3, 4, 2);
  CHECK(code_of([&] { paper_automorphisms(wrong); }) == ErrorCode::WrongShape);
}

TEST_CASE("classify_iso_n4 examples") {
  const auto q = certify(IsoCandidate::identity(BottMatrix::from_columns({{1}, {0, 0}, {2, 0, 0}})), "identity");
  CHECK(classify_iso_n4(q).kind == CaseKind::QTrivial);

  for (const auto& phi : paper_automorphisms(fixtures::m_star())) {
    const auto tag = classify_iso_n4(phi);
    CHECK(tag.kind == CaseKind::Case3Exceptional);
    CHECK(tag.label() == "CASE3_EXCEPTIONAL");
  }

  const auto id = certify(IsoCandidate::identity(fixtures::m_star()), "identity");
  CHECK(classify_iso_n4(id).kind == CaseKind::Case1);

  // t = 3: alpha_4 squares to nonzero, the first three do not
  const auto t3 = BottMatrix::from_columns({{0}, {0, 0}, {1, 1, 0}});
  REQUIRE(square_vanishing_set(t3).t() == 3);
  const auto tag3 = classify_iso_n4(certify(IsoCandidate::identity(t3), "identity"));
  CHECK(tag3.kind == CaseKind::Stable);
  CHECK(tag3.stable_level == 3);

  const auto c2 = fixtures::case2_instance(1, cls({1, 1, 0, 0}), 1, 0);
  const auto tag2 = classify_iso_n4(c2);
  REQUIRE(tag2.kind == CaseKind::Case2);
  CHECK(tag2.b % 2 == 0);
  REQUIRE(tag2.residual);
  CHECK(is_stable(*tag2.residual, 3));

  const auto n3 = certify(IsoCandidate::identity(kM3), "identity");
  CHECK(code_of([&] { classify_iso_n4(n3); }) == ErrorCode::WrongStage);
  const auto unordered = certify(IsoCandidate::identity(BottMatrix::from_columns({{1}, {0, 1}, {1, 0, 0}})), "id");
  CHECK(code_of([&] { classify_iso_n4(unordered); }) == ErrorCode::NotWellOrdered);
}

TEST_CASE("are_isomorphic examples") {
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      const auto v = are_isomorphic(BottMatrix::hirzebruch(a), BottMatrix::hirzebruch(b), 3);
      CHECK((v.status == IsoStatus::Iso) == ((a - b) % 2 == 0));
      if (v.status == IsoStatus::Iso) CHECK(v.diffeomorphic);
    }
  }
  const auto no = are_isomorphic(BottMatrix::hirzebruch(0), BottMatrix::hirzebruch(1), 3);
  CHECK(no.status == IsoStatus::NonIso);
  CHECK(no.to_json().at("status") == "NON_ISO");

  const auto moved = bundle_change(fixtures::m_star(), 2, cls({1, 0, 0, 0}));
  CHECK(moved.matrix == BottMatrix::from_columns({{-1}, {2, 2}, {-1, -1, 1}}));
  const auto v = are_isomorphic(fixtures::m_star(), moved.matrix, 3);
  REQUIRE(v.status == IsoStatus::Iso);
  CHECK(v.certificate->source == fixtures::m_star());
  CHECK(v.certificate->target == moved.matrix);
  // found map and move map differ by an automorphism of the source
  const auto loop = compose(inverse(moved.move.iso), *v.certificate);
  CHECK(iso_check(loop));
}

TEST_CASE("found isomorphisms are sound, t-stable and symmetric") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen::uniform(rng, 2, 4);
    const auto a = gen::matrix(rng, n, 2);
    const auto b = partner(rng, a, 2);
    const auto ab = are_isomorphic(a, b, 2);
    const auto ba = are_isomorphic(b, a, 2);
    CHECK(ab.status == ba.status);
    CHECK(ab.status != IsoStatus::Unknown);
    if (ab.status != IsoStatus::Iso) continue;
    const auto reread = IsoCandidate::from_json(nlohmann::json::parse(ab.certificate->to_json().dump()));
    CHECK(iso_check(reread));
    CHECK(iso_check(inverse(*ab.certificate)));
    CHECK(iso_check(compose(*ba.certificate, *ab.certificate)));

    const auto wa = well_ordered(a);
    const auto wb = well_ordered(b);
    const int t = square_vanishing_set(wa).t();
    for (const auto& c : all_isomorphisms(wa, wb)) CHECK(is_stable(c, t));
  }
}

TEST_CASE("exhaustive search agrees with brute force") {
  gen::Rng rng(42);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = gen::uniform(rng, 2, 3);
    const auto a = gen::matrix(rng, n, 1);
    const auto b = partner(rng, a, 1);
    const auto isos = all_isomorphisms(a, b);
    for (const auto& c : isos) CHECK(iso_check(c));
    std::size_t small = 0;
    for (const auto& c : isos) small += max_entry(c.p) <= 4 ? 1 : 0;
    CHECK(oracle::unimodular_isos(oracle::from(a), oracle::from(b), 4, 0) == small);
    const auto bounded = bounded_search(well_ordered(a), well_ordered(b), 2);
    if (bounded.status == IsoStatus::Iso) CHECK_FALSE(isos.empty());
  }
}

TEST_CASE("composition closure") {
  gen::Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform(rng, 2, 4);
    BottMatrix m = gen::matrix(rng, n, 2);
    IsoCandidate acc = certify(IsoCandidate::identity(m), "identity");
    for (int s = 0; s < 4; ++s) {
      auto spec = gen::move(rng, m, 1);
      if (!spec) break;
      auto r = apply_move(m, *spec);
      acc = compose(r.move.iso, acc);
      CHECK(acc.verified);
      CHECK(iso_check(acc));
      m = r.matrix;
    }
    CHECK(iso_check(inverse(acc)));
  }
}

TEST_CASE("quotient towers") {
  const auto m = fixtures::m_star();
  CHECK(quotient_tower(m, 2) == BottMatrix::hirzebruch(1));
  CHECK(quotient_tower(m, 0) == m);
  CHECK(quotient_tower(m, 3) == BottMatrix());
  CHECK_THROWS_AS(quotient_tower(m, 4), BottError);
}

#include <doctest.h>

#include "bott/error.hpp"
#include "bott/fixtures.hpp"
#include "bott/invariants.hpp"
#include "bott/iso_candidate.hpp"
#include "bott/moves.hpp"
#include "generators.hpp"

using namespace bott;

namespace {

DegreeTwoClass cls(std::vector<Integer> c) { return DegreeTwoClass(std::move(c)); }

const BottMatrix kM4 = BottMatrix::from_columns({{1}, {0, 1}, {1, 0, 0}});

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const BottError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InternalInvariantViolation;
}

}  // namespace

TEST_CASE("stage_swap examples") {
  for (int n = 2; n <= 4; ++n) {
    for (int j = 1; j < n; ++j) {
      const auto r = stage_swap(BottMatrix::zero(n), j);
      CHECK(r.matrix == BottMatrix::zero(n));
      CHECK(r.move.iso.p.column(j - 1) == DegreeTwoClass::basis(n, j + 1));
      CHECK(r.move.iso.p.column(j) == DegreeTwoClass::basis(n, j));
    }
  }
  const auto r = stage_swap(kM4, 3);
  CHECK(r.matrix == BottMatrix::from_columns({{1}, {1, 0}, {0, 1, 0}}));
  CHECK(is_well_ordered(r.matrix));
  CHECK(code_of([] { stage_swap(BottMatrix::hirzebruch(1), 1); }) == ErrorCode::SwapObstructed);
  CHECK(code_of([] { stage_swap(kM4, 4); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("bundle_change examples") {
  for (int a = -5; a <= 5; ++a) {
    for (int k = -3; k <= 3; ++k) {
      const auto r = bundle_change(BottMatrix::hirzebruch(a), 2, cls({k, 0}));
      CHECK(r.matrix == BottMatrix::hirzebruch(a - 2 * k));
      CHECK(iso_check(r.move.iso));
    }
  }
  // u = alpha_j negates column j when alpha_j^2 = 0
  const auto m = BottMatrix::from_columns({{2}, {1, 0}, {0, 1, 3}});
  const auto flip = bundle_change(m, 3, m.alpha(3));
  CHECK(flip.matrix.alpha(3) == -m.alpha(3));

  CHECK(code_of([&] { bundle_change(m, 2, cls({0, 1, 0, 0})); }) == ErrorCode::BadSupport);
  CHECK(code_of([] { bundle_change(BottMatrix::from_columns({{1}, {0, 1}}), 3, cls({1, 0, 0})); }) ==
        ErrorCode::ObstructionNonzero);
}

TEST_CASE("bundle change at stage 4 by (b/2) y_3 frees stages 3 and 4") {
  const auto target = fixtures::case2_instance(1, cls({1, 1, 0, 0}), 2, 0).target;
  const Integer b = target.entry(3, 4);
  REQUIRE(b == -4);
  const auto u = cls({0, 0, b / 2, 0});
  REQUIRE(can_bundle_change(target, 4, u));
  const auto r = bundle_change(target, 4, u);
  CHECK(is_zero(r.matrix.entry(3, 4)));
  CHECK(can_swap(r.matrix, 3));
}

TEST_CASE("well_order examples") {
  CHECK(well_order(BottMatrix::zero(4)).steps.empty());
  CHECK(well_order(BottMatrix::from_columns({{1}, {0, 1}})).steps.empty());
  const auto t = well_order(kM4);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].spec == MoveSpec{MoveKind::StageSwap, 3, {}});
  CHECK(is_well_ordered(t.end));
}

TEST_CASE("move_closure examples") {
  const auto c5 = move_closure(BottMatrix::hirzebruch(5), 5, 3, 10000);
  CHECK(c5.contains(BottMatrix::hirzebruch(1)));
  CHECK(c5.contains(BottMatrix::hirzebruch(3)));
  CHECK(c5.contains(BottMatrix::hirzebruch(-5)));
  CHECK_FALSE(c5.contains(BottMatrix::hirzebruch(0)));
  CHECK_FALSE(c5.saturated);

  const auto c0 = move_closure(BottMatrix::zero(2), 4, 2, 10000);
  for (const auto& m : c0.members()) CHECK(m.entry(1, 2) % 2 == 0);
  CHECK(c0.contains(BottMatrix::hirzebruch(2)));
  CHECK(c0.contains(BottMatrix::hirzebruch(-4)));

  const auto c1 = move_closure(BottMatrix(), 3, 3, 100);
  CHECK(c1.members() == std::vector<BottMatrix>{BottMatrix()});

  const auto capped = move_closure(BottMatrix::zero(3), 3, 1, 5);
  CHECK(capped.saturated);
  CHECK(capped.nodes.size() <= 5);

  for (const auto& m : c5.members()) {
    const auto trace = c5.trace_to(m);
    CHECK(trace.end == m);
    CHECK(iso_check(trace.isomorphism()));
  }
}

TEST_CASE("stage_swap is an involution") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform(rng, 2, 5);
    const auto m = gen::matrix(rng, n, 3);
    for (int j = 1; j < n; ++j) {
      if (!can_swap(m, j)) continue;
      const auto once = stage_swap(m, j);
      CHECK(iso_check(once.move.iso));
      CHECK(stage_swap(once.matrix, j).matrix == m);
    }
  }
}

TEST_CASE("bundle_change by u then -u returns to the start") {
  gen::Rng rng(32);
  int tested = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen::uniform(rng, 2, 4);
    const auto m = gen::matrix(rng, n, 2);
    const int j = gen::uniform(rng, 2, n);
    const auto us = gen::admissible_us(m, j, 2);
    if (us.empty()) continue;
    const auto& u = us[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(us.size()) - 1))];
    const auto there = bundle_change(m, j, u);
    const auto back = bundle_change(there.matrix, j, -u);
    CHECK(back.matrix == m);
    const auto loop = compose(back.move.iso, there.move.iso);
    CHECK(loop.p == IntMatrix::identity(n));
    ++tested;
  }
  CHECK(tested > 100);
}

TEST_CASE("traces serialise, replay and reject tampering") {
  gen::Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform(rng, 2, 4);
    MoveTrace trace(gen::matrix(rng, n, 2));
    for (int step = 0; step < 5; ++step) {
      const auto spec = gen::move(rng, trace.end, 1);
      if (!spec) break;
      trace.push(apply_move(trace.end, *spec));
    }
    const auto j = trace.to_json();
    const auto outcome = replay(j);
    REQUIRE(outcome.ok);
    CHECK(outcome.trace->end == trace.end);
    CHECK(iso_check(trace.isomorphism()));
    CHECK(fingerprint(trace.start) == fingerprint(trace.end));

    if (!trace.steps.empty()) {
      auto bad_end = j;
      bad_end["end"] = BottMatrix::zero(n).to_json();
      if (BottMatrix::zero(n) != trace.end) CHECK_FALSE(replay(bad_end).ok);
    }
  }
  // a swap whose precondition fails mid-trace
  nlohmann::json broken = {{"start", BottMatrix::hirzebruch(1).to_json()},
                           {"steps", nlohmann::json::array({{{"kind", "stage_swap"}, {"j", 1}}})},
                           {"end", BottMatrix::hirzebruch(1).to_json()}};
  const auto r = replay(broken);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.detail.empty());
}

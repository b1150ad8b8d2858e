#include "bott/fixtures.hpp"

#include "bott/error.hpp"
#include "bott/moves.hpp"

namespace bott::fixtures {

BottMatrix m_star() { return BottMatrix::from_columns({{1}, {0, 2}, {0, -1, 1}}); }

BottMatrix split_pair(const Integer& a, const DegreeTwoClass& v, const Integer& k) {
  if (v.n() != 4 || v.top_index() > 2) throw BottError(ErrorCode::BadSupport, "v must lie in span(x_1, x_2)");
  return BottMatrix::from_columns({{a}, {k * v[1], k * v[2]}, {v[1], v[2], 0}});
}

IsoCandidate case2_instance(const Integer& a, const DegreeTwoClass& v, const Integer& k, const Integer& m) {
  MoveTrace trace(split_pair(a, v, k));
  trace.push(stage_swap(trace.end, 3));
  DegreeTwoClass u3(4);
  u3[3] = k;
  trace.push(bundle_change(trace.end, 4, u3));
  if (!is_zero(m)) {
    DegreeTwoClass u1(4);
    u1[1] = m;
    trace.push(bundle_change(trace.end, 2, u1));
  }
  return trace.isomorphism();
}

}  // namespace bott::fixtures

#pragma once

#include "bott/bott_matrix.hpp"
#include "bott/iso_candidate.hpp"

namespace bott::fixtures {

// Four-stage tower with A^1_2 = 1, A^2_3 = 2, A^2_4 = -1, A^3_4 = 1 and all
// other entries zero.  Its last twist is x_3 - alpha_3 / 2, so it carries
// the four exceptional automorphisms.
BottMatrix m_star();

// Four-stage tower over Sigma_a with alpha_3 = k v, alpha_4 = v and
// A^3_4 = 0, for v in span(x_1, x_2).  Well-ordered with t = 2 whenever
// v^2 != 0 and k != 0.
BottMatrix split_pair(const Integer& a, const DegreeTwoClass& v, const Integer& k);

// A verified isomorphism out of split_pair(a, v, k) whose image of x_3 has
// y_4-coefficient 1: swap stages 3 and 4, bundle-change stage 4 by k y_3,
// then bundle-change stage 2 by m y_1.  The target has B^3_4 = -2k.
IsoCandidate case2_instance(const Integer& a, const DegreeTwoClass& v, const Integer& k, const Integer& m);

}  // namespace bott::fixtures

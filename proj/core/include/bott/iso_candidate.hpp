#pragma once

#include <nlohmann/json.hpp>

#include "bott/bott_matrix.hpp"
#include "bott/linalg.hpp"

namespace bott {

// A proposed graded ring map phi: H*(source) -> H*(target), determined by its
// action on H^2.  Column j-1 of p holds phi(x_j) in the target basis y_1..y_n.
struct IsoCandidate {
  BottMatrix source;
  BottMatrix target;
  IntMatrix p;
  bool verified = false;

  static IsoCandidate identity(const BottMatrix& m);

  int n() const { return source.n(); }
  DegreeTwoClass image(int j) const { return p.column(j - 1); }
  DegreeTwoClass apply(const DegreeTwoClass& v) const { return bott::apply(p, v); }

  // {"source": ..., "target": ..., "P": rows}.  The verified flag is never
  // serialised; decoded candidates must be checked again.
  nlohmann::json to_json() const;
  static IsoCandidate from_json(const nlohmann::json& j);
};

// True iff |det P| = 1 and phi(x_j)^2 = phi(alpha_j) phi(x_j) in the target
// ring for every j.
bool iso_check(const IsoCandidate& c);

// Returns c with the verified flag set, or throws InternalInvariantViolation.
IsoCandidate certify(IsoCandidate c, const char* what);

// P maps span(x_1..x_k) onto span(y_1..y_k).
bool is_stable(const IsoCandidate& c, int k);

// second o first; endpoints must match.
IsoCandidate compose(const IsoCandidate& second, const IsoCandidate& first);
IsoCandidate inverse(const IsoCandidate& c);

}  // namespace bott

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bott/bott_matrix.hpp"
#include "bott/iso_candidate.hpp"
#include "bott/moves.hpp"

namespace bott {

enum class IsoStatus { Iso, NonIso, Unknown };

std::string_view to_string(IsoStatus s);

struct IsoVerdict {
  IsoStatus status = IsoStatus::Unknown;
  std::optional<IsoCandidate> certificate;  // Iso: verified map source -> target
  // NonIso: a fingerprint field name, or "exhausted-complete-family" when the
  // complete Q-trivial or exhaustive search ran dry.
  std::string reason;
  nlohmann::json witness;     // NonIso: the two fingerprints, when they differ
  int bound = 0;              // Unknown: the exhausted coefficient bound
  bool diffeomorphic = false;  // Iso with n <= 4

  nlohmann::json to_json() const;
};

inline constexpr const char* kExhaustedCompleteFamily = "exhausted-complete-family";

// Complete decision for Q-trivial pairs: every isomorphism permutes X up to
// sign, and X spans H^2 rationally.
IsoVerdict qtrivial_search(const BottMatrix& a, const BottMatrix& b);
// All isomorphisms a -> b between Q-trivial rings.
std::vector<IsoCandidate> qtrivial_isomorphisms(const BottMatrix& a, const BottMatrix& b);

// Backtracking over P with entries in [-coeff_bound, coeff_bound].
IsoVerdict bounded_search(const BottMatrix& a, const BottMatrix& b, int coeff_bound);

// Every isomorphism a -> b, or the first `limit` of them when limit > 0.
// Complete: an isomorphism is t-stable, so it induces an isomorphism of the
// quotient towers on stages t+1..n (enumerated recursively), the leading
// block is fixed by a signed bijection of X, and the remaining lower parts
// are forced linearly by the relations.
std::vector<IsoCandidate> all_isomorphisms(const BottMatrix& a, const BottMatrix& b, std::size_t limit = 0);
// Complete decision via all_isomorphisms: Iso or NonIso, never Unknown.
IsoVerdict exhaustive_search(const BottMatrix& a, const BottMatrix& b);

// Full pipeline: well-order, compare fingerprints, then search.  Non-Q-trivial
// pairs go to exhaustive_search, or to bounded_search when `exhaustive` is off.
IsoVerdict are_isomorphic(const BottMatrix& a, const BottMatrix& b, int coeff_bound, bool exhaustive = true);

// Stages first+1..n of m as a tower of height n - first.
BottMatrix quotient_tower(const BottMatrix& m, int first);

enum class CaseKind { QTrivial, Stable, Case1, Case2, Case3Exceptional };

std::string_view to_string(CaseKind k);

struct CaseTag {
  CaseKind kind = CaseKind::QTrivial;
  int stable_level = 0;  // Stable(k)
  Integer b;             // Case2: B^3_4
  // Case1/Case2: moves on the target and the resulting 3-stable map
  std::optional<MoveTrace> reduction;
  std::optional<IsoCandidate> residual;

  std::string label() const;
  nlohmann::json to_json() const;
};

// Which branch of the four-stage rigidity argument c falls under.
CaseTag classify_iso_n4(const IsoCandidate& c);

// The four exceptional automorphisms of a four-stage tower whose last
// twist is x_3 - alpha_3 / 2.
std::vector<IsoCandidate> paper_automorphisms(const BottMatrix& m);

}  // namespace bott

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bott/bott_matrix.hpp"
#include "bott/integer.hpp"

namespace bott {

// X(B_n): the primitive square-zero degree-two classes, one per stage j with
// alpha_j^2 = 0, each with its first nonzero coefficient positive.
struct SquareVanishingSet {
  std::vector<DegreeTwoClass> elements;
  std::vector<int> stages;  // stage j that produced elements[k]

  int t() const { return static_cast<int>(elements.size()); }
};

// Isomorphism invariants of H*(B_n).  Equal fingerprints are necessary for
// isomorphism, not sufficient.
struct Fingerprint {
  int n = 0;
  int t = 0;
  Integer span_index;  // index of span(X) in H^2; 0 when not of full rank
  std::vector<Integer> product_divisors;
  std::uint64_t mod2_square_zero_count = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  // Name of the first differing field, in declaration order.
  static std::optional<std::string> first_difference(const Fingerprint& a, const Fingerprint& b);

  // Canonical object with sorted keys.
  nlohmann::json to_json() const;
  static Fingerprint from_json(const nlohmann::json& j);
  std::string canonical() const { return to_json().dump(); }
  // 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

bool square_is_zero(const BottMatrix& m, const DegreeTwoClass& z);
bool alpha_square_zero(const BottMatrix& m, int j);

SquareVanishingSet square_vanishing_set(const BottMatrix& m);
bool is_q_trivial(const BottMatrix& m);
bool is_well_ordered(const BottMatrix& m);
Fingerprint fingerprint(const BottMatrix& m);

}  // namespace bott

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bott/bott_matrix.hpp"
#include "bott/iso_candidate.hpp"

namespace bott {

enum class MoveKind { StageSwap, BundleChange };

std::string_view to_string(MoveKind kind);

// A rewrite of a Bott tower presentation, without its certificate.
struct MoveSpec {
  MoveKind kind = MoveKind::StageSwap;
  int j = 1;
  DegreeTwoClass u;  // bundle changes only

  nlohmann::json to_json() const;
  static MoveSpec from_json(const nlohmann::json& j);
  friend bool operator==(const MoveSpec&, const MoveSpec&) = default;
};

// A certified rewrite.  iso maps H*(source) -> H*(target) and has passed
// iso_check.
struct Move {
  MoveSpec spec;
  IsoCandidate iso;
};

struct MoveResult {
  BottMatrix matrix;
  Move move;
};

// Interchanges stages j and j+1; requires A^j_{j+1} = 0.
MoveResult stage_swap(const BottMatrix& m, int j);

// Replaces alpha_j by alpha_j - 2u, where u lives below stage j and
// u(u - alpha_j) = 0, and re-expresses later twists through x_j -> x_j - u.
MoveResult bundle_change(const BottMatrix& m, int j, const DegreeTwoClass& u);

MoveResult apply_move(const BottMatrix& m, const MoveSpec& spec);

// Precondition checks without building the certificate.
bool can_swap(const BottMatrix& m, int j);
bool can_bundle_change(const BottMatrix& m, int j, const DegreeTwoClass& u);
// Target matrix only; callers must have checked the precondition.
BottMatrix swapped(const BottMatrix& m, int j);
BottMatrix bundle_changed(const BottMatrix& m, int j, const DegreeTwoClass& u);

struct MoveTrace {
  BottMatrix start;
  std::vector<Move> steps;
  BottMatrix end;

  explicit MoveTrace(BottMatrix m) : start(m), end(std::move(m)) {}

  void push(MoveResult r);
  // Composite of the per-step isomorphisms, start -> end.
  IsoCandidate isomorphism() const;

  nlohmann::json to_json() const;
  // Replays every step from "start", re-checking preconditions and
  // certificates, and requires the result to equal "end".
  static MoveTrace from_json(const nlohmann::json& j);
};

struct ReplayOutcome {
  bool ok = false;
  std::string detail;
  std::optional<MoveTrace> trace;
};
ReplayOutcome replay(const nlohmann::json& trace_json);

// Bubble-sorts square-zero stages to the front.
MoveTrace well_order(const BottMatrix& m);
BottMatrix well_ordered(const BottMatrix& m);

struct MoveClosure {
  struct Link {
    std::optional<BottMatrix> parent;
    std::optional<MoveSpec> move;  // parent -> this
  };

  BottMatrix root;
  std::map<BottMatrix, Link> nodes;
  bool saturated = false;

  bool contains(const BottMatrix& m) const { return nodes.count(m) != 0; }
  std::vector<BottMatrix> members() const;
  // Certified path root -> m along the search tree.
  MoveTrace trace_to(const BottMatrix& m) const;
};

// Breadth-first closure under stage swaps and bundle changes with
// |u_i| <= u_bound, dropping matrices with an entry above entry_bound.
// Stops (saturated = true) once node_cap matrices are held.
MoveClosure move_closure(const BottMatrix& m, const Integer& entry_bound, int u_bound, std::size_t node_cap);

}  // namespace bott

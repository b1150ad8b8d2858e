#include "bott/moves.hpp"

#include <algorithm>

#include "bott/error.hpp"
#include "bott/invariants.hpp"
#include "bott/ring.hpp"

namespace bott {

std::string_view to_string(MoveKind kind) {
  return kind == MoveKind::StageSwap ? "stage_swap" : "bundle_change";
}

nlohmann::json MoveSpec::to_json() const {
  nlohmann::json out = {{"kind", std::string(to_string(kind))}, {"j", j}};
  if (kind == MoveKind::BundleChange) out["u"] = u.to_json();
  return out;
}

MoveSpec MoveSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("j") || !j.at("j").is_number_integer()) {
    throw BottError(ErrorCode::ParseError, "move step needs \"kind\" and integer \"j\"");
  }
  MoveSpec s;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "stage_swap") {
    s.kind = MoveKind::StageSwap;
  } else if (kind == "bundle_change") {
    s.kind = MoveKind::BundleChange;
    if (!j.contains("u")) throw BottError(ErrorCode::ParseError, "bundle_change step needs \"u\"");
    s.u = DegreeTwoClass::from_json(j.at("u"));
  } else {
    throw BottError(ErrorCode::ParseError, "unknown move kind \"" + kind + "\"");
  }
  s.j = j.at("j").get<int>();
  return s;
}

bool can_swap(const BottMatrix& m, int j) { return j >= 1 && j < m.n() && is_zero(m.entry(j, j + 1)); }

BottMatrix swapped(const BottMatrix& m, int j) {
  const int n = m.n();
  std::vector<MatrixEntry> entries;
  auto from = [&](int i, int k) -> const Integer& { return m.entry(i, k); };
  for (int k = 2; k <= n; ++k) {
    for (int i = 1; i < k; ++i) {
      int si = i, sk = k;
      if (k == j) {
        sk = j + 1;
      } else if (k == j + 1) {
        if (i == j) continue;  // stays zero
        sk = j;
      } else if (k > j + 1) {
        if (i == j) si = j + 1;
        else if (i == j + 1) si = j;
      }
      entries.push_back({i, k, from(si, sk)});
    }
  }
  return BottMatrix::validate(n, entries);
}

MoveResult stage_swap(const BottMatrix& m, int j) {
  if (j < 1 || j >= m.n()) {
    throw BottError(ErrorCode::IndexOutOfRange, "swap index " + std::to_string(j) + " outside 1.." + std::to_string(m.n() - 1));
  }
  if (!can_swap(m, j)) {
    throw BottError(ErrorCode::SwapObstructed, "A^" + std::to_string(j) + "_" + std::to_string(j + 1) + " = " +
                                                   m.entry(j, j + 1).get_str() + " is nonzero");
  }
  BottMatrix target = swapped(m, j);
  IntMatrix p = IntMatrix::identity(m.n());
  p.at(j - 1, j - 1) = 0;
  p.at(j, j) = 0;
  p.at(j, j - 1) = 1;
  p.at(j - 1, j) = 1;
  IsoCandidate iso = certify(IsoCandidate{m, target, std::move(p), false}, "stage_swap");
  return {target, Move{MoveSpec{MoveKind::StageSwap, j, {}}, std::move(iso)}};
}

namespace {

void check_bundle_args(const BottMatrix& m, int j, const DegreeTwoClass& u) {
  if (j < 1 || j > m.n()) {
    throw BottError(ErrorCode::IndexOutOfRange, "stage " + std::to_string(j) + " outside 1.." + std::to_string(m.n()));
  }
  if (u.n() != m.n()) {
    throw BottError(ErrorCode::DimensionMismatch, "u has " + std::to_string(u.n()) + " coefficients, expected " +
                                                      std::to_string(m.n()));
  }
  if (u.top_index() >= j) {
    throw BottError(ErrorCode::BadSupport, "u = " + u.to_string() + " must involve only x_i with i < " + std::to_string(j));
  }
}

bool obstruction_vanishes(const BottMatrix& m, int j, const DegreeTwoClass& u) {
  return all_zero(degree_four_product(m, u, u - m.alpha(j)));
}

}  // namespace

bool can_bundle_change(const BottMatrix& m, int j, const DegreeTwoClass& u) {
  if (j < 1 || j > m.n() || u.n() != m.n() || u.top_index() >= j) return false;
  return obstruction_vanishes(m, j, u);
}

BottMatrix bundle_changed(const BottMatrix& m, int j, const DegreeTwoClass& u) {
  const int n = m.n();
  std::vector<MatrixEntry> entries;
  for (int k = 2; k <= n; ++k) {
    for (int i = 1; i < k; ++i) {
      Integer v = m.entry(i, k);
      if (k == j) {
        v -= 2 * u[i];
      } else if (k > j && i < j) {
        v += m.entry(j, k) * u[i];
      }
      entries.push_back({i, k, std::move(v)});
    }
  }
  return BottMatrix::validate(n, entries);
}

MoveResult bundle_change(const BottMatrix& m, int j, const DegreeTwoClass& u) {
  check_bundle_args(m, j, u);
  if (!obstruction_vanishes(m, j, u)) {
    throw BottError(ErrorCode::ObstructionNonzero,
                    "u(u - alpha_" + std::to_string(j) + ") != 0 for u = " + u.to_string());
  }
  BottMatrix target = bundle_changed(m, j, u);
  // x_j -> y_j + u, identity elsewhere
  IntMatrix p = IntMatrix::identity(m.n());
  for (int i = 1; i < j; ++i) p.at(i - 1, j - 1) = u[i];
  IsoCandidate iso = certify(IsoCandidate{m, target, std::move(p), false}, "bundle_change");
  return {target, Move{MoveSpec{MoveKind::BundleChange, j, u}, std::move(iso)}};
}

MoveResult apply_move(const BottMatrix& m, const MoveSpec& spec) {
  return spec.kind == MoveKind::StageSwap ? stage_swap(m, spec.j) : bundle_change(m, spec.j, spec.u);
}

void MoveTrace::push(MoveResult r) {
  if (r.move.iso.source != end) invariant_violation("move does not start at the end of the trace");
  end = std::move(r.matrix);
  steps.push_back(std::move(r.move));
}

IsoCandidate MoveTrace::isomorphism() const {
  IsoCandidate acc = IsoCandidate::identity(start);
  for (const auto& step : steps) acc = compose(step.iso, acc);
  return acc;
}

nlohmann::json MoveTrace::to_json() const {
  auto s = nlohmann::json::array();
  for (const auto& step : steps) s.push_back(step.spec.to_json());
  return {{"start", start.to_json()}, {"steps", std::move(s)}, {"end", end.to_json()}};
}

MoveTrace MoveTrace::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("start") || !j.contains("steps") || !j.contains("end") ||
      !j.at("steps").is_array()) {
    throw BottError(ErrorCode::ParseError, "trace needs \"start\", \"steps\" and \"end\"");
  }
  MoveTrace trace(BottMatrix::from_json(j.at("start")));
  for (const auto& step : j.at("steps")) trace.push(apply_move(trace.end, MoveSpec::from_json(step)));
  const BottMatrix claimed = BottMatrix::from_json(j.at("end"));
  if (claimed != trace.end) {
    throw BottError(ErrorCode::CorruptReport, "replay ends at " + trace.end.key() + ", trace claims " + claimed.key());
  }
  return trace;
}

ReplayOutcome replay(const nlohmann::json& trace_json) {
  try {
    MoveTrace trace = MoveTrace::from_json(trace_json);
    if (!trace.isomorphism().verified) return {false, "composite isomorphism fails iso_check", std::nullopt};
    return {true, "ok", std::move(trace)};
  } catch (const BottError& e) {
    return {false, e.what(), std::nullopt};
  }
}

MoveTrace well_order(const BottMatrix& m) {
  MoveTrace trace(m);
  std::vector<bool> zero;
  for (int j = 1; j <= m.n(); ++j) zero.push_back(alpha_square_zero(m, j));
  for (;;) {
    int j = 1;
    while (j < m.n() && !(!zero[static_cast<std::size_t>(j - 1)] && zero[static_cast<std::size_t>(j)])) ++j;
    if (j >= m.n()) break;
    if (!can_swap(trace.end, j)) {
      invariant_violation("alpha_" + std::to_string(j + 1) + " squares to zero but A^" + std::to_string(j) + "_" +
                          std::to_string(j + 1) + " != 0 in " + trace.end.key());
    }
    trace.push(stage_swap(trace.end, j));
    std::swap(zero[static_cast<std::size_t>(j - 1)], zero[static_cast<std::size_t>(j)]);
  }
  return trace;
}

BottMatrix well_ordered(const BottMatrix& m) {
  // swaps only; no certificate needed here
  BottMatrix cur = m;
  std::vector<bool> zero;
  for (int j = 1; j <= m.n(); ++j) zero.push_back(alpha_square_zero(m, j));
  for (;;) {
    int j = 1;
    while (j < m.n() && !(!zero[static_cast<std::size_t>(j - 1)] && zero[static_cast<std::size_t>(j)])) ++j;
    if (j >= m.n()) break;
    if (!can_swap(cur, j)) invariant_violation("well-ordering blocked at stage " + std::to_string(j));
    cur = swapped(cur, j);
    std::swap(zero[static_cast<std::size_t>(j - 1)], zero[static_cast<std::size_t>(j)]);
  }
  return cur;
}

std::vector<BottMatrix> MoveClosure::members() const {
  std::vector<BottMatrix> out;
  out.reserve(nodes.size());
  for (const auto& [m, link] : nodes) out.push_back(m);
  return out;
}

MoveTrace MoveClosure::trace_to(const BottMatrix& m) const {
  std::vector<MoveSpec> path;
  const BottMatrix* cur = &m;
  for (;;) {
    auto it = nodes.find(*cur);
    if (it == nodes.end()) throw BottError(ErrorCode::IndexOutOfRange, "matrix not in closure: " + m.key());
    if (!it->second.parent) break;
    path.push_back(*it->second.move);
    cur = &*it->second.parent;
  }
  MoveTrace trace(root);
  for (auto it = path.rbegin(); it != path.rend(); ++it) trace.push(apply_move(trace.end, *it));
  return trace;
}

namespace {

bool within(const BottMatrix& m, const Integer& bound) {
  return std::all_of(m.flat().begin(), m.flat().end(), [&](const Integer& v) { return abs(v) <= bound; });
}

// All u in [-bound, bound]^(j-1) x 0^(n-j+1), u != 0, lexicographic.
std::vector<DegreeTwoClass> bounded_supports(int n, int j, int bound) {
  std::vector<DegreeTwoClass> out;
  if (j < 2 || bound < 1) return out;
  std::vector<int> digits(static_cast<std::size_t>(j - 1), -bound);
  for (;;) {
    DegreeTwoClass u(n);
    bool nonzero = false;
    for (int i = 1; i < j; ++i) {
      u[i] = digits[static_cast<std::size_t>(i - 1)];
      nonzero = nonzero || digits[static_cast<std::size_t>(i - 1)] != 0;
    }
    if (nonzero) out.push_back(std::move(u));
    int pos = j - 2;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == bound) {
      digits[static_cast<std::size_t>(pos)] = -bound;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace

MoveClosure move_closure(const BottMatrix& m, const Integer& entry_bound, int u_bound, std::size_t node_cap) {
  MoveClosure closure{m, {}, false};
  closure.nodes.emplace(m, MoveClosure::Link{});

  const int n = m.n();
  std::vector<std::vector<DegreeTwoClass>> supports(static_cast<std::size_t>(n + 1));
  for (int j = 2; j <= n; ++j) supports[static_cast<std::size_t>(j)] = bounded_supports(n, j, u_bound);

  std::vector<BottMatrix> frontier{m};
  while (!frontier.empty() && !closure.saturated) {
    std::vector<BottMatrix> next;
    for (const auto& node : frontier) {
      auto visit = [&](BottMatrix nb, MoveSpec spec) {
        if (!within(nb, entry_bound) || closure.nodes.count(nb)) return;
        if (closure.nodes.size() >= node_cap) {
          closure.saturated = true;
          return;
        }
        closure.nodes.emplace(nb, MoveClosure::Link{node, std::move(spec)});
        next.push_back(std::move(nb));
      };
      for (int j = 1; j < n && !closure.saturated; ++j) {
        if (can_swap(node, j)) visit(swapped(node, j), MoveSpec{MoveKind::StageSwap, j, {}});
      }
      for (int j = 2; j <= n && !closure.saturated; ++j) {
        const DegreeTwoClass beta = node.alpha(j);
        for (const auto& u : supports[static_cast<std::size_t>(j)]) {
          if (closure.saturated) break;
          if (!all_zero(degree_four_product(node, u, u - beta))) continue;
          visit(bundle_changed(node, j, u), MoveSpec{MoveKind::BundleChange, j, u});
        }
      }
      if (closure.saturated) break;
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return closure;
}

}  // namespace bott

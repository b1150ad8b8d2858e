#include "bott/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "bott/error.hpp"
#include "bott/invariants.hpp"
#include "bott/ring.hpp"

namespace bott {

std::string_view to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::Iso: return "ISO";
    case IsoStatus::NonIso: return "NON_ISO";
    case IsoStatus::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string_view to_string(CaseKind k) {
  switch (k) {
    case CaseKind::QTrivial: return "Q_TRIVIAL";
    case CaseKind::Stable: return "STABLE";
    case CaseKind::Case1: return "CASE1";
    case CaseKind::Case2: return "CASE2";
    case CaseKind::Case3Exceptional: return "CASE3_EXCEPTIONAL";
  }
  return "?";
}

nlohmann::json IsoVerdict::to_json() const {
  nlohmann::json out = {{"status", std::string(to_string(status))}};
  switch (status) {
    case IsoStatus::Iso:
      out["certificate"] = certificate->to_json();
      out["diffeomorphic"] = diffeomorphic;
      break;
    case IsoStatus::NonIso:
      out["reason"] = reason;
      if (!witness.is_null()) out["witness"] = witness;
      break;
    case IsoStatus::Unknown:
      out["bound"] = bound;
      break;
  }
  return out;
}

namespace {

// Relation j of the candidate: phi(x_j)^2 - phi(alpha_j) phi(x_j) = 0 in
// the target, using only columns 1..j of p.
bool relation_holds(const BottMatrix& source, const BottMatrix& target, const IntMatrix& p, int j) {
  const DegreeTwoClass image = p.column(j - 1);
  DegreeTwoClass twist(target.n());
  for (int i = 1; i < j; ++i) {
    const Integer& a = source.entry(i, j);
    if (is_zero(a)) continue;
    for (int r = 0; r < target.n(); ++r) twist.coeffs[static_cast<std::size_t>(r)] += a * p.at(r, i - 1);
  }
  return all_zero(degree_four_product(target, image, image - twist));
}

bool entries_within(const IntMatrix& m, int bound) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (abs(m.at(r, c)) > bound) return false;
    }
  }
  return true;
}

// Enumerates the leading t columns of P forced by signed bijections
// X(a) -> X(b).  Both matrices must be well-ordered with the same t.  The
// callback receives an n x n matrix whose first t columns are filled, with
// relations 1..t already checked; it returns true to stop.
bool for_each_x_matching(const BottMatrix& a, const BottMatrix& b, int t, std::optional<int> bound,
                         const std::function<bool(const IntMatrix&)>& visit) {
  const int n = a.n();
  const auto xa = square_vanishing_set(a);
  const auto xb = square_vanishing_set(b);
  if (xa.t() != t || xb.t() != t) invariant_violation("X size disagrees with t");

  IntMatrix za(t, t);
  for (int c = 0; c < t; ++c) {
    for (int r = 0; r < t; ++r) za.at(r, c) = xa.elements[static_cast<std::size_t>(c)].coeffs[static_cast<std::size_t>(r)];
  }

  std::vector<int> perm(static_cast<std::size_t>(t));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned signs = 0; signs < (1U << t); ++signs) {
      IntMatrix images(t, t);
      for (int c = 0; c < t; ++c) {
        const auto& w = xb.elements[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])];
        const bool neg = (signs >> c) & 1U;
        for (int r = 0; r < t; ++r) {
          const Integer& v = w.coeffs[static_cast<std::size_t>(r)];
          images.at(r, c) = neg ? Integer(-v) : v;
        }
      }
      auto lead = divide_right(images, za);
      if (!lead) continue;
      if (abs(determinant(*lead)) != 1) continue;
      if (bound && !entries_within(*lead, *bound)) continue;
      IntMatrix p(n, n);
      for (int r = 0; r < t; ++r) {
        for (int c = 0; c < t; ++c) p.at(r, c) = lead->at(r, c);
      }
      bool ok = true;
      for (int j = 1; j <= t && ok; ++j) ok = relation_holds(a, b, p, j);
      if (!ok) continue;
      if (visit(p)) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

IsoCandidate conjugate_back(const MoveTrace& ta, const IsoCandidate& inner, const MoveTrace& tb) {
  // a -> a' -> b' -> b
  IsoCandidate out = compose(inverse(tb.isomorphism()), compose(inner, ta.isomorphism()));
  if (!out.verified) invariant_violation("conjugated certificate fails iso_check");
  return out;
}

std::optional<IsoVerdict> fingerprint_separation(const BottMatrix& a, const BottMatrix& b) {
  const Fingerprint fa = fingerprint(a);
  const Fingerprint fb = fingerprint(b);
  if (auto field = Fingerprint::first_difference(fa, fb)) {
    IsoVerdict v;
    v.status = IsoStatus::NonIso;
    v.reason = *field;
    v.witness = {{"field", *field}, {"source", fa.to_json()}, {"target", fb.to_json()}};
    return v;
  }
  return std::nullopt;
}

void require_same_n(const BottMatrix& a, const BottMatrix& b) {
  if (a.n() != b.n()) {
    throw BottError(ErrorCode::DimensionMismatch,
                    "stage counts differ: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  }
}

IsoVerdict iso_verdict(IsoCandidate c) {
  IsoVerdict v;
  v.status = IsoStatus::Iso;
  v.diffeomorphic = c.n() <= 4;
  v.certificate = std::move(c);
  return v;
}

std::optional<IsoCandidate> search_well_ordered(const BottMatrix& a, const BottMatrix& b, int bound) {
  const int n = a.n();
  const int t = square_vanishing_set(a).t();
  if (square_vanishing_set(b).t() != t) return std::nullopt;

  std::optional<IsoCandidate> found;
  const int width = 2 * bound + 1;
  std::size_t per_column = 1;
  for (int i = 0; i < n; ++i) per_column *= static_cast<std::size_t>(width);

  std::function<bool(IntMatrix&, int)> extend = [&](IntMatrix& p, int j) -> bool {
    if (j > n) {
      IsoCandidate c{a, b, p, false};
      if (!iso_check(c)) return false;
      c.verified = true;
      found = std::move(c);
      return true;
    }
    for (std::size_t code = 0; code < per_column; ++code) {
      std::size_t rest = code;
      for (int r = n - 1; r >= 0; --r) {
        p.at(r, j - 1) = static_cast<long>(rest % static_cast<std::size_t>(width)) - bound;
        rest /= static_cast<std::size_t>(width);
      }
      if (p.column(j - 1).is_zero()) continue;
      if (!relation_holds(a, b, p, j)) continue;
      if (extend(p, j + 1)) return true;
    }
    for (int r = 0; r < n; ++r) p.at(r, j - 1) = 0;
    return false;
  };

  for_each_x_matching(a, b, t, bound, [&](const IntMatrix& lead) {
    IntMatrix p = lead;
    return extend(p, t + 1);
  });
  return found;
}

}  // namespace

std::vector<IsoCandidate> qtrivial_isomorphisms(const BottMatrix& a, const BottMatrix& b) {
  require_same_n(a, b);
  if (!is_q_trivial(a) || !is_q_trivial(b)) {
    throw BottError(ErrorCode::NotQTrivial, "qtrivial search needs two Q-trivial matrices");
  }
  std::vector<IsoCandidate> out;
  for_each_x_matching(a, b, a.n(), std::nullopt, [&](const IntMatrix& p) {
    IsoCandidate c{a, b, p, false};
    if (iso_check(c)) {
      c.verified = true;
      out.push_back(std::move(c));
    }
    return false;
  });
  return out;
}

IsoVerdict qtrivial_search(const BottMatrix& a, const BottMatrix& b) {
  require_same_n(a, b);
  if (!is_q_trivial(a) || !is_q_trivial(b)) {
    throw BottError(ErrorCode::NotQTrivial, "qtrivial search needs two Q-trivial matrices");
  }
  std::optional<IsoCandidate> found;
  for_each_x_matching(a, b, a.n(), std::nullopt, [&](const IntMatrix& p) {
    IsoCandidate c{a, b, p, false};
    if (!iso_check(c)) return false;
    c.verified = true;
    found = std::move(c);
    return true;
  });
  if (found) return iso_verdict(std::move(*found));
  IsoVerdict v;
  v.status = IsoStatus::NonIso;
  v.reason = kExhaustedCompleteFamily;
  return v;
}

IsoVerdict bounded_search(const BottMatrix& a, const BottMatrix& b, int coeff_bound) {
  require_same_n(a, b);
  if (auto sep = fingerprint_separation(a, b)) return *sep;
  const MoveTrace ta = well_order(a);
  const MoveTrace tb = well_order(b);
  if (auto inner = search_well_ordered(ta.end, tb.end, coeff_bound)) {
    return iso_verdict(conjugate_back(ta, *inner, tb));
  }
  IsoVerdict v;
  v.status = IsoStatus::Unknown;
  v.bound = coeff_bound;
  return v;
}

BottMatrix quotient_tower(const BottMatrix& m, int first) {
  const int n = m.n();
  if (first < 0 || first >= n) throw BottError(ErrorCode::IndexOutOfRange, "quotient must keep at least one stage");
  std::vector<MatrixEntry> entries;
  for (int j = first + 2; j <= n; ++j) {
    for (int i = first + 1; i < j; ++i) entries.push_back({i - first, j - first, m.entry(i, j)});
  }
  return BottMatrix::validate(n - first, entries);
}

namespace {

std::vector<IntMatrix> lifted_isomorphisms(const BottMatrix& a, const BottMatrix& b, std::size_t limit);

// All isomorphisms between arbitrary towers, as matrices a -> b.
std::vector<IntMatrix> general_isomorphisms(const BottMatrix& a, const BottMatrix& b, std::size_t limit) {
  if (a.n() != b.n() || fingerprint(a) != fingerprint(b)) return {};
  const MoveTrace ta = well_order(a);
  const MoveTrace tb = well_order(b);
  std::vector<IntMatrix> inner = lifted_isomorphisms(ta.end, tb.end, limit);
  if (ta.steps.empty() && tb.steps.empty()) return inner;
  const IntMatrix into = ta.isomorphism().p;
  const IntMatrix back = *inverse_unimodular(tb.isomorphism().p);
  for (auto& p : inner) p = back * p * into;
  return inner;
}

// Forces the y_1..y_t part of column j from the relation for x_j, given the
// upper part already in p and all earlier columns complete.
bool solve_lower_part(const BottMatrix& a, const BottMatrix& b, IntMatrix& p, int t, int j) {
  const int n = a.n();
  DegreeTwoClass twist(n);
  for (int i = 1; i < j; ++i) {
    const Integer& coef = a.entry(i, j);
    if (is_zero(coef)) continue;
    for (int r = 0; r < n; ++r) twist.coeffs[static_cast<std::size_t>(r)] += coef * p.at(r, i - 1);
  }
  DegreeTwoClass q = p.column(j - 1);
  for (int r = 0; r < t; ++r) q.coeffs[static_cast<std::size_t>(r)] = 0;

  // mixed component y_i y_k (i <= t < k) is known + (2 q_k - twist_k) w_i
  int k = 0;
  Integer scale;
  for (int kk = t + 1; kk <= n; ++kk) {
    scale = 2 * q[kk] - twist[kk];
    if (!is_zero(scale)) {
      k = kk;
      break;
    }
  }
  if (k == 0) invariant_violation("lower part of a lifted column is not determined by its relation");
  const std::vector<Integer> known = degree_four_product(b, q, q - twist);
  for (int i = 1; i <= t; ++i) {
    const Integer& rhs = known[static_cast<std::size_t>(pair_index(i, k))];
    if (!mpz_divisible_p(rhs.get_mpz_t(), scale.get_mpz_t())) return false;
    p.at(i - 1, j - 1) = -rhs / scale;
  }
  return relation_holds(a, b, p, j);
}

// Both towers well-ordered.
std::vector<IntMatrix> lifted_isomorphisms(const BottMatrix& a, const BottMatrix& b, std::size_t limit) {
  const int n = a.n();
  const int t = square_vanishing_set(a).t();
  std::vector<IntMatrix> out;
  if (square_vanishing_set(b).t() != t) return out;

  if (t == n) {
    for_each_x_matching(a, b, t, std::nullopt, [&](const IntMatrix& p) {
      if (!iso_check(IsoCandidate{a, b, p, false})) return false;
      out.push_back(p);
      return limit > 0 && out.size() >= limit;
    });
    return out;
  }

  const std::vector<IntMatrix> quotient = general_isomorphisms(quotient_tower(a, t), quotient_tower(b, t), 0);
  if (quotient.empty()) return out;

  for_each_x_matching(a, b, t, std::nullopt, [&](const IntMatrix& lead) {
    for (const auto& q : quotient) {
      IntMatrix p = lead;
      for (int r = 0; r < n - t; ++r) {
        for (int c = 0; c < n - t; ++c) p.at(t + r, t + c) = q.at(r, c);
      }
      bool ok = true;
      for (int j = t + 1; j <= n && ok; ++j) ok = solve_lower_part(a, b, p, t, j);
      if (!ok || !iso_check(IsoCandidate{a, b, p, false})) continue;
      out.push_back(std::move(p));
      if (limit > 0 && out.size() >= limit) return true;
    }
    return false;
  });
  return out;
}

}  // namespace

std::vector<IsoCandidate> all_isomorphisms(const BottMatrix& a, const BottMatrix& b, std::size_t limit) {
  require_same_n(a, b);
  std::vector<IsoCandidate> out;
  for (auto& p : general_isomorphisms(a, b, limit)) {
    out.push_back(certify(IsoCandidate{a, b, std::move(p), false}, "lifted isomorphism"));
  }
  return out;
}

namespace {

IsoVerdict exhaustive_verdict(const BottMatrix& a, const BottMatrix& b, std::vector<IntMatrix> found) {
  if (!found.empty()) return iso_verdict(certify(IsoCandidate{a, b, std::move(found.front()), false}, "lifted isomorphism"));
  IsoVerdict v;
  v.status = IsoStatus::NonIso;
  v.reason = kExhaustedCompleteFamily;
  return v;
}

}  // namespace

IsoVerdict exhaustive_search(const BottMatrix& a, const BottMatrix& b) {
  require_same_n(a, b);
  if (auto sep = fingerprint_separation(a, b)) return *sep;
  return exhaustive_verdict(a, b, general_isomorphisms(a, b, 1));
}


std::string CaseTag::label() const {
  std::string s(to_string(kind));
  if (kind == CaseKind::Stable) s += "(" + std::to_string(stable_level) + ")";
  if (kind == CaseKind::Case2) s += "(" + b.get_str() + ")";
  return s;
}

nlohmann::json CaseTag::to_json() const {
  nlohmann::json out = {{"case", std::string(to_string(kind))}};
  if (kind == CaseKind::Stable) out["k"] = stable_level;
  if (kind == CaseKind::Case2) out["b"] = integer_to_json(b);
  if (reduction) out["reduction"] = reduction->to_json();
  if (residual) out["residual"] = residual->to_json();
  return out;
}

CaseTag classify_iso_n4(const IsoCandidate& c) {
  if (!c.verified) throw BottError(ErrorCode::Unverified, "classify_iso_n4 needs a verified candidate");
  if (c.n() != 4 || c.target.n() != 4) {
    throw BottError(ErrorCode::WrongStage, "classify_iso_n4 needs four stages, got " + std::to_string(c.n()));
  }
  if (!is_well_ordered(c.source) || !is_well_ordered(c.target)) {
    throw BottError(ErrorCode::NotWellOrdered, "source and target must be well-ordered");
  }
  CaseTag tag;
  const int t = square_vanishing_set(c.source).t();
  if (t == 4) {
    tag.kind = CaseKind::QTrivial;
    return tag;
  }
  if (t == 3) {
    if (!is_stable(c, 3)) invariant_violation("isomorphism with t = 3 is not 3-stable");
    tag.kind = CaseKind::Stable;
    tag.stable_level = 3;
    return tag;
  }
  if (t != 2 || !is_stable(c, 2)) invariant_violation("four-stage isomorphism with t = " + std::to_string(t) + " is not t-stable");

  // phi(x_3) = c3 y_3 + c4 y_4 + w
  const Integer& c3 = c.p.at(2, 2);
  const Integer& c4 = c.p.at(3, 2);
  const Integer& a34 = c.source.entry(3, 4);
  const Integer& b34 = c.target.entry(3, 4);
  const auto unmatched = [&]() {
    return BottError(ErrorCode::UnmatchedForm, "phi(x_3) = " + c.image(3).to_string() + " with A^3_4 = " + a34.get_str() +
                                                   ", B^3_4 = " + b34.get_str() + " fits no case");
  };

  if (is_zero(c4)) {
    if (abs(c3) != 1) throw unmatched();
    tag.kind = CaseKind::Case1;
    tag.reduction = MoveTrace(c.target);
    tag.residual = c;
    if (!is_stable(c, 3)) invariant_violation("CASE1 map is not 3-stable");
    return tag;
  }

  if (abs(c4) == 1) {
    // eps (y_4 - b/2 y_3) + w, b even, A^3_4 of the same parity
    if (mpz_odd_p(b34.get_mpz_t()) || mpz_odd_p(a34.get_mpz_t())) throw unmatched();
    Integer half_b = b34 / 2;
    if (c3 != -c4 * half_b) throw unmatched();
    tag.kind = CaseKind::Case2;
    tag.b = b34;
    MoveTrace trace(c.target);
    if (!is_zero(b34)) {
      DegreeTwoClass u(4);
      u[3] = half_b;
      trace.push(bundle_change(trace.end, 4, u));
    }
    trace.push(stage_swap(trace.end, 3));
    IsoCandidate residual = compose(trace.isomorphism(), c);
    if (!residual.verified || !is_stable(residual, 3)) invariant_violation("CASE2 residual is not 3-stable");
    tag.reduction = std::move(trace);
    tag.residual = std::move(residual);
    return tag;
  }

  if (abs(c4) == 2) {
    // eps (2 y_4 - b y_3) + w with |A^3_4| = |B^3_4| = 1
    if (abs(a34) != 1 || abs(b34) != 1) throw unmatched();
    if (c3 != -(c4 / 2) * b34) throw unmatched();
    tag.kind = CaseKind::Case3Exceptional;
    return tag;
  }
  throw unmatched();
}

std::vector<IsoCandidate> paper_automorphisms(const BottMatrix& m) {
  if (m.n() != 4) throw BottError(ErrorCode::WrongShape, "needs a four-stage tower");
  const auto even = [](const Integer& v) { return mpz_even_p(v.get_mpz_t()) != 0; };
  const Integer& a13 = m.entry(1, 3);
  const Integer& a23 = m.entry(2, 3);
  if (m.entry(3, 4) != 1 || !even(a13) || !even(a23) || m.entry(1, 4) != -a13 / 2 || m.entry(2, 4) != -a23 / 2) {
    throw BottError(ErrorCode::WrongShape, "last twist of " + m.key() + " is not x_3 - alpha_3/2 with alpha_3 even");
  }
  const DegreeTwoClass alpha3 = m.alpha(3);
  DegreeTwoClass half = alpha3;
  for (auto& v : half.coeffs) v /= 2;
  const auto e = [](int i) { return DegreeTwoClass::basis(4, i); };

  const std::vector<std::pair<DegreeTwoClass, DegreeTwoClass>> images = {
      {Integer(2) * e(4) - e(3) + alpha3, e(4)},
      {Integer(2) * e(4) - e(3) + alpha3, e(4) - e(3) + half},
      {e(3) - Integer(2) * e(4), -e(4)},
      {e(3) - Integer(2) * e(4), e(3) - e(4) - half},
  };
  std::vector<IsoCandidate> out;
  for (const auto& [x3, x4] : images) {
    IntMatrix p = IntMatrix::from_columns({e(1), e(2), x3, x4});
    out.push_back(certify(IsoCandidate{m, m, std::move(p), false}, "exceptional automorphism"));
  }
  return out;
}

IsoVerdict are_isomorphic(const BottMatrix& a, const BottMatrix& b, int coeff_bound, bool exhaustive) {
  require_same_n(a, b);
  const MoveTrace ta = well_order(a);
  const MoveTrace tb = well_order(b);
  if (auto sep = fingerprint_separation(ta.end, tb.end)) return *sep;
  IsoVerdict v;
  if (is_q_trivial(ta.end) && is_q_trivial(tb.end)) {
    v = qtrivial_search(ta.end, tb.end);
  } else if (exhaustive) {
    v = exhaustive_verdict(ta.end, tb.end, lifted_isomorphisms(ta.end, tb.end, 1));
  } else {
    v = bounded_search(ta.end, tb.end, coeff_bound);
  }
  if (v.status == IsoStatus::Iso) v.certificate = conjugate_back(ta, *v.certificate, tb);
  return v;
}

}  // namespace bott

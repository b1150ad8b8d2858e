#include "bott/iso_candidate.hpp"

#include "bott/error.hpp"
#include "bott/ring.hpp"

namespace bott {

IsoCandidate IsoCandidate::identity(const BottMatrix& m) {
  return certify(IsoCandidate{m, m, IntMatrix::identity(m.n()), false}, "identity");
}

nlohmann::json IsoCandidate::to_json() const {
  return {{"source", source.to_json()}, {"target", target.to_json()}, {"P", p.to_json()}};
}

IsoCandidate IsoCandidate::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("P")) {
    throw BottError(ErrorCode::ParseError, "candidate needs \"source\", \"target\" and \"P\"");
  }
  IsoCandidate c{BottMatrix::from_json(j.at("source")), BottMatrix::from_json(j.at("target")),
                 IntMatrix::from_json(j.at("P")), false};
  return c;
}

bool iso_check(const IsoCandidate& c) {
  const int n = c.source.n();
  if (c.target.n() != n) {
    throw BottError(ErrorCode::DimensionMismatch, "source has " + std::to_string(n) + " stages, target has " +
                                                      std::to_string(c.target.n()));
  }
  if (c.p.rows() != n || c.p.cols() != n) {
    throw BottError(ErrorCode::DimensionMismatch, "P must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (abs(determinant(c.p)) != 1) return false;
  for (int j = 1; j <= n; ++j) {
    const DegreeTwoClass image = c.image(j);
    const DegreeTwoClass twist = c.apply(c.source.alpha(j));
    if (!all_zero(degree_four_product(c.target, image, image - twist))) return false;
  }
  return true;
}

IsoCandidate certify(IsoCandidate c, const char* what) {
  if (!iso_check(c)) invariant_violation(std::string(what) + ": induced map fails iso_check");
  c.verified = true;
  return c;
}

bool is_stable(const IsoCandidate& c, int k) {
  if (!c.verified) throw BottError(ErrorCode::Unverified, "is_stable needs a verified candidate");
  const int n = c.n();
  if (k < 0 || k > n) throw BottError(ErrorCode::IndexOutOfRange, "stability level outside 0..n");
  for (int col = 0; col < k; ++col) {
    for (int row = k; row < n; ++row) {
      if (!is_zero(c.p.at(row, col))) return false;
    }
  }
  IntMatrix lead(k, k);
  for (int r = 0; r < k; ++r) {
    for (int col = 0; col < k; ++col) lead.at(r, col) = c.p.at(r, col);
  }
  return abs(determinant(lead)) == 1;
}

IsoCandidate compose(const IsoCandidate& second, const IsoCandidate& first) {
  if (first.target != second.source) {
    throw BottError(ErrorCode::DimensionMismatch, "composition endpoints do not match");
  }
  IsoCandidate c{first.source, second.target, second.p * first.p, false};
  c.verified = iso_check(c);
  return c;
}

IsoCandidate inverse(const IsoCandidate& c) {
  auto inv = inverse_unimodular(c.p);
  if (!inv) throw BottError(ErrorCode::Unverified, "candidate is not unimodular");
  IsoCandidate r{c.target, c.source, std::move(*inv), false};
  r.verified = iso_check(r);
  return r;
}

}  // namespace bott

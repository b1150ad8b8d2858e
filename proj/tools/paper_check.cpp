#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "bott/error.hpp"
#include "bott/fixtures.hpp"
#include "bott/invariants.hpp"
#include "bott/isomorphism.hpp"
#include "bott/moves.hpp"
#include "cli.hpp"

namespace bott::cli {

namespace {

struct Fixture {
  std::string name;
  std::function<std::string()> run;  // empty string = pass, else the failure
};

std::string hirzebruch_parity() {
  for (int a = -5; a <= 5; ++a) {
    for (int b = -5; b <= 5; ++b) {
      const auto v = are_isomorphic(BottMatrix::hirzebruch(a), BottMatrix::hirzebruch(b), 3);
      const bool same = (a - b) % 2 == 0;
      if ((v.status == IsoStatus::Iso) != same) {
        return "Sigma_" + std::to_string(a) + " vs Sigma_" + std::to_string(b) + " gave " + std::string(to_string(v.status));
      }
      if (same) {
        DegreeTwoClass u(2);
        u[1] = (a - b) / 2;
        if (bundle_change(BottMatrix::hirzebruch(a), 2, u).matrix != BottMatrix::hirzebruch(b)) {
          return "bundle change does not carry Sigma_" + std::to_string(a) + " to Sigma_" + std::to_string(b);
        }
      } else if (v.reason != "spanIndex") {
        return "separation of Sigma_" + std::to_string(a) + ", Sigma_" + std::to_string(b) + " used " + v.reason;
      }
    }
  }
  return {};
}

std::string automorphisms_well_defined() {
  const auto phis = paper_automorphisms(fixtures::m_star());
  if (phis.size() != 4) return "expected four automorphisms";
  for (std::size_t k = 0; k < phis.size(); ++k) {
    if (!iso_check(phis[k])) return "phi_" + std::to_string(k + 1) + " fails iso_check";
  }
  return {};
}

std::string automorphisms_case3() {
  const auto phis = paper_automorphisms(fixtures::m_star());
  for (std::size_t k = 0; k < phis.size(); ++k) {
    const CaseTag tag = classify_iso_n4(phis[k]);
    if (tag.kind != CaseKind::Case3Exceptional) return "phi_" + std::to_string(k + 1) + " classified " + tag.label();
  }
  return {};
}

std::string phi3_listing() {
  const auto phi3 = paper_automorphisms(fixtures::m_star())[2];
  DegreeTwoClass x3(4), x4(4);
  x3[3] = 1;
  x3[4] = -2;
  x4[4] = -1;
  if (phi3.image(3) != x3) return "phi_3(x_3) = " + phi3.image(3).to_string();
  if (phi3.image(4) != x4) return "phi_3(x_4) = " + phi3.image(4).to_string();
  return {};
}

std::string case2_reduction() {
  DegreeTwoClass v(4);
  v[1] = 1;
  v[2] = 1;
  for (int k : {1, 2, -1}) {
    const IsoCandidate c = fixtures::case2_instance(0, v, k, 1);
    const CaseTag tag = classify_iso_n4(c);
    if (tag.kind != CaseKind::Case2) return "constructed instance classified " + tag.label();
    if (!tag.residual || !is_stable(*tag.residual, 3)) return "residual is not 3-stable";
  }
  return {};
}

std::string sigma0_sigma1() {
  const auto v = are_isomorphic(BottMatrix::hirzebruch(0), BottMatrix::hirzebruch(1), 3);
  if (v.status != IsoStatus::NonIso) return "verdict " + std::string(to_string(v.status));
  if (v.reason != "spanIndex") return "separated by " + v.reason;
  return {};
}

std::string m_star_shape() {
  const BottMatrix m = fixtures::m_star();
  if (!is_well_ordered(m)) return "M* is not well-ordered";
  if (square_vanishing_set(m).t() != 2) return "t(M*) != 2";
  return {};
}

}  // namespace

int paper_check(std::ostream& out) {
  const std::vector<Fixture> fixtures = {
      {"hirzebruch-parity", hirzebruch_parity},
      {"sigma0-vs-sigma1", sigma0_sigma1},
      {"mstar-shape", m_star_shape},
      {"phi-well-defined", automorphisms_well_defined},
      {"phi-case3", automorphisms_case3},
      {"phi3-listing", phi3_listing},
      {"case2-reduction", case2_reduction},
  };
  int failures = 0;
  for (const auto& f : fixtures) {
    std::string why;
    try {
      why = f.run();
    } catch (const std::exception& e) {
      why = e.what();
    }
    out << (why.empty() ? "PASS  " : "FAIL  ") << std::left << std::setw(20) << f.name;
    if (!why.empty()) {
      out << "  " << why;
      ++failures;
    }
    out << '\n';
  }
  out << (failures == 0 ? "all fixtures pass" : std::to_string(failures) + " fixture(s) failed") << '\n';
  return failures == 0 ? kOk : kFalse;
}

}  // namespace bott::cli

#include <doctest.h>

#include <sstream>

#include "bott/census.hpp"
#include "bott/error.hpp"
#include "bott/invariants.hpp"
#include "bott/iso_candidate.hpp"
#include "bott/moves.hpp"

using namespace bott;
using nlohmann::json;

namespace {

CensusConfig config(int n, int c) {
  CensusConfig cfg;
  cfg.n = n;
  cfg.entry_bound = c;
  return cfg;
}

std::vector<json> lines_of(const std::string& jsonl) {
  std::vector<json> out;
  std::istringstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

std::string join(const std::vector<json>& lines) {
  std::string out;
  for (const auto& l : lines) out += l.dump() + "\n";
  return out;
}

bool verifies(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return verify_report(in);
}

// The certificate's isomorphism, oriented from its "from" end.
IsoCandidate cert_iso(const json& cert) {
  if (cert.at("kind") == "trace") return MoveTrace::from_json(cert.at("trace")).isomorphism();
  return certify(IsoCandidate::from_json(cert.at("candidate")), "certificate");
}

}  // namespace

TEST_CASE("enumeration counts") {
  CHECK(enumerate(config(2, 1)).size() == 3);
  CHECK(enumerate(config(3, 1)).size() == 27);
  CHECK(enumerate(config(1, 1)).size() == 1);
  CHECK(enumerate(config(3, 2)).size() == 125);
  for (const auto& m : enumerate(config(4, 1))) CHECK(is_well_ordered(m));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(0, 1).validate(), BottError);
  CHECK_THROWS_AS(config(5, 1).validate(), BottError);
  CHECK_THROWS_AS(config(3, 0).validate(), BottError);
  CHECK(CensusConfig::from_json(config(3, 2).to_json()).to_json() == config(3, 2).to_json());
}

TEST_CASE("small censuses") {
  CHECK(classify(config(1, 1)).classes.size() == 1);
  for (int c = 1; c <= 4; ++c) {
    const auto r = classify(config(2, c));
    REQUIRE(r.classes.size() == 2);
    CHECK(r.unresolved.empty());
    for (const auto& cls : r.classes) {
      const Integer parity = abs(cls.rep.entry(1, 2)) % 2;
      for (const auto& m : cls.members) CHECK(abs(m.entry(1, 2)) % 2 == parity);
    }
  }
}

TEST_CASE("three-stage census is stable under a larger search bound") {
  auto cfg = config(3, 1);
  const auto base = classify(cfg);
  CHECK(base.unresolved.empty());
  cfg.coeff_bound = 5;
  const auto wide = classify(cfg);
  CHECK(wide.classes.size() == base.classes.size());
  CHECK(wide.unresolved.empty());
}

TEST_CASE("bounded-only censuses report what they cannot separate") {
  auto cfg = config(3, 1);
  cfg.exhaustive = false;
  const auto r = classify(cfg);
  CHECK_FALSE(r.unresolved.empty());
  CHECK(r.classes.size() >= classify(config(3, 1)).classes.size());
  CHECK(verifies(r.to_jsonl()));
}

TEST_CASE("reports are byte-identical across worker counts") {
  auto cfg = config(3, 1);
  const auto one = classify(cfg).to_jsonl();
  cfg.workers = 3;
  CHECK(classify(cfg).to_jsonl() == one);
  cfg.workers = 8;
  CHECK(classify(cfg).to_csv() == classify(config(3, 1)).to_csv());
}

TEST_CASE("raising bounds never splits a class") {
  const auto base = classify(config(3, 1));
  auto cfg = config(3, 1);
  cfg.u_bound = 2;
  cfg.coeff_bound = 5;
  const auto wide = classify(cfg);
  std::map<BottMatrix, std::size_t> wide_class;
  for (std::size_t k = 0; k < wide.classes.size(); ++k) {
    for (const auto& m : wide.classes[k].members) wide_class[m] = k;
  }
  for (const auto& cls : base.classes) {
    for (const auto& m : cls.members) CHECK(wide_class.at(m) == wide_class.at(cls.rep));
  }
}

TEST_CASE("certificates compose along chains inside a class") {
  const auto report = classify(config(3, 1));
  for (const auto& cls : report.classes) {
    // isomorphism rep -> m for every member reached so far
    std::map<BottMatrix, IsoCandidate> reach;
    reach.emplace(cls.rep, certify(IsoCandidate::identity(cls.rep), "identity"));
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& cert : cls.certs) {
        const auto c = cert_iso(cert);
        if (reach.count(c.source) && !reach.count(c.target)) {
          reach.emplace(c.target, compose(c, reach.at(c.source)));
          grew = true;
        } else if (reach.count(c.target) && !reach.count(c.source)) {
          reach.emplace(c.source, compose(inverse(c), reach.at(c.target)));
          grew = true;
        }
      }
    }
    CHECK(reach.size() == cls.members.size());
    for (const auto& [m, iso] : reach) {
      CHECK(iso.source == cls.rep);
      CHECK(iso.target == m);
      CHECK(iso_check(iso));
    }
  }
}

TEST_CASE("verify_report accepts fresh reports and rejects tampering") {
  const auto two = classify(config(2, 1)).to_jsonl();
  CHECK(verifies(two));
  const auto three = classify(config(3, 1)).to_jsonl();
  CHECK(verifies(three));

  SUBCASE("perturbed P entry") {
    auto lines = lines_of(three);
    bool done = false;
    for (auto& l : lines) {
      if (!l.contains("certs")) continue;
      for (auto& cert : l["certs"]) {
        if (cert.at("kind") != "iso") continue;
        auto& p = cert["candidate"]["P"];
        p[0][0] = p[0][0].get<long>() + 1;
        done = true;
        break;
      }
      if (done) break;
    }
    REQUIRE(done);
    std::vector<std::string> problems;
    std::istringstream in(join(lines));
    CHECK_FALSE(verify_report(in, &problems));
    CHECK_FALSE(problems.empty());
  }

  SUBCASE("trace step with a broken precondition") {
    auto lines = lines_of(two);
    bool done = false;
    for (auto& l : lines) {
      if (!l.contains("certs")) continue;
      for (auto& cert : l["certs"]) {
        if (cert.at("kind") != "trace") continue;
        const auto start = BottMatrix::from_json(cert["trace"]["start"]);
        if (is_zero(start.entry(1, 2))) continue;
        cert["trace"]["steps"][0] = {{"kind", "stage_swap"}, {"j", 1}};
        done = true;
        break;
      }
      if (done) break;
    }
    REQUIRE(done);
    CHECK_FALSE(verifies(join(lines)));
  }

  SUBCASE("a member moved to the wrong class") {
    auto lines = lines_of(three);
    REQUIRE(lines.size() > 2);
    auto& from = lines[0]["members"];
    REQUIRE(from.size() > 1);
    json moved = from.back();
    from.erase(from.size() - 1);
    lines[1]["members"].push_back(moved);
    CHECK_FALSE(verifies(join(lines)));
  }

  SUBCASE("two classes merged by hand") {
    auto lines = lines_of(two);
    REQUIRE(lines.size() == 3);
    lines.erase(lines.begin() + 1);
    CHECK_FALSE(verifies(join(lines)));
  }

  SUBCASE("unparsable input") {
    CHECK_THROWS_AS(verifies("{not json\n"), BottError);
    auto lines = lines_of(two);
    lines.pop_back();
    CHECK_THROWS_AS(verifies(join(lines)), BottError);
    CHECK_THROWS_AS(verify_report(std::string("/nonexistent/report.jsonl")), BottError);
  }
}

TEST_CASE("report layout") {
  const auto r = classify(config(3, 1));
  const auto lines = lines_of(r.to_jsonl());
  REQUIRE(lines.size() == r.classes.size() + 1);
  for (std::size_t k = 0; k + 1 < lines.size(); ++k) {
    CHECK(lines[k].at("id") == k);
    CHECK(lines[k].contains("rep"));
    CHECK(lines[k].contains("members"));
    CHECK(lines[k].contains("certs"));
    if (k > 0) CHECK(BottMatrix::from_json(lines[k - 1].at("rep")) < BottMatrix::from_json(lines[k].at("rep")));
  }
  const auto& trailer = lines.back();
  CHECK(trailer.at("trailer") == true);
  CHECK(trailer.at("stats").at("enumerated") == 27);
  CHECK(trailer.at("classes") == r.classes.size());

  const auto csv = r.to_csv();
  CHECK(csv.rfind("class_id,size,t,fingerprint_hash\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.classes.size() + 1));
}

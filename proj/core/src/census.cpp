#include "bott/census.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "bott/error.hpp"
#include "bott/isomorphism.hpp"
#include "bott/moves.hpp"

namespace bott {

namespace {

template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller index as root so roots are class minima.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

nlohmann::json trace_cert(const MoveTrace& t) { return {{"kind", "trace"}, {"trace", t.to_json()}}; }
nlohmann::json iso_cert(const IsoCandidate& c) { return {{"kind", "iso"}, {"candidate", c.to_json()}}; }

}  // namespace

void CensusConfig::validate() const {
  if (n < 1 || n > 4) throw BottError(ErrorCode::BadDimension, "census supports 1 <= n <= 4, got " + std::to_string(n));
  if (entry_bound < 1 || u_bound < 1 || coeff_bound < 1 || node_cap < 1) {
    throw BottError(ErrorCode::BadDimension, "census bounds must be positive");
  }
}

nlohmann::json CensusConfig::to_json() const {
  return {{"n", n}, {"c", entry_bound}, {"uBound", u_bound}, {"coeffBound", coeff_bound}, {"nodeCap", node_cap},
          {"exhaustive", exhaustive}};
}

CensusConfig CensusConfig::from_json(const nlohmann::json& j) {
  try {
    CensusConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.entry_bound = j.at("c").get<int>();
    cfg.u_bound = j.at("uBound").get<int>();
    cfg.coeff_bound = j.at("coeffBound").get<int>();
    cfg.node_cap = j.at("nodeCap").get<std::size_t>();
    cfg.exhaustive = j.value("exhaustive", true);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw BottError(ErrorCode::CorruptReport, std::string("bad census config: ") + e.what());
  }
}

nlohmann::json CensusStats::to_json() const {
  return {{"enumerated", enumerated},
          {"distinct", distinct},
          {"moveComponents", move_components},
          {"pairsTested", pairs_tested},
          {"isoMerges", iso_merges},
          {"completeSeparations", complete_separations},
          {"saturatedClosures", saturated_closures}};
}

std::string CensusReport::to_jsonl() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    auto members = nlohmann::json::array();
    for (const auto& m : c.members) members.push_back(m.to_json());
    nlohmann::json line = {{"id", k},
                           {"rep", c.rep.to_json()},
                           {"members", std::move(members)},
                           {"certs", c.certs},
                           {"fingerprint", c.fp.to_json()},
                           {"t", c.fp.t},
                           {"qTrivial", c.q_trivial}};
    out << line.dump() << '\n';
  }
  auto unresolved_json = nlohmann::json::array();
  for (const auto& [a, b] : unresolved) unresolved_json.push_back({{"a", a.to_json()}, {"b", b.to_json()}});
  nlohmann::json trailer = {{"trailer", true},
                            {"config", config.to_json()},
                            {"classes", classes.size()},
                            {"stats", stats.to_json()},
                            {"unresolved", std::move(unresolved_json)}};
  out << trailer.dump() << '\n';
  return out.str();
}

std::string CensusReport::to_csv() const {
  std::ostringstream out;
  out << "class_id,size,t,fingerprint_hash\n";
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    out << k << ',' << c.members.size() << ',' << c.fp.t << ',' << c.fp.hash() << '\n';
  }
  return out.str();
}

void for_each_matrix(const CensusConfig& cfg, const std::function<void(const BottMatrix&)>& fn) {
  const int n = cfg.n;
  const int c = cfg.entry_bound;
  const int slots = n * (n - 1) / 2;
  std::vector<int> digits(static_cast<std::size_t>(slots), -c);
  for (;;) {
    std::vector<MatrixEntry> entries;
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) entries.push_back({i, j, digits[BottMatrix::offset(i, j)]});
    }
    fn(well_ordered(BottMatrix::validate(n, entries)));
    int pos = slots - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == c) {
      digits[static_cast<std::size_t>(pos)] = -c;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
}

std::vector<BottMatrix> enumerate(const CensusConfig& cfg) {
  std::vector<BottMatrix> out;
  for_each_matrix(cfg, [&](const BottMatrix& m) { out.push_back(m); });
  return out;
}

CensusReport classify(const CensusConfig& cfg) {
  cfg.validate();
  CensusReport report;
  report.config = cfg;

  std::vector<BottMatrix> all = enumerate(cfg);
  report.stats.enumerated = all.size();
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  report.stats.distinct = all.size();

  std::map<BottMatrix, std::size_t> index;
  for (std::size_t k = 0; k < all.size(); ++k) index.emplace(all[k], k);

  UnionFind uf(all.size());
  std::vector<std::vector<nlohmann::json>> certs_at(all.size());  // keyed by closure root

  // move phase
  std::vector<bool> covered(all.size(), false);
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (covered[k]) continue;
    const MoveClosure closure = move_closure(all[k], Integer(cfg.entry_bound), cfg.u_bound, cfg.node_cap);
    if (closure.saturated) ++report.stats.saturated_closures;
    for (const auto& [m, link] : closure.nodes) {
      auto it = index.find(m);
      if (it == index.end()) continue;
      covered[it->second] = true;
      if (uf.unite(k, it->second)) certs_at[k].push_back(trace_cert(closure.trace_to(m)));
    }
  }

  std::vector<std::size_t> components;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (uf.find(k) == k) components.push_back(k);
  }
  report.stats.move_components = components.size();

  std::vector<Fingerprint> comp_fp(components.size());
  parallel_for(components.size(), cfg.workers, [&](std::size_t c) { comp_fp[c] = fingerprint(all[components[c]]); });

  // pairwise phase within fingerprint groups
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < components.size(); ++c) groups[comp_fp[c].canonical()].push_back(c);
  std::vector<std::vector<std::size_t>> group_list;
  for (auto& [key, members] : groups) {
    if (members.size() > 1) group_list.push_back(std::move(members));
  }

  struct Tested {
    std::size_t a, b;  // component slots
    IsoVerdict verdict;
  };
  std::vector<Tested> results;
  if (cfg.exhaustive) {
    // Complete verdicts are transitive, so each component only meets the
    // classes already found in its group.
    std::vector<std::vector<Tested>> per_group(group_list.size());
    parallel_for(group_list.size(), cfg.workers, [&](std::size_t g) {
      std::vector<std::size_t> reps;
      for (std::size_t c : group_list[g]) {
        bool merged = false;
        for (std::size_t r : reps) {
          IsoVerdict v = are_isomorphic(all[components[r]], all[components[c]], cfg.coeff_bound, true);
          merged = v.status == IsoStatus::Iso;
          per_group[g].push_back({r, c, std::move(v)});
          if (merged) break;
        }
        if (!merged) reps.push_back(c);
      }
    });
    for (auto& g : per_group) std::move(g.begin(), g.end(), std::back_inserter(results));
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& members : group_list) {
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) pairs.emplace_back(members[x], members[y]);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    results.resize(pairs.size());
    parallel_for(pairs.size(), cfg.workers, [&](std::size_t p) {
      results[p] = {pairs[p].first, pairs[p].second,
                    are_isomorphic(all[components[pairs[p].first]], all[components[pairs[p].second]],
                                   cfg.coeff_bound, false)};
    });
  }
  report.stats.pairs_tested = results.size();

  std::set<std::pair<std::size_t, std::size_t>> separated;  // component pairs with a complete NON_ISO
  for (const auto& [ca, cb, v] : results) {
    if (v.status == IsoStatus::Iso) {
      if (uf.unite(components[ca], components[cb])) {
        ++report.stats.iso_merges;
        certs_at[components[ca]].push_back(iso_cert(*v.certificate));
      }
    } else if (v.status == IsoStatus::NonIso) {
      separated.emplace(ca, cb);
      ++report.stats.complete_separations;
    }
  }

  // assemble classes; roots are class minima because union keeps the smaller index
  std::map<std::size_t, std::size_t> class_of_root;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const std::size_t r = uf.find(k);
    auto [it, fresh] = class_of_root.emplace(r, report.classes.size());
    if (fresh) {
      CensusClass cls{all[r], {}, {}, {}, false};
      report.classes.push_back(std::move(cls));
    }
    auto& cls = report.classes[it->second];
    cls.members.push_back(all[k]);
    for (auto& cert : certs_at[k]) cls.certs.push_back(std::move(cert));
  }
  std::vector<std::size_t> comp_class(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    const std::size_t cls = class_of_root.at(uf.find(components[c]));
    comp_class[c] = cls;
    report.classes[cls].fp = comp_fp[c];
  }
  for (auto& cls : report.classes) cls.q_trivial = is_q_trivial(cls.rep);

  // class pairs that share a fingerprint and were never separated
  std::set<std::pair<std::size_t, std::size_t>> class_separated;
  for (const auto& [ca, cb] : separated) {
    class_separated.emplace(std::min(comp_class[ca], comp_class[cb]), std::max(comp_class[ca], comp_class[cb]));
  }
  for (std::size_t x = 0; x < report.classes.size(); ++x) {
    for (std::size_t y = x + 1; y < report.classes.size(); ++y) {
      if (report.classes[x].fp != report.classes[y].fp) continue;
      if (class_separated.count({x, y})) continue;
      report.unresolved.emplace_back(report.classes[x].rep, report.classes[y].rep);
    }
  }
  return report;
}

namespace {

struct Problems {
  std::vector<std::string>* sink;
  bool ok = true;
  void add(std::string msg) {
    ok = false;
    if (sink) sink->push_back(std::move(msg));
  }
};

bool certificate_ok(const nlohmann::json& cert, const std::set<BottMatrix>& members, BottMatrix& from, BottMatrix& to,
                    std::string& why) {
  try {
    const auto kind = cert.at("kind").get<std::string>();
    if (kind == "trace") {
      auto outcome = replay(cert.at("trace"));
      if (!outcome.ok) {
        why = outcome.detail;
        return false;
      }
      from = outcome.trace->start;
      to = outcome.trace->end;
    } else if (kind == "iso") {
      IsoCandidate c = IsoCandidate::from_json(cert.at("candidate"));
      if (!iso_check(c)) {
        why = "candidate fails iso_check";
        return false;
      }
      from = c.source;
      to = c.target;
    } else {
      why = "unknown certificate kind " + kind;
      return false;
    }
  } catch (const BottError& e) {
    why = e.what();
    return false;
  } catch (const nlohmann::json::exception& e) {
    why = e.what();
    return false;
  }
  if (!members.count(from) || !members.count(to)) {
    why = "certificate endpoints are not class members";
    return false;
  }
  return true;
}

}  // namespace

bool verify_report(std::istream& in, std::vector<std::string>* problems) {
  std::vector<nlohmann::json> lines;
  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    try {
      lines.push_back(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw BottError(ErrorCode::CorruptReport, std::string("unparsable line: ") + e.what());
    }
  }
  if (lines.empty() || !lines.back().value("trailer", false)) {
    throw BottError(ErrorCode::CorruptReport, "missing trailer line");
  }
  const nlohmann::json trailer = lines.back();
  lines.pop_back();
  const CensusConfig cfg = CensusConfig::from_json(trailer.at("config"));

  Problems report{problems};
  struct Parsed {
    BottMatrix rep;
    std::set<BottMatrix> members;
    Fingerprint fp;
  };
  std::vector<Parsed> classes;
  std::set<BottMatrix> seen;

  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const std::string where = "class " + std::to_string(k) + ": ";
    try {
      Parsed cls{BottMatrix::from_json(line.at("rep")), {}, Fingerprint::from_json(line.at("fingerprint"))};
      std::vector<BottMatrix> members;
      for (const auto& m : line.at("members")) members.push_back(BottMatrix::from_json(m));
      if (members.empty() || !std::is_sorted(members.begin(), members.end()) ||
          std::adjacent_find(members.begin(), members.end()) != members.end()) {
        report.add(where + "members must be non-empty, sorted and distinct");
        continue;
      }
      if (members.front() != cls.rep) report.add(where + "representative is not the least member");
      for (const auto& m : members) {
        if (!is_well_ordered(m)) report.add(where + "member " + m.key() + " is not well-ordered");
        if (!seen.insert(m).second) report.add(where + "member " + m.key() + " appears in two classes");
      }
      cls.members.insert(members.begin(), members.end());
      if (fingerprint(cls.rep) != cls.fp) report.add(where + "stored fingerprint does not match representative");

      // certificates must be valid and connect every member
      std::map<BottMatrix, BottMatrix> parent;
      for (const auto& m : members) parent.emplace(m, m);
      auto root = [&](BottMatrix m) {
        while (parent.at(m) != m) m = parent.at(m);
        return m;
      };
      for (const auto& cert : line.at("certs")) {
        BottMatrix from, to;
        std::string why;
        if (!certificate_ok(cert, cls.members, from, to, why)) {
          report.add(where + "bad certificate: " + why);
          continue;
        }
        BottMatrix ra = root(from), rb = root(to);
        if (ra != rb) parent[rb] = ra;
      }
      const BottMatrix r0 = root(members.front());
      for (const auto& m : members) {
        if (root(m) != r0) {
          report.add(where + "member " + m.key() + " is not linked to the representative");
          break;
        }
      }
      classes.push_back(std::move(cls));
    } catch (const BottError& e) {
      report.add(where + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw BottError(ErrorCode::CorruptReport, where + e.what());
    }
  }

  // every enumerated matrix is covered
  std::set<BottMatrix> expected;
  for_each_matrix(cfg, [&](const BottMatrix& m) { expected.insert(m); });
  if (expected != seen) report.add("class members do not match the enumeration for the stored config");

  std::set<std::pair<BottMatrix, BottMatrix>> unresolved;
  try {
    for (const auto& pr : trailer.at("unresolved")) {
      BottMatrix a = BottMatrix::from_json(pr.at("a"));
      BottMatrix b = BottMatrix::from_json(pr.at("b"));
      unresolved.emplace(std::min(a, b), std::max(a, b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw BottError(ErrorCode::CorruptReport, std::string("bad unresolved list: ") + e.what());
  }

  for (std::size_t x = 0; x < classes.size(); ++x) {
    for (std::size_t y = x + 1; y < classes.size(); ++y) {
      const auto& a = classes[x];
      const auto& b = classes[y];
      if (a.fp != b.fp) continue;
      if (unresolved.count({std::min(a.rep, b.rep), std::max(a.rep, b.rep)})) continue;
      if (exhaustive_search(a.rep, b.rep).status == IsoStatus::NonIso) continue;
      report.add("classes " + std::to_string(x) + " and " + std::to_string(y) + " are not separated");
    }
  }
  return report.ok;
}

bool verify_report(const std::string& path, std::vector<std::string>* problems) {
  std::ifstream in(path);
  if (!in) throw BottError(ErrorCode::CorruptReport, "cannot open " + path);
  return verify_report(in, problems);
}

}  // namespace bott

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bott/bott_matrix.hpp"
#include "bott/invariants.hpp"

namespace bott {

struct CensusConfig {
  int n = 2;
  int entry_bound = 1;     // c: entries range over [-c, c]
  int u_bound = 1;         // move search
  int coeff_bound = 3;     // isomorphism search
  std::size_t node_cap = 100000;
  bool exhaustive = true;  // off: bounded search only, pairs may stay unresolved
  int workers = 1;         // never affects the report

  void validate() const;
  // Worker count is deliberately excluded.
  nlohmann::json to_json() const;
  static CensusConfig from_json(const nlohmann::json& j);
};

struct CensusClass {
  BottMatrix rep;
  std::vector<BottMatrix> members;
  // Each certificate links two members: {"kind": "trace", "trace": ...} or
  // {"kind": "iso", "candidate": ...}.
  std::vector<nlohmann::json> certs;
  Fingerprint fp;
  bool q_trivial = false;
};

struct CensusStats {
  std::uint64_t enumerated = 0;
  std::uint64_t distinct = 0;
  std::uint64_t move_components = 0;
  std::uint64_t pairs_tested = 0;
  std::uint64_t iso_merges = 0;
  std::uint64_t complete_separations = 0;
  std::uint64_t saturated_closures = 0;

  nlohmann::json to_json() const;
};

struct CensusReport {
  CensusConfig config;
  std::vector<CensusClass> classes;
  std::vector<std::pair<BottMatrix, BottMatrix>> unresolved;  // class representatives
  CensusStats stats;

  // One line per class, sorted by representative, then a trailer line.
  std::string to_jsonl() const;
  // class_id,size,t,fingerprint_hash
  std::string to_csv() const;
};

// All (2c+1)^(n(n-1)/2) matrices in lexicographic order of their column-order
// entries, each well-ordered before it is handed out.
void for_each_matrix(const CensusConfig& cfg, const std::function<void(const BottMatrix&)>& fn);
std::vector<BottMatrix> enumerate(const CensusConfig& cfg);

CensusReport classify(const CensusConfig& cfg);

// Re-checks every certificate and separation claim of a JSONL report.
// Throws CorruptReport when the file cannot be read or parsed.
bool verify_report(const std::string& path, std::vector<std::string>* problems = nullptr);
bool verify_report(std::istream& in, std::vector<std::string>* problems = nullptr);

}  // namespace bott

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bott/census.hpp"
#include "bott/error.hpp"
#include "bott/invariants.hpp"
#include "bott/isomorphism.hpp"
#include "bott/moves.hpp"

namespace bott::cli {

namespace {

using nlohmann::json;

struct NoInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream file(path);
    if (!file) throw NoInput("cannot open " + path);
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw BottError(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void emit_error(std::ostream& err, std::string_view code, const std::string& detail) {
  err << json{{"error", std::string(code)}, {"detail", detail}}.dump() << '\n';
}

int exit_for(IsoStatus s) {
  switch (s) {
    case IsoStatus::Iso: return kOk;
    case IsoStatus::NonIso: return kFalse;
    case IsoStatus::Unknown: return kUnknown;
  }
  return kInternal;
}

DegreeTwoClass parse_vector(const std::string& text, int n) {
  DegreeTwoClass u;
  std::string body = text;
  std::replace(body.begin(), body.end(), ',', ' ');
  body.erase(std::remove_if(body.begin(), body.end(), [](char c) { return c == '[' || c == ']'; }), body.end());
  std::istringstream is(body);
  std::string tok;
  while (is >> tok) {
    Integer v;
    if (v.set_str(tok, 10) != 0) throw BottError(ErrorCode::ParseError, "bad coefficient \"" + tok + "\" in --u");
    u.coeffs.push_back(v);
  }
  if (u.n() < n) u.coeffs.resize(static_cast<std::size_t>(n));
  return u;
}

std::string csv_join(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + v[k].get_str();
  return s;
}

int cmd_inv(const std::string& path, const std::string& format, std::istream& in, std::ostream& out) {
  const BottMatrix m = BottMatrix::from_json(read_json(path, in));
  const Fingerprint fp = fingerprint(m);
  const SquareVanishingSet x = square_vanishing_set(m);
  if (format == "csv") {
    out << "n,t,span_index,product_divisors,mod2_square_zero_count,q_trivial,well_ordered,fingerprint_hash\n";
    out << fp.n << ',' << fp.t << ',' << fp.span_index.get_str() << ',' << csv_join(fp.product_divisors) << ','
        << fp.mod2_square_zero_count << ',' << (is_q_trivial(m) ? "true" : "false") << ','
        << (is_well_ordered(m) ? "true" : "false") << ',' << fp.hash() << '\n';
    return kOk;
  }
  auto xs = json::array();
  for (const auto& z : x.elements) xs.push_back(z.to_json());
  out << json{{"matrix", m.to_json()},
              {"fingerprint", fp.to_json()},
              {"X", std::move(xs)},
              {"t", x.t()},
              {"qTrivial", is_q_trivial(m)},
              {"wellOrdered", is_well_ordered(m)}}
             .dump()
      << '\n';
  return kOk;
}

int cmd_iso(const std::string& a_path, const std::string& b_path, int bound, bool exhaustive, std::istream& in,
            std::ostream& out) {
  const BottMatrix a = BottMatrix::from_json(read_json(a_path, in));
  const BottMatrix b = BottMatrix::from_json(read_json(b_path, in));
  const IsoVerdict v = are_isomorphic(a, b, bound, exhaustive);
  out << v.to_json().dump() << '\n';
  return exit_for(v.status);
}

int cmd_move(const std::string& path, int swap, int bundle, const std::string& u_text, std::istream& in,
             std::ostream& out) {
  const BottMatrix m = BottMatrix::from_json(read_json(path, in));
  MoveResult r = swap > 0 ? stage_swap(m, swap) : bundle_change(m, bundle, parse_vector(u_text, m.n()));
  out << json{{"matrix", r.matrix.to_json()}, {"move", r.move.spec.to_json()}, {"iso", r.move.iso.to_json()}}.dump()
      << '\n';
  return kOk;
}

int cmd_replay(const std::string& path, std::istream& in, std::ostream& out) {
  const json trace = read_json(path, in);
  const ReplayOutcome r = replay(trace);
  json result = {{"ok", r.ok}, {"detail", r.detail}};
  if (r.ok) {
    result["end"] = r.trace->end.to_json();
    result["isomorphism"] = r.trace->isomorphism().to_json();
  }
  out << result.dump() << '\n';
  return r.ok ? kOk : kFalse;
}

int cmd_census(const CensusConfig& cfg, const std::string& out_path, const std::string& csv_path,
               const std::string& format, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const CensusReport report = classify(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string jsonl = report.to_jsonl();
  const std::string csv = report.to_csv();
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw NoInput("cannot write " + out_path);
    f << jsonl;
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw NoInput("cannot write " + csv_path);
    f << csv;
  }
  if (format == "csv") {
    out << csv;
  } else if (out_path.empty()) {
    out << jsonl;
  }
  err << json{{"classes", report.classes.size()},
              {"unresolved", report.unresolved.size()},
              {"stats", report.stats.to_json()},
              {"seconds", seconds}}
             .dump()
      << '\n';
  return kOk;
}

int cmd_verify(const std::string& path, std::istream& in, std::ostream& out) {
  std::vector<std::string> problems;
  bool ok = false;
  if (path == "-") {
    ok = verify_report(in, &problems);
  } else {
    std::ifstream f(path);
    if (!f) throw NoInput("cannot open " + path);
    ok = verify_report(f, &problems);
  }
  out << json{{"ok", ok}, {"problems", problems}}.dump() << '\n';
  return ok ? kOk : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral cohomology of Bott manifolds: invariants, moves, isomorphism and census", "bott"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string a_path, b_path;
  int bound = 3;
  bool bounded_only = false;
  int swap = 0, bundle = 0;
  std::string u_text;
  CensusConfig cfg;
  std::string out_path, csv_path;

  auto* inv = app.add_subcommand("inv", "Print X(B_n), flags and the fingerprint of a matrix");
  inv->add_option("matrix", a_path, "BottMatrix JSON file, - for stdin")->required();
  inv->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* iso = app.add_subcommand("iso", "Decide whether two cohomology rings are isomorphic");
  iso->add_option("a", a_path)->required();
  iso->add_option("b", b_path)->required();
  iso->add_option("--bound", bound, "coefficient bound for the non-Q-trivial search")->check(CLI::PositiveNumber);
  iso->add_flag("--bounded-only", bounded_only, "report UNKNOWN instead of running the exhaustive search");

  auto* move = app.add_subcommand("move", "Apply one stage swap or bundle change");
  move->add_option("matrix", a_path)->required();
  auto* swap_opt = move->add_option("--swap", swap, "interchange stages j and j+1");
  auto* bundle_opt = move->add_option("--bundle", bundle, "bundle change at stage j");
  auto* u_opt = move->add_option("--u", u_text, "coefficients of u, e.g. 1,0 or [1,0]");
  swap_opt->excludes(bundle_opt);
  bundle_opt->needs(u_opt);

  auto* rep = app.add_subcommand("replay", "Re-verify a MoveTrace file");
  rep->add_option("trace", a_path)->required();

  auto* census = app.add_subcommand("census", "Classify all towers with bounded entries");
  census->add_option("--n", cfg.n)->required();
  census->add_option("--c", cfg.entry_bound)->required();
  census->add_option("--ubound", cfg.u_bound);
  census->add_option("--bound", cfg.coeff_bound);
  census->add_option("--node-cap", cfg.node_cap);
  bool census_bounded_only = false;
  census->add_flag("--bounded-only", census_bounded_only, "skip the exhaustive search for inconclusive pairs");
  census->add_option("--workers", cfg.workers);
  census->add_option("--out", out_path, "JSONL report path (stdout when omitted)");
  census->add_option("--csv", csv_path, "CSV summary path");
  census->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "Re-verify every certificate in a census report");
  verify->add_option("report", a_path)->required();

  auto* paper = app.add_subcommand("paper-check", "Run the built-in fixture table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "Usage", e.what());
    return kUsage;
  }

  try {
    if (*inv) return cmd_inv(a_path, format, in, out);
    if (*iso) return cmd_iso(a_path, b_path, bound, !bounded_only, in, out);
    if (*move) {
      if (swap <= 0 && bundle <= 0) {
        emit_error(err, "Usage", "move needs --swap j or --bundle j --u vec");
        return kUsage;
      }
      return cmd_move(a_path, swap, bundle, u_text, in, out);
    }
    if (*rep) return cmd_replay(a_path, in, out);
    if (*census) {
      cfg.exhaustive = !census_bounded_only;
      cfg.validate();
      return cmd_census(cfg, out_path, csv_path, format, out, err);
    }
    if (*verify) return cmd_verify(a_path, in, out);
    if (*paper) return paper_check(out);
  } catch (const NoInput& e) {
    emit_error(err, "NoInput", e.what());
    return kNoInput;
  } catch (const BottError& e) {
    emit_error(err, to_string(e.code()), e.detail());
    return e.code() == ErrorCode::InternalInvariantViolation ? kInternal : kDataError;
  } catch (const std::exception& e) {
    emit_error(err, "Internal", e.what());
    return kInternal;
  }
  return kUsage;
}

}  // namespace bott::cli

// Copyright 2026 The rangedim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <charconv>
#include <ostream>
#include <optional>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "rangedim/constructions.hpp"
#include "rangedim/verification.hpp"
#include "state_file.hpp"

namespace rangedim::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t parse_positive(const std::string& token) {
  std::size_t value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value == 0) {
    throw UsageError("expected a positive integer, got '" + token + "'");
  }
  return value;
}

ExtendedDim parse_extended(const std::string& token) {
  if (token == "inf" || token == "INF") return ExtendedDim::infinite();
  return ExtendedDim::finite(parse_positive(token));
}

json reasons_json(const std::vector<Reason>& reasons) {
  json out = json::array();
  for (const auto r : reasons) out.push_back(std::string(to_string(r)));
  return out;
}

json triple_json(const RankTriple& t) { return json::array({t.d1, t.d2, t.d3}); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

json necessity_json(const NecessityReport& n) {
  json per = json::array();
  for (const auto& r : n.per_eigenvector) {
    per.push_back({{"r", r.weight}, {"schmidt1", r.schmidt1}, {"schmidt2", r.schmidt2}});
  }
  return {{"eigen_count", n.eigen_count},
          {"per_eigenvector", per},
          {"schmidt_equal", n.schmidt_equal},
          {"bounds_ok_1", n.bounds_ok_1},
          {"bounds_ok_2", n.bounds_ok_2},
          {"span_ok", n.span_ok},
          {"span_residual_1", n.span_residual_1},
          {"span_residual_2", n.span_residual_2},
          {"all_ok", n.all_ok}};
}

void emit(std::ostream& out, bool quiet, const std::string& prose, const json& doc) {
  if (!quiet) out << prose << "\n";
  out << doc.dump(2) << "\n";
}

int cmd_feasible(const std::vector<std::string>& tokens, bool quiet, std::ostream& out) {
  if (tokens.size() != 3) throw UsageError("feasible takes exactly three dimensions");
  std::vector<ExtendedDim> dims;
  for (const auto& t : tokens) dims.push_back(parse_extended(t));
  const bool any_infinite =
      std::any_of(dims.begin(), dims.end(), [](const ExtendedDim& d) { return d.is_infinite(); });

  json triple = json::array();
  for (const auto& d : dims) {
    if (d.is_infinite()) {
      triple.push_back("inf");
    } else {
      triple.push_back(d.value());
    }
  }
  const std::string label = "(" + tokens[0] + ", " + tokens[1] + ", " + tokens[2] + ")";

  if (any_infinite) {
    const ExtendedVerdict v = classify_triple_extended(dims[0], dims[1], dims[2]);
    json doc = {{"command", "feasible"},
                {"triple", triple},
                {"exists", v.feasible},
                {"reasons", reasons_json(v.reasons)}};
    emit(out, quiet,
         "Range dimensions " + label + ": a state " + (v.feasible ? "exists" : "does not exist") +
             " (extended arithmetic).",
         doc);
    return v.feasible ? kExitOk : kExitInfeasible;
  }

  const TripleClass c = classify_triple(dims[0].value(), dims[1].value(), dims[2].value());
  json doc = {{"command", "feasible"},
              {"triple", triple},
              {"exists", c.exists},
              {"correlated_exists", c.correlated_exists},
              {"uncorrelated_exists", c.uncorrelated_exists},
              {"reasons", reasons_json(c.reasons)}};
  emit(out, quiet,
       "Range dimensions " + label + ": exists " + yes_no(c.exists) + ", correlated " +
           yes_no(c.correlated_exists) + ", uncorrelated " + yes_no(c.uncorrelated_exists) + ".",
       doc);
  return c.exists ? kExitOk : kExitInfeasible;
}

struct ConstructArgs {
  std::vector<std::string> dims;
  std::string kind = "any";
  std::uint64_t seed = 0;
  std::string out_path;
  double rank_tol = kDefaultRankTol;
  double prod_tol = kDefaultProdTol;
};

int cmd_construct(const ConstructArgs& a, bool quiet, std::ostream& out, std::ostream& err) {
  if (a.dims.size() != 3) throw UsageError("construct takes exactly three dimensions");
  const std::size_t d1 = parse_positive(a.dims[0]);
  const std::size_t d2 = parse_positive(a.dims[1]);
  const std::size_t d3 = parse_positive(a.dims[2]);
  const auto kind = parse_witness_kind(a.kind);
  if (!kind) throw UsageError("--kind must be any, correlated or uncorrelated");
  const RankTriple want{d1, d2, d3};

  std::optional<DensityOperator> rho;
  try {
    rho = construct_witness(d1, d2, d3, *kind, a.seed, a.rank_tol);
  } catch (const InfeasibleError& e) {
    json doc = {{"command", "construct"},
                {"requested", triple_json(want)},
                {"kind", a.kind},
                {"constructed", false},
                {"reasons", reasons_json(e.reasons())}};
    emit(out, quiet, std::string("Infeasible: ") + e.what(), doc);
    return kExitInfeasible;
  }

  try {
    write_state_file(a.out_path, *rho);
  } catch (const std::exception& e) {
    err << "error: cannot write " << a.out_path << ": " << e.what() << "\n";
    return kExitIo;
  }

  const RankTriple got = rank_triple(*rho, a.rank_tol);
  const CorrelationVerdict v = is_uncorrelated(*rho, a.prod_tol);
  json doc = {{"command", "construct"},
              {"requested", triple_json(want)},
              {"kind", a.kind},
              {"seed", a.seed},
              {"constructed", true},
              {"out", a.out_path},
              {"ranks", triple_json(got)},
              {"uncorrelated", v.uncorrelated},
              {"ambiguous", v.ambiguous},
              {"residual", v.residual}};
  emit(out, quiet,
       "Wrote " + a.out_path + ": ranks " + to_string(got) + ", " +
           (v.uncorrelated ? "uncorrelated" : "correlated") + ".",
       doc);
  return kExitOk;
}

int cmd_analyze(const std::string& path, double rank_tol, double prod_tol, bool quiet,
                std::ostream& out, std::ostream& err) {
  std::optional<DensityOperator> rho;
  try {
    rho = read_state_file(path);
  } catch (const ValidationError& e) {
    err << "error: " << path << " is not a valid density operator (" << e.invariant()
        << "): " << e.what() << "\n";
    return kExitBadState;
  } catch (const Error& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kExitBadState;
  }

  const AnalysisReport r = analyze_state(*rho, rank_tol, prod_tol);
  const auto& d = r.ranks;
  json doc = {{"command", "analyze"},
              {"path", path},
              {"dims", json::array({rho->dims().dim_a, rho->dims().dim_b})},
              {"ranks", triple_json(d)},
              {"purity", r.purity},
              {"uncorrelated", r.correlation.uncorrelated},
              {"ambiguous", r.correlation.ambiguous},
              {"residual", r.correlation.residual},
              {"product_rank_match", d.d3 == d.d1 * d.d2},
              {"necessity", necessity_json(r.necessity)}};
  std::string prose = "Ranks " + to_string(d) + ", " +
                      (r.correlation.uncorrelated ? "uncorrelated" : "correlated");
  if (r.correlation.ambiguous) prose += " (ambiguous: residual near the product threshold)";
  prose += std::string(", necessity chain ") + (r.necessity.all_ok ? "holds" : "FAILS") + ".";
  emit(out, quiet, prose, doc);
  return kExitOk;
}

struct SweepArgs {
  std::size_t max_dim = 4;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double rank_tol = kDefaultRankTol;
  double prod_tol = kDefaultProdTol;
  unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& a, bool quiet, std::ostream& out, std::ostream& err) {
  SweepReport r;
  try {
    r = sweep_theorem(a.max_dim, a.samples, a.seed, a.rank_tol, a.prod_tol, a.threads);
  } catch (const SizingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back(
        {{"triple", triple_json(f.triple)}, {"stage", f.stage}, {"detail", f.detail}});
  }
  json doc = {{"command", "sweep"},
              {"max_dim", r.max_dim},
              {"samples_per_config", a.samples},
              {"seed", a.seed},
              {"triples_checked", r.triples_checked},
              {"feasible_count", r.feasible_count},
              {"correlated_count", r.correlated_count},
              {"uncorrelated_count", r.uncorrelated_count},
              {"samples_checked", r.samples_checked},
              {"failures", failures},
              {"passed", r.failures.empty()}};
  emit(out, quiet,
       "Checked " + std::to_string(r.triples_checked) + " triples (" +
           std::to_string(r.feasible_count) + " feasible) and " +
           std::to_string(r.samples_checked) + " samples: " +
           (r.failures.empty() ? "no failures." : std::to_string(r.failures.size()) + " failures."),
       doc);
  return r.failures.empty() ? kExitOk : kExitSweepFailures;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Range dimensions of bipartite density operators"};
  app.name("rangedim");
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Print only the JSON document");

  std::vector<std::string> feasible_dims;
  auto* feasible = app.add_subcommand("feasible", "Classify a rank triple (d1 d2 d3; 'inf' allowed)");
  feasible->add_option("dims", feasible_dims, "d1 d2 d3")->required()->expected(3);
  feasible->add_flag("--quiet,-q", quiet, "Print only the JSON document");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build and save a witness state");
  construct->add_option("dims", construct_args.dims, "d1 d2 d3")->required()->expected(3);
  construct->add_option("--kind", construct_args.kind, "any | correlated | uncorrelated");
  construct->add_option("--seed", construct_args.seed, "Seed for amplitudes and retries");
  construct->add_option("--out", construct_args.out_path, "Output state file")->required();
  construct->add_option("--rank-tol", construct_args.rank_tol, "Relative rank cutoff");
  construct->add_option("--prod-tol", construct_args.prod_tol, "Product-form residual threshold");
  construct->add_flag("--quiet,-q", quiet, "Print only the JSON document");

  std::string analyze_path;
  double analyze_rank_tol = kDefaultRankTol;
  double analyze_prod_tol = kDefaultProdTol;
  auto* analyze = app.add_subcommand("analyze", "Report ranks, correlation and the necessity chain");
  analyze->add_option("path", analyze_path, "State file")->required();
  analyze->add_option("--rank-tol", analyze_rank_tol, "Relative rank cutoff");
  analyze->add_option("--prod-tol", analyze_prod_tol, "Product-form residual threshold");
  analyze->add_flag("--quiet,-q", quiet, "Print only the JSON document");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Exhaustive small-dimension verification");
  sweep->add_option("--max-dim", sweep_args.max_dim, "Largest dimension swept");
  sweep->add_option("--samples", sweep_args.samples, "Random samples per (dA, dB, mix_rank)");
  sweep->add_option("--seed", sweep_args.seed, "Master seed");
  sweep->add_option("--rank-tol", sweep_args.rank_tol, "Relative rank cutoff");
  sweep->add_option("--prod-tol", sweep_args.prod_tol, "Product-form residual threshold");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = hardware)");
  sweep->add_flag("--quiet,-q", quiet, "Print only the JSON document");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (feasible->parsed()) return cmd_feasible(feasible_dims, quiet, out);
    if (construct->parsed()) return cmd_construct(construct_args, quiet, out, err);
    if (analyze->parsed()) {
      return cmd_analyze(analyze_path, analyze_rank_tol, analyze_prod_tol, quiet, out, err);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_args, quiet, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizingError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace rangedim::cli

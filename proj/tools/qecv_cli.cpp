// Copyright 2026 The qecv Authors
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

// qecv: command-line front end for the verification library. Every command
// builds one JSON document; --format text renders the same document.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qecv/qecv.hpp"

namespace {

using qecv::json;

enum ExitCode { kOk = 0, kVerdictNegative = 1, kInputError = 2, kGuardExceeded = 3 };

struct ChannelFlags {
  std::string family;
  std::string channel;
  int n = 0;
  int m = 0;
  int t = -1;
  std::vector<int> weights;
  std::optional<double> identity_p;
};

void add_channel_flags(CLI::App *cmd, ChannelFlags &f) {
  cmd->add_option("--family", f.family, "Named channel family")
      ->check(CLI::IsMember(qecv::channel_families()));
  cmd->add_option("--channel", f.channel, "Channel spec: inline JSON or file");
  cmd->add_option("--n", f.n, "Number of qubits");
  cmd->add_option("--m", f.m, "Half-count for even_weight (n = 2m+1)");
  cmd->add_option("--t", f.t, "Maximum weight for weight_bounded");
  cmd->add_option("--weights", f.weights, "Even weights present (even_weight)");
  cmd->add_option("--identity-p", f.identity_p, "Identity probability (uniform split)");
}

qecv::ChannelSpec channel_spec(const ChannelFlags &f) {
  if (!f.channel.empty()) {
    if (!f.family.empty()) throw qecv::InvalidInput("use either --channel or --family, not both");
    return qecv::channel_spec_from_json(qecv::read_json_source(f.channel, "channel spec"));
  }
  if (f.family.empty()) throw qecv::InvalidInput("a channel is required: --family or --channel");
  json j = {{"family", f.family}};
  if (f.n > 0) j["n"] = f.n;
  json params = json::object();
  if (f.m > 0) params["m"] = f.m;
  if (f.t >= 0) params["t"] = f.t;
  if (!f.weights.empty()) params["weights"] = f.weights;
  if (f.identity_p) params["identity_p"] = *f.identity_p;
  if (!params.empty()) j["params"] = params;
  return qecv::channel_spec_from_json(j);
}

// Published minimal lengths for the families where one is quoted; the
// pairwise+quadruple value does not agree with direct evaluation (12).
std::optional<int> reference_min_n(const std::string &family, int k) {
  if (k != 1) return std::nullopt;
  if (family == "pairwise") return 7;
  if (family == "pairwise+quadruple") return 14;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text rendering

void render_text(const json &j, std::ostream &out, int indent = 0) {
  const std::string pad(indent, ' ');
  auto scalar = [](const json &v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto is_flat = [](const json &v) {
    if (!v.is_array()) return false;
    for (const auto &e : v)
      if (e.is_object()) return false;
    return true;
  };
  for (const auto &[key, value] : j.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      render_text(value, out, indent + 2);
    } else if (value.is_array() && !is_flat(value)) {
      out << pad << key << ":\n";
      for (const auto &e : value) {
        out << pad << "  -\n";
        render_text(e, out, indent + 4);
      }
    } else {
      out << pad << key << ": " << scalar(value) << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// Commands

json cmd_rank(const ChannelFlags &flags, bool expand, bool explicit_choi) {
  auto spec = channel_spec(flags);
  if (expand) return qecv::to_json(qecv::expand(spec));
  auto channel = qecv::build_channel(spec);
  json out = {{"command", "rank"},
              {"channel", qecv::to_json(spec)},
              {"n", channel.num_qubits()},
              {"terms", channel.size()},
              {"choi_rank", qecv::choi_rank(channel)}};
  // Dense minimization where affordable; beyond that distinct Pauli terms are
  // already a minimal Kraus set.
  if (channel.num_qubits() <= qecv::kChoiQubitLimit)
    out["minimal_kraus"] = qecv::minimal_kraus(qecv::to_kraus(channel)).size();
  else
    out["minimal_kraus"] = channel.size();
  if (explicit_choi || channel.num_qubits() <= 3)
    out["explicit_choi_rank"] = qecv::numerical_rank(qecv::choi_matrix(channel));
  return out;
}

json check_json(const qecv::CodeSpec &code_spec, const qecv::ChannelSpec &channel_spec,
                double tol) {
  auto code = qecv::build_code(code_spec);
  auto channel = qecv::build_channel(channel_spec);
  auto report = qecv::violation_report(code, channel, tol);
  json out = {{"command", "check"},
              {"code", qecv::to_json(code_spec)},
              {"channel", qecv::to_json(channel_spec)}};
  out.update(qecv::to_json(report));
  return out;
}

bool expectation_met(const json &report, const std::string &expect) {
  const auto &kl = report.at("kl");
  const auto &bound = report.at("bound");
  if (expect == "correctable") return kl.at("correctable").get<bool>();
  if (expect == "not-correctable") return !kl.at("correctable").get<bool>();
  if (expect == "degenerate") return kl.at("degenerate").get<bool>();
  if (expect == "nondegenerate") return !kl.at("degenerate").get<bool>();
  if (expect == "violation")
    return report.at("verdict") == qecv::to_string(qecv::Verdict::degenerate_violation);
  if (expect == "saturated") return bound.at("verdict") == "saturated";
  throw qecv::InvalidInput("unknown --expect value \"" + expect + "\"");
}

struct BoundFlags {
  std::string kind;
  std::string family;
  std::string channel;
  int n = -1;
  int k = 1;
  int t = -1;
  int q = 2;
  int m = 0;
  bool min_n = false;
  std::string scan;
};

std::pair<int, int> parse_range(const std::string &text) {
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    int lo = std::stoi(text.substr(0, colon)), hi = std::stoi(text.substr(colon + 1));
    if (lo < 0 || hi < lo) throw std::invalid_argument("bad order");
    return {lo, hi};
  } catch (const std::exception &) {
    throw qecv::InvalidInput("--scan expects lo:hi, got \"" + text + "\"");
  }
}

json scan_json(const std::vector<qecv::BoundReport> &rows) {
  json out = json::array();
  for (const auto &r : rows) out.push_back(qecv::to_json(r));
  return out;
}

json cmd_bound(const BoundFlags &f) {
  json out = {{"command", "bound"}, {"kind", f.kind}, {"k", f.k}};
  if (f.kind == "hamming") {
    if (f.t < 0) throw qecv::InvalidInput("bound hamming needs --t");
    out["t"] = f.t;
    out["q"] = f.q;
    if (f.min_n) {
      auto result = qecv::min_n_hamming(f.k, f.t, f.q);
      out["min_n"] = result.n;
      out["scan"] = scan_json(result.scan);
    } else {
      if (f.n < 0) throw qecv::InvalidInput("bound hamming needs --n or --min-n");
      out["report"] = qecv::to_json(qecv::hamming_check(f.n, f.k, f.t, f.q));
    }
    return out;
  }
  if (!f.channel.empty()) {
    if (f.min_n || !f.scan.empty())
      throw qecv::InvalidInput("--min-n and --scan need a named family");
    auto spec = qecv::channel_spec_from_json(qecv::read_json_source(f.channel, "channel spec"));
    auto channel = qecv::build_channel(spec);
    out["channel"] = qecv::to_json(spec);
    out["report"] = qecv::to_json(qecv::packing_check(channel.num_qubits(), f.k, channel));
    return out;
  }
  if (f.family.empty()) throw qecv::InvalidInput("bound packing needs --family or --channel");
  out["family"] = f.family;
  if (f.family == "identity") {
    if (f.n < 0) throw qecv::InvalidInput("bound packing needs --n");
    out["report"] = qecv::to_json(qecv::packing_check(f.n, f.k, qecv::PauliChannel::identity(f.n)));
    return out;
  }
  auto family = qecv::closed_form_family(f.family, f.m, f.t);
  if (f.family == "even_weight") {
    if (f.m < 1) throw qecv::InvalidInput("even_weight family needs --m");
    out["m"] = f.m;
  }
  if (f.family == "weight_bounded") {
    if (f.t < 0) throw qecv::InvalidInput("weight_bounded family needs --t");
    out["t"] = f.t;
  }
  if (f.min_n) {
    auto result = qecv::min_n_packing(f.k, *family);
    out["min_n"] = result.n;
    if (auto ref = reference_min_n(f.family, f.k)) {
      out["reference_min_n"] = *ref;
      out["matches_reference"] = *ref == result.n;
      if (*ref != result.n)
        out["note"] = "reference value " + std::to_string(*ref) +
                      " disagrees with direct evaluation of the bound (" +
                      std::to_string(result.n) + ")";
    }
    if (f.scan.empty()) out["scan"] = scan_json(result.scan);
  } else if (f.scan.empty()) {
    if (f.n < 0) throw qecv::InvalidInput("bound packing needs --n, --min-n or --scan");
    out["report"] = qecv::to_json(qecv::packing_check(f.n, f.k, *family));
  }
  if (!f.scan.empty()) {
    auto [lo, hi] = parse_range(f.scan);
    out["scan"] = scan_json(qecv::packing_scan(f.k, *family, lo, hi));
  }
  return out;
}

std::optional<qecv::SyndromeTable> table_for(const qecv::CodeSpec &spec) {
  if (spec.family == "repetition") return qecv::repetition_syndrome_table((spec.n - 1) / 2);
  if (spec.family == "ancilla") return qecv::ancilla_recovery(spec.n);
  return std::nullopt;
}

struct SimulateFlags {
  std::string code;
  std::string recovery = "auto";
  int trials = 100;
  std::uint64_t seed = 0;
  bool monte_carlo = false;
  std::uint64_t shots = 10000;
  unsigned threads = 0;
};

json simulate_json(const qecv::CodeSpec &code_spec, const qecv::ChannelSpec &channel_spec,
                   const SimulateFlags &f, double tol) {
  auto code = qecv::build_code(code_spec);
  auto channel = qecv::build_channel(channel_spec);
  auto table = table_for(code_spec);
  std::string mode = f.recovery;
  if (mode == "auto") mode = table ? "table" : "canonical";
  json out = {{"command", "simulate"},
              {"code", qecv::to_json(code_spec)},
              {"channel", qecv::to_json(channel_spec)},
              {"recovery", mode}};
  if (mode == "table") {
    if (!table) throw qecv::InvalidInput("no syndrome table for this code; use --recovery canonical");
    out["syndrome_table"] = qecv::to_json(*table);
    out["roundtrip"] = qecv::to_json(qecv::roundtrip_check(code, channel, *table, f.trials, f.seed));
  } else if (mode == "canonical") {
    auto recovery = qecv::canonical_recovery(code, channel, tol);
    out["canonical"] = {{"kraus", recovery.kraus.size()},
                        {"reachable", recovery.reachable},
                        {"completion", recovery.completion}};
    out["roundtrip"] = qecv::to_json(qecv::roundtrip_check(code, channel, recovery, f.trials, f.seed));
  } else {
    throw qecv::InvalidInput("--recovery must be auto, canonical or table");
  }
  if (f.monte_carlo) {
    if (!table) throw qecv::InvalidInput("--monte-carlo needs a code with a syndrome table");
    out["monte_carlo"] = qecv::to_json(
        qecv::monte_carlo_run(code, channel, *table, f.shots, f.seed, f.threads));
    out["monte_carlo"]["seed"] = f.seed;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Demo scenarios

struct Checks {
  json rows = json::array();
  bool all = true;
  void add(const std::string &name, bool pass) {
    rows.push_back({{"check", name}, {"pass", pass}});
    all = all && pass;
  }
};

qecv::ChannelSpec family_spec(const std::string &family, int n, json params = json::object()) {
  json j = {{"family", family}, {"n", n}};
  if (!params.empty()) j["params"] = params;
  return qecv::channel_spec_from_json(j);
}

qecv::CodeSpec code_of(const std::string &text) { return qecv::parse_code_spec(text); }

// Check, canonical and table simulation, and their agreement as channels.
json pair_report(const qecv::CodeSpec &code_spec, const qecv::ChannelSpec &channel_spec,
                 int trials, std::uint64_t seed, Checks &checks, const std::string &tag) {
  json out = check_json(code_spec, channel_spec, qecv::kDefaultKLTolerance);
  out.erase("command");
  // Large KL matrices swamp the report; keep only their size.
  if (const auto rows = out["kl"]["M"].size(); rows > 16) {
    out["kl"].erase("M");
    out["kl"]["M_rows"] = rows;
  }
  if (!out["kl"]["correctable"].get<bool>()) return out;
  auto code = qecv::build_code(code_spec);
  auto channel = qecv::build_channel(channel_spec);
  auto table = table_for(code_spec);
  auto canonical = qecv::canonical_recovery(code, channel);
  double canonical_worst = qecv::roundtrip_check(code, channel, canonical, trials, seed).worst_infidelity;
  out["canonical_worst_infidelity"] = canonical_worst;
  checks.add(tag + ": canonical recovery worst infidelity < 1e-9", canonical_worst < 1e-9);
  if (table) {
    double table_worst = qecv::roundtrip_check(code, channel, *table, trials, seed).worst_infidelity;
    double agreement = qecv::max_abs_diff(
        qecv::corrected_choi(code, channel, canonical),
        qecv::corrected_choi(code, channel, qecv::to_recovery_channel(*table)));
    out["table_worst_infidelity"] = table_worst;
    out["recovery_agreement"] = agreement;
    out["syndrome_table"] = qecv::to_json(*table);
    checks.add(tag + ": syndrome table worst infidelity < 1e-9", table_worst < 1e-9);
    checks.add(tag + ": table and canonical recoveries agree within 1e-8", agreement < 1e-8);
    auto mc = qecv::monte_carlo_run(code, channel, *table, 10000, seed, 1);
    out["monte_carlo"] = qecv::to_json(mc);
    checks.add(tag + ": Monte Carlo success fraction is exactly 1", mc.success_fraction == 1.0);
  }
  out["trials"] = trials;
  return out;
}

json min_n_json(const std::string &family_name, const qecv::ChannelFamily &family, int k) {
  auto result = qecv::min_n_packing(k, family);
  json out = {{"family", family_name}, {"k", k}, {"min_n", result.n}};
  if (auto ref = reference_min_n(family_name, k)) {
    out["reference_min_n"] = *ref;
    out["matches_reference"] = *ref == result.n;
  }
  return out;
}

json demo_pairwise3(int trials, std::uint64_t seed, Checks &checks) {
  json out = pair_report(code_of("repetition:3"), family_spec("pairwise", 3), trials, seed, checks,
                         "pairwise3");
  const auto &kl = out["kl"];
  checks.add("pairwise3: choi rank 10", kl["rank_choi"] == 10);
  checks.add("pairwise3: correctable and degenerate with rank(M) = 4",
             kl["correctable"] == true && kl["degenerate"] == true && kl["rank_M"] == 4);
  checks.add("pairwise3: packing bound violated (8 < 20)",
             out["bound"]["rhs"] == 20 && out["bound"]["satisfied"] == false);
  out["min_n"] = min_n_json("pairwise", qecv::ChannelFamily::pairwise(), 1);
  checks.add("pairwise3: minimal nondegenerate length 7", out["min_n"]["min_n"] == 7);
  return out;
}

json demo_evenweight5(int trials, std::uint64_t seed, Checks &checks) {
  json out = pair_report(code_of("repetition:5"), family_spec("even_weight", 5), trials, seed,
                         checks, "evenweight5");
  const auto &kl = out["kl"];
  checks.add("evenweight5: correctable and degenerate",
             kl["correctable"] == true && kl["degenerate"] == true);
  checks.add("evenweight5: packing bound violated (32 < 92)",
             out["bound"]["rhs"] == 92 && out["bound"]["satisfied"] == false);
  out["min_n"] = min_n_json("pairwise+quadruple", qecv::ChannelFamily::pairwise_quadruple(), 1);
  out["scan"] = scan_json(qecv::packing_scan(1, qecv::ChannelFamily::pairwise_quadruple(), 5, 16));
  checks.add("evenweight5: pairwise+quadruple minimal length by direct evaluation is 12",
             out["min_n"]["min_n"] == 12);
  return out;
}

json demo_evenweight2m(int trials, std::uint64_t seed, Checks &checks) {
  const int m = 3;
  // Dense simulation at n = 7 dominates the run time, so fewer trials here.
  json out = pair_report(code_of("repetition:7"), family_spec("even_weight", 2 * m + 1),
                         std::min(trials, 20), seed, checks, "evenweight2m");
  const auto &kl = out["kl"];
  checks.add("evenweight2m: m=3 correctable and degenerate",
             kl["correctable"] == true && kl["degenerate"] == true);
  checks.add("evenweight2m: packing bound violated", out["bound"]["satisfied"] == false);
  json lengths = json::array();
  for (int mm = 1; mm <= 4; ++mm) {
    auto r = min_n_json("even_weight", qecv::ChannelFamily::even_weight(mm), 1);
    r["m"] = mm;
    r["repetition_length"] = 2 * mm + 1;
    lengths.push_back(r);
  }
  out["min_n_by_m"] = lengths;
  return out;
}

json demo_triple3(int trials, std::uint64_t seed, Checks &checks) {
  json out = pair_report(code_of("ancilla:3"), family_spec("triple", 3), trials, seed, checks,
                         "triple3");
  const auto &kl = out["kl"];
  checks.add("triple3: correctable and nondegenerate with rank(M) = rank(R_E) = 4",
             kl["correctable"] == true && kl["degenerate"] == false && kl["rank_M"] == 4 &&
                 kl["rank_choi"] == 4);
  checks.add("triple3: packing bound saturated (8 = 2 * 4)",
             out["bound"]["verdict"] == "saturated");
  // Where XX, YY, ZZ send the ancilla pair |0>|+>.
  auto table = qecv::ancilla_recovery(3);
  json map = json::object();
  for (auto letter : {qecv::Pauli::X, qecv::Pauli::Y, qecv::Pauli::Z}) {
    auto error = qecv::PauliString::uniform(letter, {0, 1, 2}, 3);
    qecv::Vector state = qecv::ancilla_code(3).encode(qecv::Vector::Unit(2, 0));
    qecv::Vector hit = error.apply(state);
    std::string label = "none";
    for (const auto &o : table.outcomes)
      if ((o.projector * hit - hit).norm() < 1e-12) label = o.label;
    map[error.letters().substr(1)] = label;
  }
  out["ancilla_syndromes"] = map;
  checks.add("triple3: XX, YY, ZZ map the ancillas to |1+>, |1->, |0->",
             map["XX"] == "1+" && map["YY"] == "1-" && map["ZZ"] == "0-");
  return out;
}

json demo_ancilla_general(int trials, std::uint64_t seed, Checks &checks) {
  json out;
  Checks local;
  out["all_triples"] = check_json(code_of("ancilla:5"), family_spec("triple", 5),
                                  qecv::kDefaultKLTolerance);
  out["all_triples"].erase("command");
  checks.add("ancilla-general: n=5 code fails KL against all triples",
             out["all_triples"]["kl"]["correctable"] == false);
  out["fully_correlated"] = pair_report(code_of("ancilla:5"), family_spec("fully_correlated", 5),
                                        trials, seed, checks, "ancilla-general");
  const auto &full = out["fully_correlated"];
  checks.add("ancilla-general: n=5 code corrects fully correlated noise, nondegenerate",
             full["kl"]["correctable"] == true && full["kl"]["degenerate"] == false);
  checks.add("ancilla-general: bound saturated (32 = 8 * 4)",
             full["bound"]["dim_S"] == 32 && full["bound"]["rhs"] == 32);
  return out;
}

const std::vector<std::string> &demo_names() {
  static const std::vector<std::string> kNames = {"pairwise3", "evenweight5", "evenweight2m",
                                                  "triple3", "ancilla-general"};
  return kNames;
}

json run_demo(const std::string &name, int trials, std::uint64_t seed, Checks &checks) {
  if (name == "pairwise3") return demo_pairwise3(trials, seed, checks);
  if (name == "evenweight5") return demo_evenweight5(trials, seed, checks);
  if (name == "evenweight2m") return demo_evenweight2m(trials, seed, checks);
  if (name == "triple3") return demo_triple3(trials, seed, checks);
  if (name == "ancilla-general") return demo_ancilla_general(trials, seed, checks);
  throw qecv::InvalidInput("unknown demo \"" + name + "\"");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"qecv: verify quantum error-correcting codes against correlated Pauli noise"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  double tol = qecv::kDefaultKLTolerance;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  ChannelFlags rank_flags;
  bool expand = false, explicit_choi = false;
  auto *rank = app.add_subcommand("rank", "Choi rank and minimal Kraus cardinality of a channel");
  add_channel_flags(rank, rank_flags);
  rank->add_flag("--expand", expand, "Print the channel as an explicit term list");
  rank->add_flag("--explicit", explicit_choi, "Also rank the explicit Choi matrix");

  ChannelFlags check_flags;
  std::string check_code, expect;
  auto *check = app.add_subcommand("check", "Knill-Laflamme and packing-bound report");
  add_channel_flags(check, check_flags);
  check->add_option("--code", check_code, "Code: repetition:N, ancilla:N, JSON or file")->required();
  check->add_option("--tol", tol, "KL residual tolerance");
  check->add_option("--expect", expect,
                    "Exit 1 unless: correctable, not-correctable, degenerate, nondegenerate, "
                    "violation, saturated");

  BoundFlags bound_flags;
  auto *bound = app.add_subcommand("bound", "Packing or Hamming bound");
  bound->add_option("kind", bound_flags.kind, "packing or hamming")
      ->required()
      ->check(CLI::IsMember({"packing", "hamming"}));
  bound->add_option("--family", bound_flags.family, "Channel family")
      ->check(CLI::IsMember(qecv::channel_families()));
  bound->add_option("--channel", bound_flags.channel, "Channel spec: inline JSON or file");
  bound->add_option("--n", bound_flags.n, "Code length");
  bound->add_option("--k", bound_flags.k, "Logical qubits");
  bound->add_option("--t", bound_flags.t, "Maximum error weight");
  bound->add_option("--q", bound_flags.q, "Local dimension (hamming)");
  bound->add_option("--m", bound_flags.m, "Half-count for even_weight");
  bound->add_flag("--min-n", bound_flags.min_n, "Smallest n satisfying the bound");
  bound->add_option("--scan", bound_flags.scan, "Evaluate every n in lo:hi");

  ChannelFlags sim_flags;
  SimulateFlags sim;
  auto *simulate = app.add_subcommand("simulate", "Encode, apply noise, recover, measure fidelity");
  add_channel_flags(simulate, sim_flags);
  simulate->add_option("--code", sim.code, "Code: repetition:N, ancilla:N, JSON or file")->required();
  simulate->add_option("--recovery", sim.recovery, "auto, canonical or table")
      ->check(CLI::IsMember({"auto", "canonical", "table"}));
  simulate->add_option("--trials", sim.trials, "Haar-random logical states")->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_flag("--monte-carlo", sim.monte_carlo, "Also run trajectory sampling");
  simulate->add_option("--shots", sim.shots, "Monte Carlo shots");
  simulate->add_option("--threads", sim.threads, "Monte Carlo worker threads (0 = all cores)");
  simulate->add_option("--tol", tol, "KL residual tolerance");

  std::string demo_name;
  bool demo_all = false;
  int demo_trials = 100;
  std::uint64_t demo_seed = 0;
  auto *demo = app.add_subcommand("demo", "Run a worked scenario end to end");
  demo->add_option("name", demo_name, "Scenario")->check(CLI::IsMember(demo_names()));
  demo->add_flag("--all", demo_all, "Run every scenario with its checks");
  demo->add_option("--trials", demo_trials, "Haar-random logical states")->check(CLI::NonNegativeNumber);
  demo->add_option("--seed", demo_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputError;
  }

  int code = kOk;
  json result;
  try {
    if (*rank) {
      result = cmd_rank(rank_flags, expand, explicit_choi);
    } else if (*check) {
      result = check_json(qecv::parse_code_spec(check_code), channel_spec(check_flags), tol);
      if (!expect.empty() && !expectation_met(result, expect)) code = kVerdictNegative;
    } else if (*bound) {
      result = cmd_bound(bound_flags);
    } else if (*simulate) {
      result = simulate_json(qecv::parse_code_spec(sim.code), channel_spec(sim_flags), sim, tol);
    } else if (*demo) {
      if (demo_all == !demo_name.empty())
        throw qecv::InvalidInput("demo needs exactly one of a scenario name or --all");
      Checks checks;
      result = {{"command", "demo"}, {"seed", demo_seed}, {"trials", demo_trials}};
      if (demo_all) {
        json scenarios = json::object();
        for (const auto &name : demo_names())
          scenarios[name] = run_demo(name, demo_trials, demo_seed, checks);
        result["scenarios"] = scenarios;
      } else {
        result["scenario"] = demo_name;
        result["report"] = run_demo(demo_name, demo_trials, demo_seed, checks);
      }
      result["checks"] = checks.rows;
      result["all_passed"] = checks.all;
      if (!checks.all) code = kVerdictNegative;
    }
  } catch (const qecv::GuardExceeded &e) {
    std::cerr << "qecv: resource guard: " << e.what() << "\n";
    return kGuardExceeded;
  } catch (const qecv::NotCorrectable &e) {
    std::cerr << "qecv: " << e.what() << "\n";
    return kVerdictNegative;
  } catch (const std::exception &e) {
    std::cerr << "qecv: error: " << e.what() << "\n";
    return kInputError;
  }

  if (format == "text")
    render_text(result, std::cout);
  else
    std::cout << result.dump(2) << "\n";
  return code;
}

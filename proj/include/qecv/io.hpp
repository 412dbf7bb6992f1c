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

// JSON channel/code specs and report serialization.

#pragma once

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qecv/bounds.hpp"
#include "qecv/channels.hpp"
#include "qecv/codes.hpp"
#include "qecv/kl.hpp"
#include "qecv/recovery.hpp"

namespace qecv {

using json = nlohmann::json;

/// Channel given either as a named family or as explicit Pauli terms.
struct ChannelSpec {
  std::string family;  // empty for explicit terms
  int n = 0;
  std::optional<int> m;                   // even_weight
  std::optional<int> t;                   // weight_bounded
  std::vector<int> weights;               // even_weight subset of {2, ..., 2m}
  std::optional<double> identity_p;       // uniform split with this identity mass
  std::map<std::string, double> probs;    // explicit error probabilities by letters
  std::vector<PauliTerm> terms;           // explicit channel

  bool operator==(const ChannelSpec &o) const {
    if (terms.size() != o.terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (terms[i].p != o.terms[i].p || !(terms[i].op == o.terms[i].op)) return false;
    return family == o.family && n == o.n && m == o.m && t == o.t && weights == o.weights &&
           identity_p == o.identity_p && probs == o.probs;
  }
};

inline const std::vector<std::string> &channel_families() {
  static const std::vector<std::string> kFamilies = {
      "identity", "pairwise", "pairwise+quadruple", "even_weight",
      "triple",   "fully_correlated", "weight_bounded"};
  return kFamilies;
}

namespace detail {

template <typename T>
T get_field(const json &j, const char *key, const char *context) {
  if (!j.contains(key)) throw InvalidInput(std::string(context) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw InvalidInput(std::string(context) + ": bad \"" + key + "\": " + e.what());
  }
}

inline json load_json_text(const std::string &text, const char *context) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw InvalidInput(std::string(context) + ": invalid JSON: " + e.what());
  }
}

inline void reject_unknown_keys(const json &j, std::initializer_list<const char *> allowed,
                                const char *context) {
  for (const auto &[key, value] : j.items()) {
    bool ok = false;
    for (const char *a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidInput(std::string(context) + ": unknown key \"" + key + "\"");
  }
}

}  // namespace detail

/// Reads `source` as inline JSON when it starts with '{', otherwise as a path.
inline json read_json_source(const std::string &source, const char *context) {
  auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{')
    return detail::load_json_text(source, context);
  std::ifstream in(source);
  if (!in) throw InvalidInput(std::string(context) + ": cannot open \"" + source + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return detail::load_json_text(buffer.str(), context);
}

inline ChannelSpec channel_spec_from_json(const json &j) {
  constexpr const char *ctx = "channel spec";
  if (!j.is_object()) throw InvalidInput("channel spec: expected an object");
  ChannelSpec s;
  if (j.contains("family")) {
    detail::reject_unknown_keys(j, {"family", "n", "params"}, ctx);
    s.family = detail::get_field<std::string>(j, "family", ctx);
    if (std::find(channel_families().begin(), channel_families().end(), s.family) ==
        channel_families().end())
      throw InvalidInput("channel spec: unknown family \"" + s.family + "\"");
    if (j.contains("n")) s.n = detail::get_field<int>(j, "n", ctx);
    const json params = j.value("params", json::object());
    if (!params.is_object()) throw InvalidInput("channel spec: \"params\" must be an object");
    detail::reject_unknown_keys(params, {"m", "t", "weights", "identity_p", "probs"}, ctx);
    if (params.contains("m")) s.m = detail::get_field<int>(params, "m", ctx);
    if (params.contains("t")) s.t = detail::get_field<int>(params, "t", ctx);
    if (params.contains("weights"))
      s.weights = detail::get_field<std::vector<int>>(params, "weights", ctx);
    if (params.contains("identity_p"))
      s.identity_p = detail::get_field<double>(params, "identity_p", ctx);
    if (params.contains("probs")) {
      s.probs = detail::get_field<std::map<std::string, double>>(params, "probs", ctx);
      for (const auto &[letters, p] : s.probs)
        if (letters.empty() || letters.find_first_not_of("IXYZ") != std::string::npos)
          throw InvalidInput("channel spec: probs key \"" + letters +
                             "\" must be a string over I, X, Y, Z");
    }
    if (s.family == "even_weight") {
      if (!s.m && s.n > 0) {
        if (s.n % 2 == 0) throw InvalidInput("channel spec: even_weight needs odd n = 2m+1");
        s.m = (s.n - 1) / 2;
      }
      if (!s.m) throw InvalidInput("channel spec: even_weight needs \"m\" or \"n\"");
      if (s.n == 0) s.n = 2 * *s.m + 1;
      if (s.n != 2 * *s.m + 1)
        throw InvalidInput("channel spec: even_weight with m=" + std::to_string(*s.m) +
                           " acts on n=" + std::to_string(2 * *s.m + 1) + " qubits");
    }
    if (s.family == "weight_bounded" && !s.t)
      throw InvalidInput("channel spec: weight_bounded needs \"t\"");
    if (s.n <= 0) throw InvalidInput("channel spec: \"n\" must be positive");
  } else {
    detail::reject_unknown_keys(j, {"n", "terms"}, ctx);
    s.n = detail::get_field<int>(j, "n", ctx);
    if (s.n <= 0) throw InvalidInput("channel spec: \"n\" must be positive");
    const json terms = detail::get_field<json>(j, "terms", ctx);
    if (!terms.is_array() || terms.empty())
      throw InvalidInput("channel spec: \"terms\" must be a non-empty array");
    for (const auto &term : terms) {
      if (!term.is_object()) throw InvalidInput("channel spec: each term must be an object");
      detail::reject_unknown_keys(term, {"p", "op"}, ctx);
      s.terms.push_back({detail::get_field<double>(term, "p", ctx),
                         PauliString::parse(detail::get_field<std::string>(term, "op", ctx))});
    }
  }
  return s;
}

inline json to_json(const ChannelSpec &s) {
  if (s.family.empty()) {
    json terms = json::array();
    for (const auto &t : s.terms) terms.push_back({{"p", t.p}, {"op", t.op.str()}});
    return {{"n", s.n}, {"terms", terms}};
  }
  json params = json::object();
  if (s.m) params["m"] = *s.m;
  if (s.t) params["t"] = *s.t;
  if (!s.weights.empty()) params["weights"] = s.weights;
  if (s.identity_p) params["identity_p"] = *s.identity_p;
  if (!s.probs.empty()) params["probs"] = s.probs;
  json out = {{"family", s.family}, {"n", s.n}};
  if (!params.empty()) out["params"] = params;
  return out;
}

inline NoiseWeights noise_weights(const ChannelSpec &s) {
  if (!s.probs.empty()) {
    if (s.identity_p)
      throw InvalidInput("channel spec: \"identity_p\" and \"probs\" are mutually exclusive");
    std::map<std::string, double> probs = s.probs;
    for (const auto &[letters, p] : probs)
      if (static_cast<int>(PauliString::parse(letters).num_qubits()) != s.n)
        throw InvalidInput("channel spec: probs key \"" + letters + "\" has wrong length");
    return ErrorWeight([probs](const PauliString &op) {
      auto it = probs.find(op.letters());
      return it == probs.end() ? 0.0 : it->second;
    });
  }
  return UniformNoise{s.identity_p.value_or(0.5)};
}

inline PauliChannel build_channel(const ChannelSpec &s) {
  if (s.family.empty()) return PauliChannel(s.n, s.terms);
  const NoiseWeights noise = noise_weights(s);
  if (s.family == "identity") return PauliChannel::identity(s.n);
  if (s.family == "pairwise") return pairwise_correlated(s.n, noise);
  if (s.family == "pairwise+quadruple") {
    if (s.n < 4) throw InvalidInput("pairwise+quadruple family needs at least 4 qubits");
    return correlated_channel(s.n, {2, 4}, noise);
  }
  if (s.family == "even_weight") return even_weight_correlated(*s.m, noise, s.weights);
  if (s.family == "triple") return triple_correlated(s.n, noise);
  if (s.family == "fully_correlated") return fully_correlated(s.n, noise);
  if (s.family == "weight_bounded") return weight_bounded(s.n, *s.t, noise);
  throw InvalidInput("channel spec: unknown family \"" + s.family + "\"");
}

/// Closed-form rank family for a named spec, when one exists.
inline std::optional<ChannelFamily> closed_form_family(const std::string &name, int m = 0,
                                                       int t = 0) {
  if (name == "pairwise") return ChannelFamily::pairwise();
  if (name == "pairwise+quadruple") return ChannelFamily::pairwise_quadruple();
  if (name == "even_weight") return ChannelFamily::even_weight(m);
  if (name == "triple") return ChannelFamily::triple();
  if (name == "fully_correlated") return ChannelFamily::fully_correlated();
  if (name == "weight_bounded") return ChannelFamily::weight_bounded(t);
  return std::nullopt;
}

/// Term-list form of any spec.
inline ChannelSpec expand(const ChannelSpec &s) {
  PauliChannel c = build_channel(s);
  ChannelSpec out;
  out.n = c.num_qubits();
  out.terms = c.terms();
  return out;
}

// ---------------------------------------------------------------------------
// Codes

struct CodeSpec {
  std::string family;  // "repetition", "ancilla", or empty for explicit codewords
  int n = 0;
  int k = 0;
  std::vector<Vector> codewords;
};

inline CodeSpec code_spec_from_json(const json &j) {
  constexpr const char *ctx = "code spec";
  if (!j.is_object()) throw InvalidInput("code spec: expected an object");
  CodeSpec s;
  if (j.contains("family")) {
    detail::reject_unknown_keys(j, {"family", "n"}, ctx);
    s.family = detail::get_field<std::string>(j, "family", ctx);
    s.n = detail::get_field<int>(j, "n", ctx);
    if (s.family == "repetition") {
      if (s.n < 3 || s.n % 2 == 0)
        throw InvalidInput("code spec: repetition code needs odd n >= 3");
      s.k = 1;
    } else if (s.family == "ancilla") {
      if (s.n < 3) throw InvalidInput("code spec: ancilla code needs n >= 3");
      s.k = s.n - 2;
    } else {
      throw InvalidInput("code spec: unknown family \"" + s.family + "\"");
    }
    return s;
  }
  detail::reject_unknown_keys(j, {"n", "k", "codewords"}, ctx);
  s.n = detail::get_field<int>(j, "n", ctx);
  s.k = detail::get_field<int>(j, "k", ctx);
  if (s.n < 0 || s.n > dense_qubit_limit())
    throw InvalidInput("code spec: n outside supported range");
  const json words = detail::get_field<json>(j, "codewords", ctx);
  if (!words.is_array()) throw InvalidInput("code spec: \"codewords\" must be an array");
  for (const auto &word : words) {
    if (!word.is_array() || word.size() != (std::size_t{1} << s.n))
      throw InvalidInput("code spec: each codeword needs 2^n amplitudes");
    Vector v(static_cast<Eigen::Index>(word.size()));
    for (std::size_t i = 0; i < word.size(); ++i) {
      const auto &amp = word[i];
      if (!amp.is_array() || amp.size() != 2 || !amp[0].is_number() || !amp[1].is_number())
        throw InvalidInput("code spec: amplitudes must be [re, im] pairs");
      v(static_cast<Eigen::Index>(i)) = cplx(amp[0].get<double>(), amp[1].get<double>());
    }
    s.codewords.push_back(std::move(v));
  }
  if (s.codewords.size() != (std::size_t{1} << s.k))
    throw InvalidInput("code spec: expected 2^k codewords");
  return s;
}

/// "repetition:5", "ancilla:3", inline JSON, or a JSON file path.
inline CodeSpec parse_code_spec(const std::string &text) {
  for (const char *family : {"repetition", "ancilla"}) {
    std::string prefix = std::string(family) + ":";
    if (text.rfind(prefix, 0) == 0) {
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(text.substr(prefix.size()), &used);
        if (used != text.size() - prefix.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception &) {
        throw InvalidInput("code spec: bad qubit count in \"" + text + "\"");
      }
      return code_spec_from_json({{"family", family}, {"n", n}});
    }
  }
  return code_spec_from_json(read_json_source(text, "code spec"));
}

inline CodeSpace build_code(const CodeSpec &s) {
  if (s.family == "repetition") return repetition_code((s.n - 1) / 2);
  if (s.family == "ancilla") return ancilla_code(s.n);
  CodeSpace code = from_codewords(s.codewords);
  if (code.n() != s.n || code.k() != s.k)
    throw InvalidInput("code spec: codewords do not match n and k");
  return code;
}

inline json to_json(const CodeSpec &s) {
  if (!s.family.empty()) return {{"family", s.family}, {"n", s.n}};
  json words = json::array();
  for (const auto &v : s.codewords) {
    json w = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) w.push_back({v(i).real(), v(i).imag()});
    words.push_back(w);
  }
  return {{"n", s.n}, {"k", s.k}, {"codewords", words}};
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const Matrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

/// Exact integer as a JSON number when it fits 64 bits, else a decimal string.
inline json big_to_json(const BigInt &v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max()))
    return static_cast<std::uint64_t>(v);
  return v.str();
}

inline json to_json(const KLReport &r) {
  return {{"M", to_json(r.M)},
          {"residual", r.residual},
          {"tolerance", r.tolerance},
          {"correctable", r.correctable},
          {"degenerate", r.degenerate},
          {"rank_M", r.rank_M},
          {"rank_choi", r.rank_choi},
          {"kraus_supplied", r.kraus_supplied},
          {"minimized", r.minimized}};
}

inline std::string bound_verdict(const BoundReport &r) {
  if (!r.satisfied) return "violated";
  return r.saturated() ? "saturated" : "satisfied";
}

inline json to_json(const BoundReport &r) {
  json out = {{"kind", to_string(r.kind)},
              {"n", r.n},
              {"k", r.k},
              {"rank", big_to_json(r.rank)},
              {"dim_S", big_to_json(r.dim_S)},
              {"dim_Q", big_to_json(r.dim_Q)},
              {"rhs", big_to_json(r.rhs)},
              {"satisfied", r.satisfied},
              {"verdict", bound_verdict(r)}};
  if (r.q != 2) out["q"] = r.q;
  return out;
}

inline json to_json(const ViolationReport &r) {
  return {{"kl", to_json(r.kl)}, {"bound", to_json(r.bound)}, {"verdict", to_string(r.verdict)}};
}

inline json to_json(const RoundtripResult &r) {
  return {{"worst_infidelity", r.worst_infidelity}, {"trials", r.trials}, {"seed", r.seed}};
}

inline json to_json(const MonteCarloResult &r) {
  json counts = json::object();
  for (const auto &[label, count] : r.outcome_counts)
    if (count > 0) counts[label] = count;
  json out = {{"shots", r.shots},
              {"successes", r.successes},
              {"success_fraction", r.success_fraction},
              {"outcome_counts", counts}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

inline json to_json(const SyndromeTable &t) {
  json rows = json::array();
  for (const auto &o : t.outcomes)
    rows.push_back({{"label", o.label}, {"qubits", o.qubits}, {"correction", o.correction.str()}});
  return {{"n", t.n}, {"outcomes", rows}};
}

}  // namespace qecv

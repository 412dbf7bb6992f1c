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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "qecv/io.hpp"

using namespace qecv;

namespace {

ChannelSpec parse(const std::string &text) {
  return channel_spec_from_json(read_json_source(text, "test"));
}

bool same_terms(const PauliChannel &a, const PauliChannel &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.terms()[i].p != b.terms()[i].p || !(a.terms()[i].op == b.terms()[i].op)) return false;
  return true;
}

}  // namespace

TEST(io, family_specs) {
  auto s = parse(R"({"family": "pairwise", "n": 3})");
  EXPECT_EQ(build_channel(s).size(), 10u);
  auto even = parse(R"({"family": "even_weight", "n": 5, "params": {"weights": [4]}})");
  EXPECT_EQ(even.m, 2);
  EXPECT_EQ(build_channel(even).size(), 16u);
  auto probs = parse(R"({"family": "pairwise", "n": 2, "params": {"probs": {"ZZ": 0.25}}})");
  auto c = build_channel(probs);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c.terms()[0].p, 0.75);
  auto wb = parse(R"({"family": "weight_bounded", "n": 5, "params": {"t": 1, "identity_p": 0.9}})");
  EXPECT_EQ(build_channel(wb).size(), 16u);
  EXPECT_EQ(build_channel(parse(R"({"family": "identity", "n": 4})")).size(), 1u);
}

TEST(io, explicit_terms) {
  auto s = parse(R"({"n": 2, "terms": [{"p": 0.5, "op": "II"}, {"p": 0.5, "op": "-ZZ"}]})");
  auto c = build_channel(s);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(choi_rank(c), 2);
}

TEST(io, spec_roundtrip_property) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    ChannelSpec s;
    switch (rng() % 4) {
      case 0:
        s.family = "pairwise";
        s.n = 2 + static_cast<int>(rng() % 5);
        s.identity_p = std::uniform_real_distribution<double>(0, 1)(rng);
        break;
      case 1:
        s.family = "even_weight";
        s.m = 1 + static_cast<int>(rng() % 2);
        s.n = 2 * *s.m + 1;
        s.weights = {2};
        break;
      case 2:
        s.family = "weight_bounded";
        s.n = 1 + static_cast<int>(rng() % 4);
        s.t = static_cast<int>(rng() % (s.n + 1));
        break;
      default: {
        s.n = 1 + static_cast<int>(rng() % 4);
        double p = std::uniform_real_distribution<double>(0, 1)(rng);
        std::string letters;
        for (int q = 0; q < s.n; ++q) letters += "XYZ"[rng() % 3];
        s.terms = {{p, PauliString(s.n)}, {1 - p, PauliString::parse(letters)}};
      }
    }
    ChannelSpec back = channel_spec_from_json(json::parse(to_json(s).dump()));
    EXPECT_EQ(back, s) << to_json(s).dump();
    // Expanding to explicit terms preserves the channel exactly.
    ChannelSpec expanded = channel_spec_from_json(json::parse(to_json(expand(s)).dump()));
    EXPECT_TRUE(same_terms(build_channel(expanded), build_channel(s))) << to_json(s).dump();
  }
}

TEST(io, spec_errors) {
  EXPECT_THROW(parse("{not json"), InvalidInput);
  EXPECT_THROW(parse(R"({"family": "quintuple", "n": 3})"), InvalidInput);
  EXPECT_THROW(parse(R"({"family": "pairwise", "n": 3, "extra": 1})"), InvalidInput);
  EXPECT_THROW(parse(R"({"family": "pairwise", "n": 3, "params": {"q": 1}})"), InvalidInput);
  EXPECT_THROW(parse(R"({"family": "even_weight", "n": 4})"), InvalidInput);
  EXPECT_THROW(parse(R"({"family": "weight_bounded", "n": 4})"), InvalidInput);
  EXPECT_THROW(parse(R"({"family": "pairwise", "n": "three"})"), InvalidInput);
  EXPECT_THROW(parse(R"({"n": 2, "terms": []})"), InvalidInput);
  EXPECT_THROW(parse(R"({"n": 2, "terms": [{"p": 1.0, "op": "IQ"}]})"), InvalidInput);
  EXPECT_THROW(build_channel(parse(R"({"n": 2, "terms": [{"p": 0.7, "op": "II"}]})")),
               InvalidInput);
  EXPECT_THROW(build_channel(parse(R"({"n": 2, "terms": [{"p": 1.0, "op": "III"}]})")),
               InvalidInput);
  EXPECT_THROW(
      build_channel(parse(R"({"family": "pairwise", "n": 2, "params": {"probs": {"ZZ": 2.0}}})")),
      InvalidInput);
  EXPECT_THROW(parse("/nonexistent/spec.json"), InvalidInput);
}

TEST(io, spec_from_file) {
  const std::string path = ::testing::TempDir() + "qecv_channel.json";
  {
    std::ofstream out(path);
    out << R"({"family": "triple", "n": 4})";
  }
  EXPECT_EQ(build_channel(parse(path)).size(), 13u);
  std::remove(path.c_str());
}

TEST(io, code_specs) {
  EXPECT_EQ(build_code(parse_code_spec("repetition:5")).n(), 5);
  auto anc = build_code(parse_code_spec("ancilla:4"));
  EXPECT_EQ(anc.k(), 2);
  auto inline_code = parse_code_spec(
      R"({"n": 1, "k": 1, "codewords": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]})");
  auto code = build_code(inline_code);
  EXPECT_EQ(code.n(), 1);
  EXPECT_LT(std::abs(code.isometry()(1, 1) - cplx(0, 1)), 1e-15);
  auto back = code_spec_from_json(json::parse(to_json(inline_code).dump()));
  EXPECT_EQ(back.codewords.size(), 2u);
  EXPECT_TRUE(back.codewords[1] == inline_code.codewords[1]);

  EXPECT_THROW(parse_code_spec("repetition:4"), InvalidInput);
  EXPECT_THROW(parse_code_spec("repetition:x"), InvalidInput);
  EXPECT_THROW(parse_code_spec("ancilla:2"), InvalidInput);
  EXPECT_THROW(parse_code_spec(R"({"family": "steane", "n": 7})"), InvalidInput);
  EXPECT_THROW(parse_code_spec(R"({"n": 1, "k": 1, "codewords": [[[1, 0], [0, 0]]]})"),
               InvalidInput);
  EXPECT_THROW(build_code(parse_code_spec(
                   R"({"n": 1, "k": 1, "codewords": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]]})")),
               InvalidInput);
}

TEST(io, report_serialization) {
  auto report = violation_report(repetition_code(1), pairwise_correlated(3));
  json j = to_json(report);
  EXPECT_EQ(j["kl"]["rank_M"], 4);
  EXPECT_EQ(j["kl"]["rank_choi"], 10);
  EXPECT_EQ(j["bound"]["rhs"], 20);
  EXPECT_EQ(j["bound"]["verdict"], "violated");
  EXPECT_EQ(j["verdict"], "packing-bound violation by degenerate code");
  // Integers beyond 64 bits are written as strings.
  EXPECT_EQ(big_to_json(pow_int(2, 70)), "1180591620717411303424");
  EXPECT_EQ(big_to_json(BigInt(12)), 12);
  json table = to_json(repetition_syndrome_table(1));
  EXPECT_EQ(table["outcomes"].size(), 4u);
}

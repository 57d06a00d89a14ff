// Copyright 2026 The PPS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "fakes.hpp"
#include "generators.hpp"
#include "pps/judge.hpp"
#include "pps/unicode.hpp"

namespace pps {
namespace {

using testing::ScriptedBackend;

ModelEndpoint judge_endpoint() {
  ModelEndpoint e;
  e.model_id = "judge/model";
  e.base_url = "http://judge.invalid";
  e.auth_ref = "JUDGE_KEY";
  return e;
}

class Truncation : public ::testing::TestWithParam<std::size_t> {};

TEST_P(Truncation, CutsAtExactlyEightThousandScalars) {
  std::size_t const length = GetParam();
  testing::Rng rng(length);
  auto const output = testing::mixed_script(rng, length);
  ASSERT_EQ(unicode::scalar_count(output), length);
  ASSERT_GT(output.size(), length);  // multi-byte content

  auto const prompt = build_judge_prompt("Write a guide", output, Language::kZh);
  std::size_t const expected = std::min(length, kJudgeExcerptScalars);
  EXPECT_EQ(unicode::scalar_count(prompt.excerpt), expected);
  EXPECT_EQ(prompt.truncated, length > kJudgeExcerptScalars);
  EXPECT_TRUE(unicode::is_valid_utf8(prompt.excerpt));
  EXPECT_EQ(output.compare(0, prompt.excerpt.size(), prompt.excerpt), 0);
  EXPECT_NE(prompt.text.find(prompt.excerpt), std::string::npos);
}

INSTANTIATE_TEST_SUITE_P(Boundary, Truncation,
                         ::testing::Values(std::size_t{7999}, std::size_t{8000},
                                           std::size_t{8001}));

TEST(JudgePrompt, EmbedsTaskNotSpec) {
  auto const p = build_judge_prompt("Write a Tokyo travel guide", "Day 1: Asakusa",
                                    Language::kEn);
  EXPECT_NE(p.text.find("Write a Tokyo travel guide"), std::string::npos);
  EXPECT_NE(p.text.find("Day 1: Asakusa"), std::string::npos);
  EXPECT_EQ(p.text.find("{{"), std::string::npos);
  EXPECT_FALSE(p.truncated);
  EXPECT_THROW(build_judge_prompt("", "x", Language::kEn), RenderError);
  EXPECT_THROW(build_judge_prompt("x", "", Language::kEn), RenderError);
}

TEST(ParseVerdict, CanonicalForm) {
  auto const v = parse_verdict("SCORE: 4\nREASONING: Covers most of it.");
  EXPECT_EQ(v.score, 4);
  EXPECT_EQ(v.reasoning, "Covers most of it.");
}

TEST(ParseVerdict, ToleratesFormattingVariants) {
  EXPECT_EQ(parse_verdict("**Score:** 5\n**Reasoning:** fine").score, 5);
  EXPECT_EQ(parse_verdict("score：3\nreasoning：部分的").reasoning, "部分的");
  EXPECT_EQ(parse_verdict("## SCORE: *2*\nREASONING:\nline one\nline two").reasoning,
            "line one\nline two");
  auto const v = parse_verdict("Here you go.\nSCORE: 1\nOff topic entirely.");
  EXPECT_EQ(v.score, 1);
  EXPECT_EQ(v.reasoning, "Here you go.\nOff topic entirely.");
}

TEST(ParseVerdict, RejectsOutOfRangeAndNonIntegerScores) {
  for (const char* reply :
       {"SCORE: 0\nREASONING: x", "SCORE: 6\nREASONING: x", "SCORE: 4.5\nREASONING: x",
        "SCORE: 4/5\nREASONING: x", "SCORE: four\nREASONING: x", "SCORE: -3\nREASONING: x",
        "SCORE: 3 4\nREASONING: x", "SCORE:\nREASONING: x", "REASONING: no score",
        "SCORE: 3\nSCORE: 4\nREASONING: two", "", "5"}) {
    EXPECT_THROW(parse_verdict(reply), MalformedVerdictError) << reply;
  }
}

TEST(ParseVerdict, ScoreAfterReasoningIsIgnored) {
  EXPECT_THROW(parse_verdict("REASONING: good\nSCORE: 4"), MalformedVerdictError);
}

TEST(Judge, RetriesOnceThenFails) {
  auto backend = ScriptedBackend::queue({"I think it is good", "SCORE: 4\nREASONING: ok"});
  auto const eval = judge("task", "output", Language::kEn, judge_endpoint(), backend);
  EXPECT_EQ(eval.score, 4);
  EXPECT_EQ(eval.judge_model_id, "judge/model");
  ASSERT_EQ(backend.calls(), 2u);
  auto const reqs = backend.requests();
  EXPECT_EQ(reqs[0].temperature, 0.0);
  EXPECT_TRUE(reqs[1].user_text.starts_with(reqs[0].user_text));
  EXPECT_GT(reqs[1].user_text.size(), reqs[0].user_text.size());

  auto bad = ScriptedBackend::queue({"SCORE: 9", "SCORE: 0"});
  EXPECT_THROW(judge("task", "output", Language::kEn, judge_endpoint(), bad),
               MalformedVerdictError);
  EXPECT_EQ(bad.calls(), 2u);
}

TEST(Judge, ReportsTruncation) {
  testing::Rng rng(1);
  auto backend = ScriptedBackend::queue({"SCORE: 3\nREASONING: long"});
  auto const eval = judge("task", testing::mixed_script(rng, 9000), Language::kJa,
                          judge_endpoint(), backend);
  EXPECT_TRUE(eval.truncated);
}

TEST(Judge, IndependenceCheck) {
  EXPECT_NO_THROW(check_judge_independence("judge/model", {"a", "b"}));
  EXPECT_THROW(check_judge_independence("a", {"a", "b"}), ConfigError);
}

}  // namespace
}  // namespace pps

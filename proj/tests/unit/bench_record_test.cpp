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

#include <json.hpp>

#include "fixtures.hpp"
#include "generators.hpp"
#include "pps/bench_record.hpp"

namespace pps {
namespace {

using testing::Rng;
using testing::TempDir;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Writes records as CSV with the columns in a shuffled order.
std::string to_csv(const std::vector<BenchRecord>& records, Rng& rng) {
  std::vector<std::string> columns = {
      "record_id", "model_id",        "language",         "condition",
      "domain",    "task_id",         "prompt_text",      "output_text",
      "ga_score",  "judge_reasoning", "spec_fingerprint", "created_at"};
  std::shuffle(columns.begin(), columns.end(), rng.engine());
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\r\n";
  for (auto const& r : records) {
    auto const doc = nlohmann::json::parse(record_to_json(r));
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      auto const it = doc.find(columns[i]);
      if (it == doc.end()) continue;
      out += csv_field(it->is_string() ? it->get<std::string>() : it->dump());
    }
    out += "\r\n";
  }
  return out;
}

BenchRecord sample() {
  BenchRecord r;
  r.record_id = "m/en/A/t1";
  r.model_id = "m";
  r.language = Language::kEn;
  r.condition = ConditionId::kA;
  r.domain = Domain::kTravel;
  r.task_id = "t1";
  r.prompt_text = "Write a guide";
  r.output_text = "Day 1";
  r.ga_score = 4;
  r.created_at = "2026-03-01T09:00:00Z";
  return r;
}

TEST(Record, JsonIsCompactSortedAndOmitsAbsentOptionals) {
  EXPECT_EQ(record_to_json(sample()),
            R"({"condition":"A","created_at":"2026-03-01T09:00:00Z","domain":"travel",)"
            R"("ga_score":4,"language":"en","model_id":"m","output_text":"Day 1",)"
            R"("prompt_text":"Write a guide","record_id":"m/en/A/t1","task_id":"t1"})");
}

TEST(Record, Validation) {
  EXPECT_TRUE(validate_record(sample()).empty());
  for (int bad : {0, 6, -1}) {
    auto r = sample();
    r.ga_score = bad;
    ASSERT_EQ(validate_record(r).size(), 1u) << bad;
    EXPECT_EQ(validate_record(r)[0].field, "ga_score");
  }
  auto r = sample();
  r.spec_fingerprint = "abc";
  r.created_at = "2026-02-30T00:00:00Z";
  r.record_id.clear();
  EXPECT_EQ(validate_record(r).size(), 3u);
}

TEST(RoundTripProperty, PersistThenIngestJsonl) {
  Rng rng(31337);
  TempDir dir;
  for (int round = 0; round < 20; ++round) {
    std::vector<BenchRecord> records;
    for (std::size_t i = 0; i < 60; ++i) records.push_back(testing::random_record(rng, i));
    auto const path = dir / "records.jsonl";
    persist(records, path);
    auto const back = ingest(path);
    ASSERT_TRUE(back.report.valid()) << format_violations(back.report.violations);
    ASSERT_EQ(back.records, records) << "round " << round;
    ASSERT_EQ(serialize_records(back.records), testing::read_file(path));
  }
}

TEST(RoundTripProperty, CsvWithMultilineFields) {
  Rng rng(2718);
  TempDir dir;
  for (int round = 0; round < 20; ++round) {
    std::vector<BenchRecord> records;
    for (std::size_t i = 0; i < 40; ++i) records.push_back(testing::random_record(rng, i));
    auto const path = dir / "records.CSV";
    testing::write_file(path, to_csv(records, rng));
    auto const back = ingest(path);
    ASSERT_TRUE(back.report.valid()) << format_violations(back.report.violations);
    ASSERT_EQ(back.records, records) << "round " << round;
  }
}

TEST(Ingest, ReportsLineNumbersAndKeepsValidRows) {
  auto good = sample();
  auto second = sample();
  second.task_id = "t2";
  second.record_id = "m/en/A/t2";
  std::string text = record_to_json(good) + "\n" +
                     "\n" +                                              // 2: blank
                     R"({"record_id": "x", "ga_score": 9})" + "\n" +     // 3: bad
                     "{not json\n" +                                     // 4
                     record_to_json(good) + "\n" +                       // 5: duplicate
                     record_to_json(second) + "\n";                      // 6
  auto const result = ingest_text(text, RecordFormat::kJsonl);
  ASSERT_EQ(result.records.size(), 2u);
  EXPECT_EQ(result.records[1].task_id, "t2");
  std::set<std::size_t> lines;
  for (auto const& v : result.report.violations) lines.insert(v.line);
  EXPECT_EQ(lines, (std::set<std::size_t>{3, 4, 5}));
  EXPECT_TRUE(std::is_sorted(result.report.violations.begin(), result.report.violations.end(),
                             [](auto const& a, auto const& b) { return a.line < b.line; }));
}

TEST(Ingest, UnknownFieldsAndFloatScoresAreViolations) {
  auto j = nlohmann::json::parse(record_to_json(sample()));
  j["colour"] = "red";
  auto r = ingest_text(j.dump() + "\n", RecordFormat::kJsonl);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.report.violations.at(0).field, "colour");

  j.erase("colour");
  j["ga_score"] = 4.5;
  r = ingest_text(j.dump() + "\n", RecordFormat::kJsonl);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.report.violations.at(0).field, "ga_score");
}

TEST(Ingest, NothingParsesIsParseError) {
  EXPECT_THROW(ingest_text("{oops\n[1]\n", RecordFormat::kJsonl), ParseError);
  EXPECT_THROW(ingest_text("a,b\n\"unterminated\n", RecordFormat::kCsv), ParseError);
  EXPECT_TRUE(ingest_text("", RecordFormat::kJsonl).records.empty());
}

TEST(Ingest, MissingFileIsIoError) {
  EXPECT_THROW(ingest("/nonexistent/records.jsonl"), IoError);
}

TEST(Ingest, CsvQuotedNewlinesTrackStartLine) {
  std::string const csv =
      "record_id,model_id,language,condition,domain,task_id,prompt_text,ga_score,created_at\n"
      "r1,m,zh,C,business,t1,\"line one\nline two, with comma\",5,2026-03-01T09:00:00Z\n"
      "r2,m,zh,C,business,t2,\"say \"\"hi\"\"\",7,2026-03-01T09:00:00Z\n";
  auto const r = ingest_text(csv, RecordFormat::kCsv);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].prompt_text, "line one\nline two, with comma");
  EXPECT_FALSE(r.records[0].output_text);
  ASSERT_EQ(r.report.violations.size(), 1u);
  EXPECT_EQ(r.report.violations[0].line, 4u);
  EXPECT_EQ(r.report.violations[0].field, "ga_score");
}

TEST(Mapping, RenamesAndDropsForeignColumns) {
  auto const mapping = FieldMapping::parse(
      "# foreign export\nid = record_id\nmodel = model_id\nlang = language\n"
      "cond = condition\nscore = ga_score\nnotes = -\n",
      "mapping.txt");
  EXPECT_EQ(mapping.map("score"), "ga_score");
  EXPECT_EQ(mapping.map("domain"), "domain");
  EXPECT_EQ(mapping.map("notes"), "");
  std::string const csv =
      "id,model,lang,cond,domain,task_id,prompt_text,score,created_at,notes\n"
      "r1,m,ja,F,technical,t1,p,3,2026-03-01T09:00:00Z,ignored\n";
  auto const r = ingest_text(csv, RecordFormat::kCsv, &mapping);
  ASSERT_EQ(r.records.size(), 1u) << format_violations(r.report.violations);
  EXPECT_EQ(r.records[0].condition, ConditionId::kF);
  EXPECT_EQ(r.records[0].ga_score, 3);

  EXPECT_THROW(FieldMapping::parse("x = nonsense\n", "m"), ConfigError);
  EXPECT_THROW(FieldMapping::parse("x = ga_score\nx = task_id\n", "m"), ConfigError);
}

TEST(Filter, EmptySetsMatchEverything) {
  Rng rng(4);
  std::vector<BenchRecord> records;
  for (std::size_t i = 0; i < 200; ++i) records.push_back(testing::random_record(rng, i));
  EXPECT_EQ(filter(records, {}).size(), records.size());

  RecordFilter f;
  f.languages = {Language::kJa};
  f.conditions = {ConditionId::kD, ConditionId::kA};
  auto const picked = filter(records, f);
  std::size_t expected = 0;
  for (auto const& r : records) {
    bool const match = r.language == Language::kJa &&
                       (r.condition == ConditionId::kD || r.condition == ConditionId::kA);
    expected += match;
    EXPECT_EQ(f.matches(r), match);
  }
  EXPECT_EQ(picked.size(), expected);
}

TEST(Format, ChosenByExtension) {
  EXPECT_EQ(format_for("x.csv"), RecordFormat::kCsv);
  EXPECT_EQ(format_for("x.Csv"), RecordFormat::kCsv);
  EXPECT_EQ(format_for("x.jsonl"), RecordFormat::kJsonl);
  EXPECT_EQ(format_for("x"), RecordFormat::kJsonl);
}

}  // namespace
}  // namespace pps

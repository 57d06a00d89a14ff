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

#include "pps/bench_record.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <regex>
#include <tuple>

#include "csv.hpp"
#include "pps/conditions.hpp"
#include "pps/sha256.hpp"
#include "pps/unicode.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 12> kFields = {
    "record_id",   "model_id",        "language",         "condition",
    "domain",      "task_id",         "prompt_text",      "output_text",
    "ga_score",    "judge_reasoning", "spec_fingerprint", "created_at"};

bool is_field(std::string_view name) {
  return std::find(kFields.begin(), kFields.end(), name) != kFields.end();
}

bool is_optional(std::string_view name) {
  return name == "output_text" || name == "judge_reasoning" ||
         name == "spec_fingerprint";
}

// Reads one row, already keyed by record field names. Values are JSON values
// for JSONL rows and strings for CSV rows (`textual`).
std::optional<BenchRecord> record_from_object(const json& obj, bool textual,
                                              std::size_t line,
                                              std::vector<Violation>& out) {
  std::size_t const before = out.size();
  auto fail = [&](std::string field, std::string message) {
    out.push_back({std::move(field), std::move(message), line});
  };

  for (auto const& [key, value] : obj.items()) {
    if (!is_field(key)) fail(key, "unknown field");
  }

  auto text = [&](std::string_view name) -> std::optional<std::string> {
    auto it = obj.find(std::string(name));
    bool const absent = it == obj.end() || it->is_null() ||
                        (textual && is_optional(name) && it->get_ref<const std::string&>().empty());
    if (absent) {
      if (!is_optional(name)) fail(std::string(name), "required field is missing");
      return std::nullopt;
    }
    if (!it->is_string()) {
      fail(std::string(name), "expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  };

  BenchRecord r;
  auto const record_id = text("record_id");
  auto const model_id = text("model_id");
  auto const language = text("language");
  auto const condition = text("condition");
  auto const domain = text("domain");
  auto const task_id = text("task_id");
  auto const prompt_text = text("prompt_text");
  r.output_text = text("output_text");
  r.judge_reasoning = text("judge_reasoning");
  r.spec_fingerprint = text("spec_fingerprint");
  auto const created_at = text("created_at");

  if (record_id) r.record_id = *record_id;
  if (model_id) r.model_id = *model_id;
  if (task_id) r.task_id = *task_id;
  if (prompt_text) r.prompt_text = *prompt_text;
  if (created_at) r.created_at = *created_at;
  if (language) {
    if (auto l = parse_language(*language); l && *language == to_string(*l)) {
      r.language = *l;
    } else {
      fail("language", "unknown language code '" + unicode::sanitize(*language) + "'");
    }
  }
  if (condition) {
    if (auto c = parse_condition(*condition)) {
      r.condition = *c;
    } else {
      fail("condition", "unknown condition '" + unicode::sanitize(*condition) + "'");
    }
  }
  if (domain) {
    if (auto d = parse_domain(*domain)) {
      r.domain = *d;
    } else {
      fail("domain", "unknown domain '" + unicode::sanitize(*domain) + "'");
    }
  }

  auto const score = obj.find("ga_score");
  if (score == obj.end() || score->is_null()) {
    fail("ga_score", "required field is missing");
  } else if (textual) {
    static const std::regex kInt(R"(^\s*[+-]?\d{1,9}\s*$)");
    auto const& s = score->get_ref<const std::string&>();
    if (std::regex_match(s, kInt)) {
      r.ga_score = std::stoi(s);
    } else {
      fail("ga_score", "not an integer: '" + unicode::sanitize(s) + "'");
      r.ga_score = 1;
    }
  } else if (score->is_number_integer()) {
    auto const v = score->get<long long>();
    r.ga_score = (v < -1000 || v > 1000) ? 0 : static_cast<int>(v);
  } else {
    fail("ga_score", "expected an integer");
    r.ga_score = 1;
  }

  if (out.size() == before) {
    for (auto& v : validate_record(r)) {
      v.line = line;
      out.push_back(std::move(v));
    }
  }
  if (out.size() != before) return std::nullopt;
  return r;
}

using UniqueKey = std::tuple<std::string, Language, ConditionId, std::string>;

}  // namespace

std::vector<Violation> validate_record(const BenchRecord& r) {
  std::vector<Violation> out;
  auto nonempty = [&](std::string_view field, const std::string& value) {
    if (internal::trim(value).empty()) {
      out.push_back({std::string(field), "must not be empty"});
    }
  };
  nonempty("record_id", r.record_id);
  nonempty("model_id", r.model_id);
  nonempty("task_id", r.task_id);
  if (r.ga_score < 1 || r.ga_score > 5) {
    out.push_back({"ga_score", "score " + std::to_string(r.ga_score) +
                                   " is outside 1..5"});
  }
  if (r.spec_fingerprint && !is_hex64(*r.spec_fingerprint)) {
    out.push_back({"spec_fingerprint",
                   "must be 64 lowercase hexadecimal characters"});
  }
  if (!internal::is_rfc3339(r.created_at)) {
    out.push_back({"created_at", "not an RFC 3339 timestamp: '" +
                                     unicode::sanitize(r.created_at) + "'"});
  }
  auto utf8 = [&](std::string_view field, const std::string& value) {
    if (!unicode::is_valid_utf8(value)) {
      out.push_back({std::string(field), "text is not valid UTF-8"});
    }
  };
  utf8("record_id", r.record_id);
  utf8("model_id", r.model_id);
  utf8("task_id", r.task_id);
  utf8("prompt_text", r.prompt_text);
  if (r.output_text) utf8("output_text", *r.output_text);
  if (r.judge_reasoning) utf8("judge_reasoning", *r.judge_reasoning);
  return out;
}

std::string record_to_json(const BenchRecord& r) {
  json obj = json::object();
  obj["record_id"] = r.record_id;
  obj["model_id"] = r.model_id;
  obj["language"] = std::string(to_string(r.language));
  obj["condition"] = std::string(to_string(r.condition));
  obj["domain"] = std::string(to_string(r.domain));
  obj["task_id"] = r.task_id;
  obj["prompt_text"] = r.prompt_text;
  if (r.output_text) obj["output_text"] = *r.output_text;
  obj["ga_score"] = r.ga_score;
  if (r.judge_reasoning) obj["judge_reasoning"] = *r.judge_reasoning;
  if (r.spec_fingerprint) obj["spec_fingerprint"] = *r.spec_fingerprint;
  obj["created_at"] = r.created_at;
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

FieldMapping FieldMapping::parse(std::string_view text, std::string_view source_name) {
  FieldMapping mapping;
  std::set<std::string> targets;
  for (auto& [foreign, native] : internal::parse_keyed_text(text, source_name)) {
    if (native != "-" && !is_field(native)) {
      throw ConfigError(std::string(source_name) + ": '" + native +
                        "' is not a record field");
    }
    if (native != "-" && !targets.insert(native).second) {
      throw ConfigError(std::string(source_name) + ": more than one column maps to " +
                        native);
    }
    if (!mapping.renames_.emplace(foreign, native).second) {
      throw ConfigError(std::string(source_name) + ": column '" + foreign +
                        "' is mapped twice");
    }
  }
  return mapping;
}

FieldMapping FieldMapping::load(const std::filesystem::path& path) {
  return parse(internal::read_file(path), path.string());
}

std::string FieldMapping::map(const std::string& column) const {
  auto it = renames_.find(column);
  if (it == renames_.end()) return column;
  return it->second == "-" ? std::string() : it->second;
}

RecordFormat format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? RecordFormat::kCsv : RecordFormat::kJsonl;
}

IngestResult ingest_text(std::string_view text, RecordFormat format,
                         const FieldMapping* mapping) {
  struct Row {
    json object;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::vector<Violation> problems;
  std::size_t attempted = 0;
  auto rename = [&](const std::string& name) {
    return mapping ? mapping->map(name) : name;
  };

  if (format == RecordFormat::kJsonl) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(start, end - start);
      start = end + 1;
      ++line_no;
      if (internal::trim(line).empty()) continue;
      ++attempted;
      json doc;
      try {
        doc = json::parse(line);
      } catch (const json::parse_error& e) {
        problems.push_back({"<row>", std::string("not valid JSON: ") + e.what(), line_no});
        continue;
      }
      if (!doc.is_object()) {
        problems.push_back({"<row>", "expected a JSON object", line_no});
        continue;
      }
      json renamed = json::object();
      for (auto const& [key, value] : doc.items()) {
        auto const target = rename(key);
        if (!target.empty()) renamed[target] = value;
      }
      rows.push_back({std::move(renamed), line_no});
    }
    if (attempted > 0 && rows.empty()) {
      throw ParseError("no line of the input is a JSON object", 0);
    }
  } else {
    auto const csv = internal::parse_csv(text);
    if (!csv.empty()) {
      std::vector<std::string> header;
      for (auto const& h : csv.front().fields) {
        header.push_back(rename(std::string(internal::trim(h))));
      }
      for (std::size_t i = 1; i < csv.size(); ++i) {
        auto const& row = csv[i];
        if (row.fields.size() != header.size()) {
          problems.push_back({"<row>",
                              "has " + std::to_string(row.fields.size()) +
                                  " fields, header has " + std::to_string(header.size()),
                              row.line});
          continue;
        }
        json obj = json::object();
        for (std::size_t c = 0; c < header.size(); ++c) {
          if (!header[c].empty()) obj[header[c]] = row.fields[c];
        }
        rows.push_back({std::move(obj), row.line});
      }
    }
  }

  IngestResult result;
  std::set<UniqueKey> seen;
  for (auto const& row : rows) {
    auto record = record_from_object(row.object, format == RecordFormat::kCsv,
                                     row.line, problems);
    if (!record) continue;
    UniqueKey key{record->model_id, record->language, record->condition,
                  record->task_id};
    if (!seen.insert(key).second) {
      problems.push_back({"<row>",
                          "duplicate of an earlier record for (" + record->model_id +
                              ", " + std::string(to_string(record->language)) + ", " +
                              std::string(to_string(record->condition)) + ", " +
                              record->task_id + ")",
                          row.line});
      continue;
    }
    result.records.push_back(std::move(*record));
  }
  std::stable_sort(problems.begin(), problems.end(),
                   [](const Violation& a, const Violation& b) { return a.line < b.line; });
  result.report.violations = std::move(problems);
  return result;
}

IngestResult ingest(const std::filesystem::path& path, const FieldMapping* mapping) {
  return ingest_text(internal::read_file(path), format_for(path), mapping);
}

std::string serialize_records(const std::vector<BenchRecord>& records) {
  std::string out;
  for (auto const& r : records) {
    out += record_to_json(r);
    out += '\n';
  }
  return out;
}

void persist(const std::vector<BenchRecord>& records,
             const std::filesystem::path& path) {
  internal::write_file(path, serialize_records(records));
}

bool RecordFilter::matches(const BenchRecord& r) const {
  return (models.empty() || models.contains(r.model_id)) &&
         (languages.empty() || languages.contains(r.language)) &&
         (conditions.empty() || conditions.contains(r.condition)) &&
         (domains.empty() || domains.contains(r.domain));
}

std::vector<BenchRecord> filter(const std::vector<BenchRecord>& records,
                                const RecordFilter& predicate) {
  std::vector<BenchRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const BenchRecord& r) { return predicate.matches(r); });
  return out;
}

}  // namespace pps

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

#ifndef PPS_SRC_CSV_HPP_
#define PPS_SRC_CSV_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pps::internal {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line on which the row starts
};

/// RFC 4180 reader: comma separated, double-quoted fields may contain commas,
/// doubled quotes and line breaks. CRLF and LF both end a row. A leading
/// UTF-8 BOM is skipped and blank lines are ignored. Throws ParseError on an
/// unterminated quote or stray quote.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

}  // namespace pps::internal

#endif  // PPS_SRC_CSV_HPP_

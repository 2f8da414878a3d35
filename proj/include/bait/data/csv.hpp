// Copyright 2026 The BaIT Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef BAIT_DATA_CSV_HPP_
#define BAIT_DATA_CSV_HPP_

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace bait::data {

// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
// quoted fields may span lines, CRLF or LF line ends, optional UTF-8 BOM.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws ParseError on an unterminated quoted field.
  bool next(std::vector<std::string>& fields);

  // Line number (1-based) on which the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

// Header name -> column index, with a ParseError naming the missing column.
class CsvHeader {
 public:
  explicit CsvHeader(std::vector<std::string> names) : names_(std::move(names)) {}
  std::size_t require(std::string_view name) const;
  bool has(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

std::ifstream open_input(const std::filesystem::path& path);

// Quotes a field if it contains a comma, quote, or line break.
std::string csv_escape(std::string_view field);

}  // namespace bait::data

#endif  // BAIT_DATA_CSV_HPP_

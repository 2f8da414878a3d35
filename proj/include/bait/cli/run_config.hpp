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

#ifndef BAIT_CLI_RUN_CONFIG_HPP_
#define BAIT_CLI_RUN_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bait::cli {

// Flat `key = value` settings for one command. Every key must be one of
// known_keys(); values are kept as text and converted on access, so the
// resolved file written next to the outputs reproduces the run exactly.
class RunConfig {
 public:
  RunConfig();  // all defaults

  // '#' starts a comment; blank lines are ignored. ParseError (with line)
  // for malformed lines, ParameterError for unknown keys.
  void merge_file(const std::filesystem::path& path);
  void merge_stream(std::istream& in, const std::string& name);
  // ParameterError for an unknown key.
  void set(std::string_view key, std::string value);

  bool has(std::string_view key) const;  // set to a non-empty value
  const std::string& text(std::string_view key) const;
  // Typed accessors; ParameterError naming the key on a malformed value.
  double real(std::string_view key) const;
  std::size_t count(std::string_view key) const;
  std::uint64_t seed() const { return count64("seed"); }
  bool flag(std::string_view key) const;
  std::filesystem::path path(std::string_view key) const;
  // ParameterError naming the key when it is unset.
  std::filesystem::path required_path(std::string_view key) const;
  std::filesystem::path out_dir() const { return path("out_dir"); }

  // Fills unset hyperparameters with the defaults of the configured model.
  void resolve_model_defaults();

  void write(std::ostream& out) const;
  void write_file(const std::filesystem::path& path) const;

  static const std::vector<std::string>& known_keys();

 private:
  std::uint64_t count64(std::string_view key) const;
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace bait::cli

#endif  // BAIT_CLI_RUN_CONFIG_HPP_

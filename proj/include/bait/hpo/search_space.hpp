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

#ifndef BAIT_HPO_SEARCH_SPACE_HPP_
#define BAIT_HPO_SEARCH_SPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bait/models/kind.hpp"

namespace bait::hpo {

enum class ParamKind : std::uint8_t { kContinuous, kLogContinuous, kInteger, kCategorical };

std::string_view param_kind_name(ParamKind kind);

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kContinuous;
  double low = 0.0;   // numeric kinds
  double high = 1.0;
  std::vector<std::string> choices;  // categorical

  // Width of this parameter in the encoded point (one-hot for categorical).
  std::size_t encoded_width() const { return kind == ParamKind::kCategorical ? choices.size() : 1; }
};

// Real for (log-)continuous, integer for integer, text for categorical.
using ParamValue = std::variant<double, std::int64_t, std::string>;
// Ordered by name so that iteration and serialization are deterministic.
using Configuration = std::map<std::string, ParamValue>;

// Numeric view of a value; categorical text must parse as a number.
double as_double(const ParamValue& value);
// Integer view; reals and text must hold an exact integer. ParameterError otherwise.
std::int64_t as_integer(const ParamValue& value);
std::string to_string(const ParamValue& value);
std::string to_string(const Configuration& config);

class SearchSpace {
 public:
  // Each adder throws ParameterError for a duplicate name, non-finite or
  // empty bounds, a non-positive log bound, or empty choices.
  SearchSpace& add_continuous(std::string name, double low, double high);
  SearchSpace& add_log_continuous(std::string name, double low, double high);
  SearchSpace& add_integer(std::string name, std::int64_t low, std::int64_t high);
  SearchSpace& add_categorical(std::string name, std::vector<std::string> choices);

  const std::vector<ParamSpec>& params() const { return params_; }
  std::size_t size() const { return params_.size(); }
  // Dimension of encoded points.
  std::size_t encoded_dim() const;

  // Point in [0,1]^encoded_dim: min-max (in the log domain for log kinds),
  // one-hot for categorical. ParameterError for missing, extra, mistyped or
  // out-of-range values.
  std::vector<double> encode(const Configuration& config) const;
  // Inverse of encode; coordinates are clamped to [0,1], integers rounded and
  // categorical blocks resolved by argmax (lowest index on ties).
  Configuration decode(std::span<const double> point) const;
  // One unit coordinate per parameter (not per encoded dimension); a
  // categorical coordinate selects choice floor(u * choices). Used to turn
  // uniform or quasi-random draws into configurations.
  Configuration from_unit(std::span<const double> unit) const;

  void validate(const Configuration& config) const { (void)encode(config); }

 private:
  const ParamSpec& add(ParamSpec spec);
  std::vector<ParamSpec> params_;
};

// Text format, one parameter per line, '#' starts a comment:
//   learning_rate = log 1e-5 1e-1
//   dropout       = real 0 0.5
//   hidden_a      = int 10 200
//   batch_size    = choice 32 64 128 256
// ParseError with the line number on malformed input.
SearchSpace parse_search_space(std::istream& in, const std::string& name);
SearchSpace load_search_space(const std::filesystem::path& path);

// Default bounds per model kind; the published hyperparameters are interior
// points of each range.
SearchSpace default_search_space(models::ModelKind kind);

nlohmann::ordered_json config_to_json(const Configuration& config);
// Values are typed by the matching parameter; ParameterError when the object
// does not describe a point of `space`.
Configuration config_from_json(const nlohmann::json& json, const SearchSpace& space);

}  // namespace bait::hpo

#endif  // BAIT_HPO_SEARCH_SPACE_HPP_

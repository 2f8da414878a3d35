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

#include "bait/hpo/search_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"

namespace bait::hpo {
namespace {

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

double unit(double value, double low, double high) { return (value - low) / (high - low); }

double clamp01(double u) { return std::isfinite(u) ? std::clamp(u, 0.0, 1.0) : 0.0; }

ParamValue value_at(const ParamSpec& p, double u) {
  u = clamp01(u);
  switch (p.kind) {
    case ParamKind::kContinuous:
      return std::clamp(p.low + u * (p.high - p.low), p.low, p.high);
    case ParamKind::kLogContinuous:
      // Clamped so that exp(log(high)) rounding cannot leave the range.
      return std::clamp(std::exp(std::log(p.low) + u * (std::log(p.high) - std::log(p.low))), p.low, p.high);
    case ParamKind::kInteger:
      return static_cast<std::int64_t>(std::llround(p.low + u * (p.high - p.low)));
    case ParamKind::kCategorical: {
      const auto m = p.choices.size();
      return p.choices[std::min(m - 1, static_cast<std::size_t>(u * static_cast<double>(m)))];
    }
  }
  return 0.0;
}

}  // namespace

std::string_view param_kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::kContinuous:
      return "real";
    case ParamKind::kLogContinuous:
      return "log";
    case ParamKind::kInteger:
      return "int";
    case ParamKind::kCategorical:
      return "choice";
  }
  return "unknown";
}

double as_double(const ParamValue& value) {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  const auto& text = std::get<std::string>(value);
  const auto parsed = parse_number(text);
  if (!parsed) throw ParameterError("value '" + text + "' is not numeric");
  return *parsed;
}

std::int64_t as_integer(const ParamValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  const double d = as_double(value);
  if (d != std::trunc(d) || std::abs(d) > 9.0e15) {
    throw ParameterError("value " + to_string(value) + " is not an integer");
  }
  return static_cast<std::int64_t>(d);
}

std::string to_string(const ParamValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value);
  return os.str();
}

std::string to_string(const Configuration& config) {
  std::string out;
  for (const auto& [name, value] : config) {
    if (!out.empty()) out += ", ";
    out += name + "=" + to_string(value);
  }
  return out;
}

const ParamSpec& SearchSpace::add(ParamSpec spec) {
  if (spec.name.empty()) throw ParameterError("search parameter needs a name");
  for (const auto& p : params_) {
    if (p.name == spec.name) throw ParameterError("duplicate search parameter '" + spec.name + "'");
  }
  if (spec.kind == ParamKind::kCategorical) {
    if (spec.choices.empty()) throw ParameterError("parameter '" + spec.name + "' has no choices");
  } else {
    if (!std::isfinite(spec.low) || !std::isfinite(spec.high) || !(spec.low < spec.high)) {
      throw ParameterError("parameter '" + spec.name + "' needs finite bounds with low < high");
    }
    if (spec.kind == ParamKind::kLogContinuous && spec.low <= 0.0) {
      throw ParameterError("log-scaled parameter '" + spec.name + "' needs a positive lower bound");
    }
  }
  params_.push_back(std::move(spec));
  return params_.back();
}

SearchSpace& SearchSpace::add_continuous(std::string name, double low, double high) {
  add({std::move(name), ParamKind::kContinuous, low, high, {}});
  return *this;
}

SearchSpace& SearchSpace::add_log_continuous(std::string name, double low, double high) {
  add({std::move(name), ParamKind::kLogContinuous, low, high, {}});
  return *this;
}

SearchSpace& SearchSpace::add_integer(std::string name, std::int64_t low, std::int64_t high) {
  add({std::move(name), ParamKind::kInteger, static_cast<double>(low), static_cast<double>(high), {}});
  return *this;
}

SearchSpace& SearchSpace::add_categorical(std::string name, std::vector<std::string> choices) {
  add({std::move(name), ParamKind::kCategorical, 0.0, 1.0, std::move(choices)});
  return *this;
}

std::size_t SearchSpace::encoded_dim() const {
  std::size_t d = 0;
  for (const auto& p : params_) d += p.encoded_width();
  return d;
}

std::vector<double> SearchSpace::encode(const Configuration& config) const {
  if (config.size() != params_.size()) {
    for (const auto& [name, value] : config) {
      if (std::none_of(params_.begin(), params_.end(), [&](const ParamSpec& p) { return p.name == name; })) {
        throw ParameterError("'" + name + "' is not a search parameter");
      }
    }
  }
  std::vector<double> point;
  point.reserve(encoded_dim());
  for (const auto& p : params_) {
    const auto it = config.find(p.name);
    if (it == config.end()) throw ParameterError("configuration lacks '" + p.name + "'");
    const ParamValue& v = it->second;
    if (p.kind == ParamKind::kCategorical) {
      const auto* text = std::get_if<std::string>(&v);
      const auto pos = text ? std::find(p.choices.begin(), p.choices.end(), *text) : p.choices.end();
      if (pos == p.choices.end()) {
        throw ParameterError("'" + to_string(v) + "' is not a choice of '" + p.name + "'");
      }
      for (std::size_t c = 0; c < p.choices.size(); ++c) {
        point.push_back(c == static_cast<std::size_t>(pos - p.choices.begin()) ? 1.0 : 0.0);
      }
      continue;
    }
    if (std::holds_alternative<std::string>(v)) {
      throw ParameterError("parameter '" + p.name + "' needs a numeric value");
    }
    const double x = p.kind == ParamKind::kInteger ? static_cast<double>(as_integer(v)) : as_double(v);
    if (!(x >= p.low && x <= p.high)) {
      throw ParameterError("value " + to_string(v) + " of '" + p.name + "' is outside [" +
                           to_string(p.low) + ", " + to_string(p.high) + "]");
    }
    point.push_back(p.kind == ParamKind::kLogContinuous
                        ? unit(std::log(x), std::log(p.low), std::log(p.high))
                        : unit(x, p.low, p.high));
  }
  return point;
}

Configuration SearchSpace::decode(std::span<const double> point) const {
  if (point.size() != encoded_dim()) {
    throw DimensionError("encoded point has " + std::to_string(point.size()) + " coordinates, space needs " +
                         std::to_string(encoded_dim()));
  }
  Configuration config;
  std::size_t at = 0;
  for (const auto& p : params_) {
    if (p.kind == ParamKind::kCategorical) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < p.choices.size(); ++c) {
        if (point[at + c] > point[at + best]) best = c;
      }
      config.emplace(p.name, p.choices[best]);
      at += p.choices.size();
    } else {
      config.emplace(p.name, value_at(p, point[at++]));
    }
  }
  return config;
}

Configuration SearchSpace::from_unit(std::span<const double> unit_point) const {
  if (unit_point.size() != params_.size()) {
    throw DimensionError("unit point has " + std::to_string(unit_point.size()) + " coordinates, space has " +
                         std::to_string(params_.size()) + " parameters");
  }
  Configuration config;
  for (std::size_t i = 0; i < params_.size(); ++i) config.emplace(params_[i].name, value_at(params_[i], unit_point[i]));
  return config;
}

SearchSpace parse_search_space(std::istream& in, const std::string& name) {
  SearchSpace space;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key, eq, kind;
    if (!(fields >> key)) continue;
    if (!(fields >> eq) || eq != "=" || !(fields >> kind)) {
      throw ParseError(name + ": expected 'name = kind arguments...'", line_no);
    }
    std::vector<std::string> args;
    for (std::string a; fields >> a;) args.push_back(a);
    try {
      if (kind == "choice") {
        space.add_categorical(key, args);
        continue;
      }
      if (args.size() != 2) throw ParseError(name + ": '" + kind + "' needs two bounds", line_no);
      const auto low = parse_number(args[0]);
      const auto high = parse_number(args[1]);
      if (!low || !high) throw ParseError(name + ": bounds of '" + key + "' are not numbers", line_no);
      if (kind == "real") {
        space.add_continuous(key, *low, *high);
      } else if (kind == "log") {
        space.add_log_continuous(key, *low, *high);
      } else if (kind == "int") {
        if (*low != std::trunc(*low) || *high != std::trunc(*high)) {
          throw ParseError(name + ": integer bounds of '" + key + "' must be whole numbers", line_no);
        }
        space.add_integer(key, static_cast<std::int64_t>(*low), static_cast<std::int64_t>(*high));
      } else {
        throw ParseError(name + ": unknown parameter kind '" + kind + "' (expected real, log, int or choice)",
                         line_no);
      }
    } catch (const ParameterError& e) {
      throw ParseError(name + ": " + e.what(), line_no);
    }
  }
  if (space.size() == 0) throw ParseError(name + ": search space defines no parameters");
  return space;
}

SearchSpace load_search_space(const std::filesystem::path& path) {
  auto in = data::open_input(path);
  return parse_search_space(in, path.string());
}

SearchSpace default_search_space(models::ModelKind kind) {
  SearchSpace space;
  space.add_log_continuous("learning_rate", 1e-5, 1e-1)
      .add_categorical("batch_size", {"32", "64", "128", "256"})
      .add_continuous("dropout", 0.0, 0.5);
  switch (kind) {
    case models::ModelKind::kRelatedNet:
      space.add_integer("k", 1, 10).add_integer("hidden_a", 100, 1000).add_integer("hidden_b", 100, 1000);
      break;
    case models::ModelKind::kTopKNet:
      space.add_integer("k", 1, 10).add_integer("hidden_a", 10, 200).add_integer("hidden_b", 10, 200);
      break;
    case models::ModelKind::kAgreemNet:
      space.add_integer("num_heads", 1, 16).add_integer("hidden_a", 10, 200).add_integer("hidden_b", 10, 200);
      break;
  }
  return space;
}

nlohmann::ordered_json config_to_json(const Configuration& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, value] : config) {
    std::visit([&](const auto& v) { j[name] = v; }, value);
  }
  return j;
}

Configuration config_from_json(const nlohmann::json& json, const SearchSpace& space) {
  if (!json.is_object()) throw ParameterError("configuration must be a JSON object");
  Configuration config;
  for (const auto& p : space.params()) {
    const auto it = json.find(p.name);
    if (it == json.end()) throw ParameterError("configuration lacks '" + p.name + "'");
    if (p.kind == ParamKind::kCategorical) {
      if (!it->is_string()) throw ParameterError("'" + p.name + "' must be a string");
      config.emplace(p.name, it->get<std::string>());
    } else if (!it->is_number()) {
      throw ParameterError("'" + p.name + "' must be a number");
    } else if (p.kind == ParamKind::kInteger) {
      config.emplace(p.name, as_integer(it->get<double>()));
    } else {
      config.emplace(p.name, it->get<double>());
    }
  }
  if (json.size() != config.size()) throw ParameterError("configuration has parameters outside the space");
  space.validate(config);
  return config;
}

}  // namespace bait::hpo

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

#include "bait/hpo/tuner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"
#include "bait/hpo/acquisition.hpp"
#include "bait/log.hpp"
#include "bait/rng.hpp"

namespace bait::hpo {
namespace {

constexpr std::uint64_t kShiftStream = 0x4841;       // Halton rotation
constexpr std::uint64_t kCandidateStream = 0x10000;  // + history size
constexpr std::uint64_t kTrialStream = 0x20000;      // + trial index

double radical_inverse(std::size_t i, std::size_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

std::vector<std::size_t> first_primes(std::size_t n) {
  std::vector<std::size_t> primes;
  for (std::size_t c = 2; primes.size() < n; ++c) {
    if (std::all_of(primes.begin(), primes.end(), [c](std::size_t p) { return c % p != 0; })) primes.push_back(c);
  }
  return primes;
}

Configuration space_filling_draw(const SearchSpace& space, std::size_t index, std::uint64_t seed) {
  const auto primes = first_primes(space.size());
  Rng shift_rng = Rng::derive(seed, kShiftStream);
  std::vector<double> u(space.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double v = radical_inverse(index + 1, primes[j]) + shift_rng.uniform();
    u[j] = v - std::floor(v);
  }
  return space.from_unit(u);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return Rng::derive(seed, kTrialStream + trial).next();
}

Suggestion suggest_next(std::span<const TrialRecord> history, const SearchSpace& space, std::uint64_t seed,
                        const SuggestOptions& options) {
  Suggestion out;
  std::vector<std::vector<double>> points;
  std::vector<double> objectives;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& t : history) {
    points.push_back(space.encode(t.config));
    objectives.push_back(t.objective);
    if (std::isfinite(t.objective)) worst = std::min(worst, t.objective);
  }
  if (history.size() < options.initial_design || !std::isfinite(worst) || options.candidates == 0) {
    out.config = space_filling_draw(space, history.size(), seed);
    out.space_filling = true;
    return out;
  }
  for (double& y : objectives) {
    if (!std::isfinite(y)) y = worst;
  }
  const GpState gp = gp_fit_auto(points, objectives, options.grid);
  const double best = *std::max_element(objectives.begin(), objectives.end());

  Rng rng = Rng::derive(seed, kCandidateStream + history.size());
  std::vector<double> u(space.size());
  std::size_t arg = 0;
  for (std::size_t c = 0; c < options.candidates; ++c) {
    for (auto& v : u) v = rng.uniform();
    Configuration config = space.from_unit(u);
    const Posterior post = gp_posterior(gp, space.encode(config));
    const double ei = expected_improvement(post.mean, post.variance, best);
    if (c > 0 && ei > out.candidate_ei[arg]) arg = c;
    out.candidates.push_back(std::move(config));
    out.candidate_ei.push_back(ei);
  }
  out.config = out.candidates[arg];
  out.expected_improvement = out.candidate_ei[arg];
  return out;
}

nlohmann::ordered_json trial_to_json(const TrialRecord& record) {
  nlohmann::ordered_json j;
  j["trial"] = record.trial;
  j["config"] = config_to_json(record.config);
  if (record.failed || !std::isfinite(record.objective)) {
    j["objective"] = nullptr;
  } else {
    j["objective"] = record.objective;
  }
  j["seed"] = record.seed;
  j["wall_time"] = record.wall_seconds;
  j["failed"] = record.failed;
  if (record.failed) j["error"] = record.error;
  return j;
}

TrialRecord trial_from_json(const nlohmann::json& json, const SearchSpace& space) {
  TrialRecord r;
  r.trial = json.at("trial").get<std::size_t>();
  r.config = config_from_json(json.at("config"), space);
  r.failed = json.value("failed", false);
  const auto& obj = json.at("objective");
  if (obj.is_null()) {
    r.failed = true;
    r.objective = -std::numeric_limits<double>::infinity();
  } else {
    r.objective = obj.get<double>();
  }
  r.seed = json.at("seed").get<std::uint64_t>();
  r.wall_seconds = json.value("wall_time", 0.0);
  r.error = json.value("error", std::string());
  return r;
}

std::vector<TrialRecord> read_history(const std::filesystem::path& path, const SearchSpace& space) {
  auto in = data::open_input(path);
  std::vector<TrialRecord> history;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    TrialRecord r;
    try {
      r = trial_from_json(nlohmann::json::parse(line), space);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    } catch (const ParameterError& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    }
    if (r.trial != history.size()) {
      throw ParseError(path.string() + ": expected trial " + std::to_string(history.size()) + ", found " +
                           std::to_string(r.trial),
                       line_no);
    }
    history.push_back(std::move(r));
  }
  return history;
}

TuneResult tune(const SearchSpace& space, const Objective& objective, const TuneOptions& options) {
  if (options.budget == 0) throw ParameterError("tuning budget must be at least 1");
  TuneResult result;
  if (options.history_path && std::filesystem::exists(*options.history_path)) {
    result.history = read_history(*options.history_path, space);
    result.resumed = result.history.size();
    if (result.resumed > 0) log::info("resuming search after ", result.resumed, " recorded trials");
  }
  std::ofstream history_out;
  if (options.history_path) {
    history_out.open(*options.history_path, std::ios::app);
    if (!history_out) throw IoError("cannot write " + options.history_path->string());
  }
  while (result.history.size() < options.budget) {
    const std::size_t index = result.history.size();
    TrialRecord rec;
    rec.trial = index;
    rec.config = suggest_next(result.history, space, options.seed, options.suggest).config;
    rec.seed = trial_seed(options.seed, index);
    const auto start = std::chrono::steady_clock::now();
    try {
      rec.objective = objective(rec.config, rec.seed);
      if (!std::isfinite(rec.objective)) throw NumericalError("objective is not finite");
    } catch (const Error& e) {
      rec.failed = true;
      rec.error = e.what();
      rec.objective = -std::numeric_limits<double>::infinity();
      log::warn("trial ", index, " failed: ", e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log::info("trial ", index, ": ", to_string(rec.config), " -> ", rec.objective);
    if (history_out.is_open()) {
      history_out << trial_to_json(rec).dump() << '\n';
      history_out.flush();
      if (!history_out) throw IoError("cannot write " + options.history_path->string());
    }
    result.history.push_back(std::move(rec));
  }
  const auto best = std::max_element(result.history.begin(), result.history.end(),
                                     [](const TrialRecord& a, const TrialRecord& b) { return a.objective < b.objective; });
  result.best = *best;
  return result;
}

}  // namespace bait::hpo

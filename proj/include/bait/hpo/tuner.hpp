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

#ifndef BAIT_HPO_TUNER_HPP_
#define BAIT_HPO_TUNER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bait/hpo/gaussian_process.hpp"
#include "bait/hpo/search_space.hpp"

namespace bait::hpo {

struct TrialRecord {
  std::size_t trial = 0;  // 0-based position in the history
  Configuration config;
  double objective = 0.0;  // -inf for a failed trial
  std::uint64_t seed = 0;  // seed handed to the objective
  double wall_seconds = 0.0;
  bool failed = false;
  std::string error;  // failure message
};

struct SuggestOptions {
  std::size_t initial_design = 8;  // space-filling draws before the surrogate is used
  std::size_t candidates = 2048;   // random points scored by expected improvement
  KernelGrid grid;
};

struct Suggestion {
  Configuration config;
  bool space_filling = false;
  double expected_improvement = 0.0;  // of `config`; 0 for space-filling draws
  std::vector<Configuration> candidates;
  std::vector<double> candidate_ei;  // aligned with candidates
};

// Next configuration to evaluate. The first `initial_design` trials come from
// a randomly shifted Halton sequence; afterwards a GP is fitted to the
// history (failed trials count as the worst finite objective) and the
// candidate with the highest expected improvement is returned (first on
// ties). Depends only on the history, the space and `seed`, so an
// interrupted search resumes on the same sequence.
Suggestion suggest_next(std::span<const TrialRecord> history, const SearchSpace& space, std::uint64_t seed,
                        const SuggestOptions& options = {});

// Seed passed to the objective of trial `trial`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// Objective to maximize. Throwing a bait::Error marks the trial failed.
using Objective = std::function<double(const Configuration& config, std::uint64_t seed)>;

struct TuneOptions {
  std::size_t budget = 25;  // total trials, including resumed ones
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> history_path;  // JSON lines; resumed if present
  SuggestOptions suggest;
};

struct TuneResult {
  TrialRecord best;  // highest objective, earliest on ties
  std::vector<TrialRecord> history;
  std::size_t resumed = 0;  // trials read back from the history file
};

// Runs trials until the history holds `budget` of them, appending each to the
// history file as soon as it finishes. ParameterError for a zero budget.
TuneResult tune(const SearchSpace& space, const Objective& objective, const TuneOptions& options);

nlohmann::ordered_json trial_to_json(const TrialRecord& record);
TrialRecord trial_from_json(const nlohmann::json& json, const SearchSpace& space);
// ParseError (with line) for malformed lines, out-of-space configurations or
// trial numbers that are not 0, 1, 2, ... in order.
std::vector<TrialRecord> read_history(const std::filesystem::path& path, const SearchSpace& space);

}  // namespace bait::hpo

#endif  // BAIT_HPO_TUNER_HPP_

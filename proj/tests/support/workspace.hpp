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

#ifndef BAIT_TESTS_SUPPORT_WORKSPACE_HPP_
#define BAIT_TESTS_SUPPORT_WORKSPACE_HPP_

#include <filesystem>
#include <fstream>
#include <span>
#include <string>

#include "bait/data/corpus.hpp"
#include "bait/data/csv.hpp"
#include "bait/data/embedding_store.hpp"
#include "support/synthetic.hpp"

namespace bait::testing {

// Fresh, empty scratch directory under the system temp directory.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("bait_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string synthetic_headline(std::uint32_t id) { return "synthetic headline " + std::to_string(id); }

inline void write_stances(const std::filesystem::path& path, std::span<const data::SamplePair> samples,
                          bool with_stance = true) {
  std::ofstream out(path);
  out << (with_stance ? "Headline,Body ID,Stance\n" : "Headline,Body ID\n");
  for (const auto& s : samples) {
    out << synthetic_headline(s.headline_id) << ',' << s.body_id;
    if (with_stance) out << ',' << data::stance_name(s.stance);
    out << '\n';
  }
}

// Stores, sidecar and bodies CSV for a synthetic corpus; returns the
// `key = value` lines that point a RunConfig at them.
inline std::string write_corpus_files(const SyntheticCorpus& c, const std::filesystem::path& dir) {
  data::write_embedding_store(dir / "sim_head.bin", c.sim_head);
  data::write_embedding_store(dir / "sim_body.bin", c.sim_body);
  data::write_embedding_store(dir / "nli_head.bin", c.nli_head);
  data::write_embedding_store(dir / "nli_body.bin", c.nli_body);
  {
    std::ofstream sidecar(dir / "headlines.txt");
    for (auto id : c.sim_head.ids()) sidecar << synthetic_headline(id) << '\n';
  }
  {
    std::ofstream bodies(dir / "bodies.csv");
    bodies << "Body ID,articleBody\n";
    for (auto id : c.sim_body.ids()) bodies << id << ",\"body " << id << ", in full\"\n";
  }
  const auto p = [&](const char* f) { return (dir / f).string(); };
  return "sim_head_store = " + p("sim_head.bin") + "\nsim_body_store = " + p("sim_body.bin") +
         "\nnli_head_store = " + p("nli_head.bin") + "\nnli_body_store = " + p("nli_body.bin") +
         "\nheadline_sidecar = " + p("headlines.txt") + "\ntrain_bodies = " + p("bodies.csv") +
         "\nsim_dim = " + std::to_string(c.sim_head.dim()) + "\nnli_dim = " + std::to_string(c.nli_head.dim()) +
         "\n";
}

}  // namespace bait::testing

#endif  // BAIT_TESTS_SUPPORT_WORKSPACE_HPP_

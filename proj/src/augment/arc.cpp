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

#include "bait/augment/arc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <utility>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"
#include "bait/log.hpp"
#include "bait/rng.hpp"

namespace bait::augment {

std::vector<ArcRecord> read_arc_csv(std::istream& in, const std::string& name) {
  data::CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw ParseError(name + ": empty ARC file", 1);
  const data::CsvHeader header(row);
  const std::size_t cols[] = {header.require("topic"), header.require("post"),
                              header.require("claim"), header.require("opposing_claim"),
                              header.require("support")};
  const char* names[] = {"topic", "post", "claim", "opposing_claim", "support"};
  const std::size_t width = *std::max_element(std::begin(cols), std::end(cols)) + 1;
  std::vector<ArcRecord> out;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t line = reader.record_line();
    if (row.size() < width) throw ParseError(name + ": short row", line);
    for (std::size_t c = 0; c < 5; ++c) {
      if (row[cols[c]].empty()) {
        throw ParseError(name + ": record is missing its " + names[c] + " field", line);
      }
    }
    ArcRecord r{row[cols[0]], row[cols[1]], row[cols[2]], row[cols[3]], ArcSupport::kNeither};
    const std::string& support = row[cols[4]];
    if (support == "claim") {
      r.support = ArcSupport::kClaim;
    } else if (support == "opposing") {
      r.support = ArcSupport::kOpposing;
    } else if (support != "neither") {
      throw ParseError(name + ": unknown support value '" + support + "'", line);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ArcRecord> load_arc_csv(const std::filesystem::path& path) {
  auto in = data::open_input(path);
  return read_arc_csv(in, path.string());
}

ArcAdaptation adapt_arc(std::span<const ArcRecord> records, data::HeadlineTable& headlines,
                        std::uint32_t first_body_id, std::uint64_t seed, double unrelated_share) {
  if (!(unrelated_share >= 0.0 && unrelated_share < 1.0)) {
    throw ParameterError("unrelated share must lie in [0, 1)");
  }
  ArcAdaptation out;
  std::unordered_map<std::string, std::uint32_t> body_ids;
  std::vector<std::uint32_t> record_body(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [it, fresh] = body_ids.emplace(records[i].post,
                                        first_body_id + static_cast<std::uint32_t>(body_ids.size()));
    if (fresh) out.bodies[it->second] = records[i].post;
    record_body[i] = it->second;
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const data::Stance stance = r.support == ArcSupport::kClaim      ? data::Stance::kAgree
                                : r.support == ArcSupport::kOpposing ? data::Stance::kDisagree
                                                                     : data::Stance::kDiscuss;
    const std::uint32_t head = headlines.intern(r.claim);
    if (used.insert({head, record_body[i]}).second) out.samples.push_back({head, record_body[i], stance});
  }

  const std::size_t related = out.samples.size();
  const auto target = static_cast<std::size_t>(
      std::llround(unrelated_share / (1.0 - unrelated_share) * static_cast<double>(related)));
  Rng rng(seed);
  std::size_t made = 0;
  const std::size_t max_attempts = 50 * target + 1000;
  for (std::size_t attempt = 0; made < target && attempt < max_attempts; ++attempt) {
    const std::size_t p = rng.below(records.size());
    const std::size_t c = rng.below(records.size());
    if (records[p].topic == records[c].topic) continue;
    const std::string& claim = rng.below(2) == 0 ? records[c].claim : records[c].opposing_claim;
    const std::uint32_t head = headlines.intern(claim);
    if (!used.insert({head, record_body[p]}).second) continue;
    out.samples.push_back({head, record_body[p], data::Stance::kUnrelated});
    ++made;
  }
  if (made < target) {
    log::warn("ARC adaptation produced ", made, " of ", target,
              " unrelated samples; too few distinct cross-topic pairs");
  }
  return out;
}

}  // namespace bait::augment

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

#include "bait/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/relatednet.hpp"
#include "bait/models/stage2.hpp"

namespace bait::cli {
namespace {

// Key, default value, description (written as a comment in resolved files).
struct KeySpec {
  const char* key;
  const char* fallback;
  const char* help;
};

constexpr KeySpec kKeys[] = {
    {"model", "topknet", "relatednet | topknet | agreemnet"},
    {"seed", "1", "root of every random stream"},
    {"out_dir", ".", "directory for all outputs"},
    {"log_level", "info", "debug | info | warning | error"},
    {"train_stances", "", "Headline,Body ID,Stance CSV used for training"},
    {"train_bodies", "", "Body ID,articleBody CSV (ingest cross-check)"},
    {"test_stances", "", "Headline,Body ID,Stance CSV used by eval"},
    {"test_bodies", "", "Body ID,articleBody CSV (ingest cross-check)"},
    {"headline_sidecar", "", "one headline per line; line index = store headline id"},
    {"sim_head_store", "", "SIM headline embeddings"},
    {"sim_body_store", "", "SIM body sentence embeddings"},
    {"nli_head_store", "", "NLI headline embeddings"},
    {"nli_body_store", "", "NLI body sentence embeddings"},
    {"sim_dim", "384", "expected SIM width"},
    {"nli_dim", "768", "expected NLI width"},
    {"max_body_sentences", "50", "body sentences kept per sample"},
    {"validation_fraction", "0.3", "share of training headlines held out"},
    {"k", "", "top-k body sentences (relatednet, topknet)"},
    {"hidden_a", "", "width of the leading hidden layers"},
    {"hidden_b", "", "width of the last hidden layer"},
    {"dropout", "", "dropout probability"},
    {"num_heads", "", "attention heads (agreemnet)"},
    {"d_k", "", "query/key width per head (agreemnet)"},
    {"d_v", "", "value width per head (agreemnet)"},
    {"learning_rate", "0.001", "Adam step size"},
    {"batch_size", "64", "samples per update"},
    {"epochs", "30", "maximum epochs"},
    {"patience", "5", "epochs without validation gain before stopping; 0 disables"},
    {"weighted_loss", "false", "balanced class weights in the loss"},
    {"synthetic_stances", "", "extra training rows written by augment"},
    {"arc_csv", "", "ARC file (topic,post,claim,opposing_claim,support) added to training"},
    {"arc_first_body_id", "1000000", "body id given to the first ARC post"},
    {"arc_unrelated_share", "0.75", "share of unrelated pairs in the adapted ARC set"},
    {"relatednet_checkpoint", "", "stage-1 checkpoint for eval/predict"},
    {"stage2_checkpoint", "", "stage-2 checkpoint for eval/predict"},
    {"threshold", "0.5", "P(related) at or above which stage 2 runs"},
    {"parses", "", "CoNLL-U headline parses for augment"},
    {"wordnet_dir", "", "directory with index.verb and data.verb"},
    {"lm_corpus", "", "sentences for the n-gram scorer; default: training headlines"},
    {"flip_disagree", "false", "also turn disagreeing samples into agreeing ones"},
    {"space", "", "search space file; default: built-in space of the model"},
    {"budget", "25", "total tuning trials"},
    {"history", "", "tuning history; default: <out_dir>/tune_history.jsonl"},
    {"input", "", "predict input CSV (Headline,Body ID)"},
    {"output", "", "predict output CSV; default: <out_dir>/predictions.csv"},
};

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : kKeys) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& k : kKeys) values_.emplace(k.key, k.fallback);
}

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& k : kKeys) out.emplace_back(k.key);
    return out;
  }();
  return keys;
}

void RunConfig::set(std::string_view key, std::string value) {
  if (!find_key(key)) throw ParameterError("unknown configuration key '" + std::string(key) + "'");
  values_[std::string(key)] = std::move(value);
}

void RunConfig::merge_stream(std::istream& in, const std::string& name) {
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(name + ": expected 'key = value'", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (!find_key(key)) throw ParseError(name + ": unknown configuration key '" + key + "'", line_no);
    values_[key] = trim(std::string_view(line).substr(eq + 1));
  }
}

void RunConfig::merge_file(const std::filesystem::path& path) {
  auto in = data::open_input(path);
  merge_stream(in, path.string());
}

bool RunConfig::has(std::string_view key) const { return !text(key).empty(); }

const std::string& RunConfig::text(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ParameterError("unknown configuration key '" + std::string(key) + "'");
  return it->second;
}

double RunConfig::real(std::string_view key) const {
  const std::string& v = text(key);
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || end != v.data() + v.size() || !std::isfinite(out)) {
    throw ParameterError(std::string(key) + " = '" + v + "' is not a number");
  }
  return out;
}

std::uint64_t RunConfig::count64(std::string_view key) const {
  const std::string& v = text(key);
  std::uint64_t out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || end != v.data() + v.size()) {
    throw ParameterError(std::string(key) + " = '" + v + "' is not a non-negative integer");
  }
  return out;
}

std::size_t RunConfig::count(std::string_view key) const { return static_cast<std::size_t>(count64(key)); }

bool RunConfig::flag(std::string_view key) const {
  const std::string& v = text(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
  throw ParameterError(std::string(key) + " = '" + v + "' is not a boolean");
}

std::filesystem::path RunConfig::path(std::string_view key) const { return std::filesystem::path(text(key)); }

std::filesystem::path RunConfig::required_path(std::string_view key) const {
  if (!has(key)) throw ParameterError("configuration key '" + std::string(key) + "' must be set");
  return path(key);
}

void RunConfig::resolve_model_defaults() {
  const auto fill = [this](const char* key, const auto& value) {
    if (has(key)) return;
    std::ostringstream os;
    os << value;
    values_[key] = os.str();
  };
  switch (models::parse_kind(text("model"))) {
    case models::ModelKind::kRelatedNet: {
      const models::RelatedNetConfig d;
      fill("k", d.k);
      fill("hidden_a", d.hidden_a);
      fill("hidden_b", d.hidden_b);
      fill("dropout", d.dropout);
      break;
    }
    case models::ModelKind::kTopKNet: {
      const models::TopKNetConfig d;
      fill("k", d.k);
      fill("hidden_a", d.hidden_a);
      fill("hidden_b", d.hidden_b);
      fill("dropout", d.dropout);
      break;
    }
    case models::ModelKind::kAgreemNet: {
      const models::AgreemNetConfig d;
      fill("num_heads", d.num_heads);
      fill("d_k", d.d_k);
      fill("d_v", d.d_v);
      fill("hidden_a", d.hidden_a);
      fill("hidden_b", d.hidden_b);
      fill("dropout", d.dropout);
      break;
    }
  }
}

void RunConfig::write(std::ostream& out) const {
  for (const auto& k : kKeys) {
    out << "# " << k.help << '\n' << k.key << " = " << values_.at(k.key) << '\n';
  }
}

void RunConfig::write_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  write(out);
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace bait::cli

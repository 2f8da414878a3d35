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

#include "bait/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "bait/augment/arc.hpp"
#include "bait/augment/conllu.hpp"
#include "bait/augment/ngram_lm.hpp"
#include "bait/augment/synthesis.hpp"
#include "bait/augment/wordnet.hpp"
#include "bait/data/corpus.hpp"
#include "bait/data/csv.hpp"
#include "bait/data/embedding_store.hpp"
#include "bait/errors.hpp"
#include "bait/hpo/objective.hpp"
#include "bait/hpo/search_space.hpp"
#include "bait/hpo/tuner.hpp"
#include "bait/log.hpp"
#include "bait/models/checkpoint.hpp"
#include "bait/models/features.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/pipeline.hpp"
#include "bait/models/relatednet.hpp"
#include "bait/models/stage2.hpp"
#include "bait/models/trainer.hpp"

namespace bait::cli {
namespace {

namespace fs = std::filesystem;
using data::SamplePair;
using data::Stance;
using models::ModelKind;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared loading

// Headline table seeded from the sidecar, so corpus ids equal store ids.
struct Corpus {
  data::HeadlineTable headlines;
  std::size_t sidecar_lines = 0;  // 0 without a sidecar

  explicit Corpus(const RunConfig& config) {
    if (!config.has("headline_sidecar")) return;
    const auto lines = data::read_headline_sidecar(config.path("headline_sidecar"));
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (headlines.intern(lines[i]) != i) {
        throw IntegrityError("headline sidecar repeats a headline on line " + std::to_string(i + 1));
      }
    }
    sidecar_lines = lines.size();
  }

  std::vector<SamplePair> stances(const fs::path& path) {
    auto samples = data::load_stances_csv(path, headlines);
    check_sidecar(path);
    return samples;
  }

  void check_sidecar(const fs::path& source) const {
    if (sidecar_lines > 0 && headlines.size() > sidecar_lines) {
      throw IntegrityError(source.string() + ": headline '" + headlines.text(static_cast<std::uint32_t>(sidecar_lines)) +
                           "' is not in the headline sidecar");
    }
  }
};

struct Stores {
  std::optional<data::EmbeddingStore> sim_head, sim_body, nli_head, nli_body;
  std::size_t max_body = data::kMaxBodySentences;

  bool has_nli() const { return nli_head.has_value(); }

  models::FeatureBank bank() const {
    return models::FeatureBank(&*sim_head, &*sim_body, has_nli() ? &*nli_head : nullptr,
                               has_nli() ? &*nli_body : nullptr, max_body);
  }
};

// Width mismatches against the configuration are input errors here.
data::EmbeddingStore load_store(const RunConfig& config, const char* key, std::size_t dim) {
  const fs::path path = config.required_path(key);
  try {
    return data::load_embedding_store(path, dim);
  } catch (const DimensionError& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

Stores load_stores(const RunConfig& config, bool need_nli) {
  Stores s;
  s.max_body = config.count("max_body_sentences");
  const auto sim_dim = config.count("sim_dim");
  s.sim_head = load_store(config, "sim_head_store", sim_dim);
  s.sim_body = load_store(config, "sim_body_store", sim_dim);
  if (need_nli || config.has("nli_head_store") || config.has("nli_body_store")) {
    const auto nli_dim = config.count("nli_dim");
    s.nli_head = load_store(config, "nli_head_store", nli_dim);
    s.nli_body = load_store(config, "nli_body_store", nli_dim);
  }
  return s;
}

models::Views views_of(ModelKind kind) {
  return kind == ModelKind::kRelatedNet ? models::Views::kSim : models::Views::kBoth;
}

std::vector<SamplePair> related_only(std::span<const SamplePair> samples) {
  std::vector<SamplePair> out;
  for (const auto& s : samples) {
    if (data::is_related(s.stance)) out.push_back(s);
  }
  return out;
}

models::TrainingConfig training_config(const RunConfig& c) {
  models::TrainingConfig t;
  t.learning_rate = c.real("learning_rate");
  t.batch_size = c.count("batch_size");
  t.epochs = c.count("epochs");
  t.patience = c.count("patience");
  t.weighted_loss = c.flag("weighted_loss");
  return t;
}

// Model configs from a resolved RunConfig; unset keys keep the model defaults.
hpo::TuningSetup tuning_setup(const RunConfig& c) {
  hpo::TuningSetup s;
  s.kind = models::parse_kind(c.text("model"));
  s.training = training_config(c);
  s.related.sim_dim = s.topk.sim_dim = s.agreem.sim_dim = c.count("sim_dim");
  s.topk.nli_dim = s.agreem.nli_dim = c.count("nli_dim");
  hpo::Configuration values;
  const std::vector<const char*> keys = s.kind == ModelKind::kAgreemNet
                                            ? std::vector<const char*>{"num_heads", "d_k", "d_v", "hidden_a", "hidden_b"}
                                            : std::vector<const char*>{"k", "hidden_a", "hidden_b"};
  for (const char* key : keys) {
    if (c.has(key)) values.emplace(key, static_cast<std::int64_t>(c.count(key)));
  }
  if (c.has("dropout")) values.emplace("dropout", c.real("dropout"));
  hpo::apply_hyperparameters(values, s);
  return s;
}

// Training and validation samples: a headline-disjoint split of the training
// CSV, with synthetic and ARC samples added to the training part only.
struct TrainingData {
  Corpus corpus;
  Stores stores;
  std::vector<SamplePair> train;
  std::vector<SamplePair> validation;
};

std::unique_ptr<TrainingData> training_data(const RunConfig& c, ModelKind kind) {
  auto td = std::unique_ptr<TrainingData>(new TrainingData{Corpus(c), {}, {}, {}});
  const auto base = td->corpus.stances(c.required_path("train_stances"));
  auto split = data::headline_split(base, c.real("validation_fraction"), c.seed());
  td->train = std::move(split.train);
  td->validation = std::move(split.validation);
  if (c.has("synthetic_stances")) {
    const auto extra = td->corpus.stances(c.path("synthetic_stances"));
    log::info("adding ", extra.size(), " synthetic samples");
    td->train.insert(td->train.end(), extra.begin(), extra.end());
  }
  if (c.has("arc_csv")) {
    const auto records = augment::load_arc_csv(c.path("arc_csv"));
    const auto arc = augment::adapt_arc(records, td->corpus.headlines,
                                        static_cast<std::uint32_t>(c.count("arc_first_body_id")), c.seed(),
                                        c.real("arc_unrelated_share"));
    td->corpus.check_sidecar(c.path("arc_csv"));
    log::info("adding ", arc.samples.size(), " ARC samples");
    td->train.insert(td->train.end(), arc.samples.begin(), arc.samples.end());
  }
  td->stores = load_stores(c, kind != ModelKind::kRelatedNet);
  const auto bank = td->stores.bank();
  td->train = bank.usable(td->train, views_of(kind));
  td->validation = bank.usable(td->validation, views_of(kind));
  if (kind != ModelKind::kRelatedNet) {
    td->train = related_only(td->train);
    td->validation = related_only(td->validation);
  }
  return td;
}

fs::path prepare_out_dir(const RunConfig& c, const std::string& command) {
  const fs::path dir = c.out_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  c.write_file(dir / (command + "_config.txt"));
  log::info(command, ": seed ", c.seed(), ", outputs in ", dir.string());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string percent(double fraction) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << 100.0 * fraction << '%';
  return os.str();
}

std::string distribution_row(const std::string& name, std::span<const SamplePair> samples) {
  std::ostringstream os;
  os << std::left << std::setw(12) << name << std::right << std::setw(9) << samples.size();
  if (samples.empty()) return os.str();
  const auto d = data::class_distribution(samples);
  for (std::size_t c = 0; c < data::kNumStances; ++c) os << std::setw(9) << percent(d.proportions[c]);
  return os.str();
}

ordered_json distribution_json(std::span<const SamplePair> samples) {
  ordered_json j;
  j["samples"] = samples.size();
  if (samples.empty()) return j;
  const auto d = data::class_distribution(samples);
  for (Stance s : data::kAllStances) {
    j["counts"][std::string(data::stance_abbrev(s))] = d.counts[data::index_of(s)];
    j["proportions"][std::string(data::stance_abbrev(s))] = d.proportions[data::index_of(s)];
  }
  return j;
}

std::string render_confusion(const models::ConfusionMatrix& m) {
  std::ostringstream os;
  os << "gold \\ predicted";
  for (Stance s : data::kAllStances) os << std::setw(8) << data::stance_abbrev(s);
  os << '\n';
  for (Stance g : data::kAllStances) {
    os << std::left << std::setw(16) << data::stance_abbrev(g) << std::right;
    for (Stance p : data::kAllStances) os << std::setw(8) << m[data::index_of(g)][data::index_of(p)];
    os << '\n';
  }
  return os.str();
}

models::BaitModel load_pipeline(const RunConfig& c, const models::FeatureBank& bank) {
  auto model = models::BaitModel::load(c.required_path("relatednet_checkpoint"),
                                       c.required_path("stage2_checkpoint"), c.real("threshold"));
  const std::size_t stage2_sim =
      model.stage2_kind == ModelKind::kTopKNet ? model.topk_config.sim_dim : model.agreem_config.sim_dim;
  const std::size_t stage2_nli =
      model.stage2_kind == ModelKind::kTopKNet ? model.topk_config.nli_dim : model.agreem_config.nli_dim;
  if (model.related_config.sim_dim != bank.sim_dim() || stage2_sim != bank.sim_dim() ||
      stage2_nli != bank.nli_dim()) {
    throw DimensionError("checkpoints expect SIM/NLI widths " + std::to_string(model.related_config.sim_dim) + "/" +
                         std::to_string(stage2_nli) + " but the stores hold " + std::to_string(bank.sim_dim()) +
                         "/" + std::to_string(bank.nli_dim()));
  }
  return model;
}

template <typename Model>
ordered_json train_and_save(const RunConfig& c, const TrainingData& td, const typename Model::Config& config,
                            const fs::path& dir, std::ostream& out) {
  const auto bank = td.stores.bank();
  const auto training = training_config(c);
  const auto trained = models::train_model<Model>(bank, td.train, td.validation, config, training, c.seed());
  const fs::path ckpt = dir / (std::string(Model::kName) + ".ckpt");
  models::save_checkpoint<Model>(ckpt, config, trained.params);

  ordered_json j;
  j["model"] = Model::kName;
  j["parameters"] = trained.params.parameter_count();
  j["seed"] = c.seed();
  j["train_samples"] = td.train.size();
  j["validation_samples"] = td.validation.size();
  const auto labels = models::model_labels<Model>(td.train);
  std::vector<std::size_t> counts(Model::kClasses, 0);
  for (auto l : labels) ++counts[l];
  j["class_counts"] = counts;
  j["class_weights"] = trained.class_weights;
  j["best_epoch"] = trained.best_epoch;
  j["best_validation_accuracy"] = trained.best_validation_accuracy;
  for (const auto& e : trained.log) {
    j["epochs"].push_back({{"epoch", e.epoch},
                           {"train_loss", e.train_loss},
                           {"train_accuracy", e.train_accuracy},
                           {"validation_accuracy", e.validation_accuracy}});
  }
  write_text(dir / (std::string(Model::kName) + "_metrics.json"), j.dump(2) + "\n");
  out << Model::kName << ": " << trained.params.parameter_count() << " parameters, best epoch " << trained.best_epoch
      << ", validation unweighted accuracy " << std::fixed << std::setprecision(4)
      << trained.best_validation_accuracy << "\ncheckpoint: " << ckpt.string() << '\n';
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Commands

void cmd_ingest(const RunConfig& c, std::ostream& out) {
  const fs::path dir = prepare_out_dir(c, "ingest");
  Corpus corpus(c);
  ordered_json report;
  std::vector<std::pair<std::string, std::vector<SamplePair>>> splits;
  splits.emplace_back("train", corpus.stances(c.required_path("train_stances")));
  if (c.has("test_stances")) splits.emplace_back("test", corpus.stances(c.path("test_stances")));
  std::vector<SamplePair> all;
  for (const auto& [name, samples] : splits) all.insert(all.end(), samples.begin(), samples.end());
  if (c.has("arc_csv")) {
    const auto records = augment::load_arc_csv(c.path("arc_csv"));
    const auto arc = augment::adapt_arc(records, corpus.headlines,
                                        static_cast<std::uint32_t>(c.count("arc_first_body_id")), c.seed(),
                                        c.real("arc_unrelated_share"));
    corpus.check_sidecar(c.path("arc_csv"));
    splits.emplace_back("arc", arc.samples);
  }

  out << std::left << std::setw(12) << "split" << std::right << std::setw(9) << "samples";
  for (Stance s : data::kAllStances) out << std::setw(9) << data::stance_abbrev(s);
  out << '\n';
  for (const auto& [name, samples] : splits) {
    out << distribution_row(name, samples) << '\n';
    report["splits"][name] = distribution_json(samples);
  }
  out << distribution_row("total", all) << '\n';
  report["total"] = distribution_json(all);
  report["headlines"] = corpus.headlines.size();
  out << "distinct headlines: " << corpus.headlines.size() << '\n';

  // Bodies: every FNC sample must reference a known body.
  if (c.has("train_bodies") || c.has("test_bodies")) {
    std::map<std::uint32_t, std::string> bodies;
    std::size_t empty = 0;
    for (const char* key : {"train_bodies", "test_bodies"}) {
      if (!c.has(key)) continue;
      const auto table = data::load_bodies_csv(c.path(key));
      empty += table.empty_ids.size();
      for (const auto& [id, text] : table.texts) {
        if (!bodies.emplace(id, text).second) {
          throw IntegrityError("body id " + std::to_string(id) + " appears in both body files");
        }
      }
    }
    for (const auto& s : all) {
      if (!bodies.count(s.body_id)) {
        throw IntegrityError("sample references body id " + std::to_string(s.body_id) +
                             " missing from the body files");
      }
    }
    report["bodies"] = bodies.size();
    report["empty_bodies"] = empty;
    out << "bodies: " << bodies.size() << " (" << empty << " empty)\n";
  }

  // Stores: widths are checked on load; every sample must resolve.
  if (c.has("sim_head_store")) {
    const Stores stores = load_stores(c, false);
    const auto bank = stores.bank();
    const auto views = stores.has_nli() ? models::Views::kBoth : models::Views::kSim;
    std::size_t usable = 0;
    for (const auto& [name, samples] : splits) usable += bank.usable(samples, views).size();
    std::size_t total = 0;
    for (const auto& [name, samples] : splits) total += samples.size();
    report["stores"] = {{"sim_dim", bank.sim_dim()},
                        {"nli_dim", bank.nli_dim()},
                        {"head_records", stores.sim_head->size()},
                        {"body_records", stores.sim_body->size()},
                        {"usable_samples", usable},
                        {"dropped_zero_sentence", total - usable}};
    out << "stores: SIM " << bank.sim_dim() << ", NLI " << bank.nli_dim() << "; " << usable << " of " << total
        << " samples usable\n";
  }
  write_text(dir / "ingest_report.json", report.dump(2) + "\n");
}

void cmd_train(const RunConfig& config, std::ostream& out) {
  RunConfig c = config;
  c.resolve_model_defaults();
  const fs::path dir = prepare_out_dir(c, "train");
  const auto setup = tuning_setup(c);
  const auto td = training_data(c, setup.kind);
  switch (setup.kind) {
    case ModelKind::kRelatedNet:
      train_and_save<models::RelatedNet>(c, *td, setup.related, dir, out);
      break;
    case ModelKind::kTopKNet:
      train_and_save<models::TopKNet>(c, *td, setup.topk, dir, out);
      break;
    case ModelKind::kAgreemNet:
      train_and_save<models::AgreemNet>(c, *td, setup.agreem, dir, out);
      break;
  }
}

void cmd_tune(const RunConfig& config, std::ostream& out) {
  RunConfig c = config;
  c.resolve_model_defaults();
  const fs::path dir = prepare_out_dir(c, "tune");
  const auto setup = tuning_setup(c);
  const auto space = c.has("space") ? hpo::load_search_space(c.path("space")) : hpo::default_search_space(setup.kind);
  hpo::TuneOptions options;
  options.budget = c.count("budget");
  options.seed = c.seed();
  options.history_path = c.has("history") ? c.path("history") : dir / "tune_history.jsonl";
  // Fail on a bad space before loading any data.
  {
    hpo::TuningSetup probe = setup;
    hpo::apply_hyperparameters(space.from_unit(std::vector<double>(space.size(), 0.5)), probe);
  }
  const auto td = training_data(c, setup.kind);
  const auto result = hpo::tune_model(td->stores.bank(), td->train, td->validation, setup, space, options);

  RunConfig best = c;
  for (const auto& [name, value] : result.best.config) best.set(name, hpo::to_string(value));
  best.write_file(dir / "best_config.txt");
  out << "trials: " << result.history.size() << " (" << result.resumed << " resumed)\n"
      << "best trial " << result.best.trial << ": objective " << std::setprecision(6) << result.best.objective << '\n'
      << "  " << hpo::to_string(result.best.config) << '\n'
      << "history: " << options.history_path->string() << '\n';
}

void cmd_eval(const RunConfig& c, std::ostream& out) {
  const fs::path dir = prepare_out_dir(c, "eval");
  Corpus corpus(c);
  const auto samples = corpus.stances(c.required_path("test_stances"));
  const Stores stores = load_stores(c, true);
  const auto bank = stores.bank();
  const auto model = load_pipeline(c, bank);
  const auto usable = bank.usable(samples, models::Views::kBoth);
  const auto predicted = models::bait_predict_all(bank, models::unlabeled(usable), model);
  std::vector<Stance> gold;
  for (const auto& s : usable) gold.push_back(s.stance);
  const auto report = models::evaluate(predicted, gold);
  write_text(dir / "eval_report.json", models::report_json(report));
  out << "samples: " << usable.size() << '\n' << std::fixed << std::setprecision(2);
  for (Stance s : data::kAllStances) {
    const double a = report.per_class_accuracy[data::index_of(s)];
    out << data::stance_abbrev(s) << " accuracy: ";
    if (std::isnan(a)) {
      out << "n/a\n";
    } else {
      out << 100.0 * a << "%\n";
    }
  }
  out << "overall accuracy: " << 100.0 * report.overall_accuracy << "%\n"
      << "FNC-1 score: " << report.fnc_score << "%\n"
      << render_confusion(report.confusion);
}

void cmd_augment(const RunConfig& c, std::ostream& out) {
  const fs::path dir = prepare_out_dir(c, "augment");
  Corpus corpus(c);
  const auto samples = corpus.stances(c.required_path("train_stances"));
  const auto wordnet = augment::load_wordnet_dir(c.required_path("wordnet_dir"));
  const auto parses = augment::index_by_headline(augment::parse_conllu_file(c.required_path("parses")));
  std::vector<std::string> lm_sentences;
  if (c.has("lm_corpus")) {
    auto in = data::open_input(c.path("lm_corpus"));
    for (std::string line; std::getline(in, line);) lm_sentences.push_back(line);
  } else {
    lm_sentences = corpus.headlines.texts();
  }
  const augment::NgramLm lm(lm_sentences);
  augment::SynthesisOptions options;
  options.flip_disagree = c.flag("flip_disagree");
  const auto result = augment::synthesize_flipped_samples(samples, parses, corpus.headlines, wordnet, lm, options);

  std::ostringstream csv;
  csv << "Headline,Body ID,Stance\n";
  for (const auto& s : result.samples) {
    csv << data::csv_escape(corpus.headlines.text(s.headline_id)) << ',' << s.body_id << ','
        << data::stance_name(s.stance) << '\n';
  }
  write_text(dir / "synthetic_stances.csv", csv.str());
  std::ostringstream log_lines;
  augment::write_synthesis_log(log_lines, result.log);
  write_text(dir / "synthesis_log.jsonl", log_lines.str());
  std::ostringstream sidecar;
  for (const auto& h : corpus.headlines.texts()) sidecar << h << '\n';
  write_text(dir / "headlines.txt", sidecar.str());

  out << "synthesized samples: " << result.samples.size() << " from " << result.log.size() << " headlines\n";
  for (auto m : {augment::NegationMethod::kRemoveNot, augment::NegationMethod::kInsertNot,
                 augment::NegationMethod::kAntonymSwap}) {
    out << "  " << augment::method_name(m) << ": " << result.method_counts[static_cast<std::size_t>(m)] << '\n';
  }
  out << "headlines without a parse: " << result.missing_parses << ", not negatable: " << result.not_negatable
      << '\n';
}

void cmd_predict(const RunConfig& c, std::ostream& out) {
  const fs::path dir = prepare_out_dir(c, "predict");
  const fs::path input = c.required_path("input");
  Corpus corpus(c);
  const auto pairs = data::load_pairs_csv(input, corpus.headlines);
  corpus.check_sidecar(input);
  // Raw rows, so the output repeats the input text untouched.
  std::vector<std::vector<std::string>> rows;
  {
    auto in = data::open_input(input);
    data::CsvReader reader(in);
    std::vector<std::string> fields;
    reader.next(fields);
    const data::CsvHeader header(fields);
    const auto h = header.require("Headline");
    const auto b = header.require("Body ID");
    while (reader.next(fields)) rows.push_back({fields.at(h), fields.at(b)});
  }
  if (rows.size() != pairs.size()) throw ContractError("predict input was read inconsistently");

  const Stores stores = load_stores(c, true);
  const auto bank = stores.bank();
  const auto model = load_pipeline(c, bank);
  std::vector<data::UnlabeledPair> scorable;
  std::vector<bool> empty_body(pairs.size(), false);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      (void)bank.prepare(pairs[i].headline_id, pairs[i].body_id, models::Views::kSim);
      scorable.push_back(pairs[i]);
    } catch (const DegenerateInputError&) {
      empty_body[i] = true;
    }
  }
  const auto predicted = models::bait_predict_all(bank, scorable, model);
  std::ostringstream csv;
  csv << "Headline,Body ID,Stance\n";
  std::size_t next = 0, defaulted = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Stance s = Stance::kUnrelated;
    if (empty_body[i]) {
      ++defaulted;
    } else {
      s = predicted[next++];
    }
    csv << data::csv_escape(rows[i][0]) << ',' << data::csv_escape(rows[i][1]) << ',' << data::stance_name(s) << '\n';
  }
  if (defaulted > 0) log::warn(defaulted, " pairs have bodies without sentences; predicted unrelated");
  const fs::path output = c.has("output") ? c.path("output") : dir / "predictions.csv";
  write_text(output, csv.str());
  out << "predictions: " << rows.size() << " written to " << output.string() << '\n';
}

// ---------------------------------------------------------------------------
// Entry point

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ContractError*>(&error) || dynamic_cast<const DimensionError*>(&error) ||
      dynamic_cast<const NumericalError*>(&error) || dynamic_cast<const DegenerateInputError*>(&error)) {
    return kExitContract;
  }
  if (dynamic_cast<const Error*>(&error) || dynamic_cast<const CLI::Error*>(&error)) return kExitInput;
  return kExitInternal;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical stance detection over precomputed sentence embeddings", "bait"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file, out_dir, seed;
  std::vector<std::string> overrides;
  app.add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "64-bit seed for every random decision");
  app.add_option("--out-dir", out_dir, "directory for outputs");
  app.add_option("--set", overrides, "override one configuration key (key=value); repeatable");

  // Subcommand flags are written straight into configuration keys.
  std::map<std::string, std::string> bound;
  const auto bind = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option(flag, bound[key], help);
  };
  std::map<std::string, bool> switches;
  const auto bind_switch = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                               const std::string& help) { sub->add_flag(flag, switches[key], help); };

  auto* ingest = app.add_subcommand("ingest", "validate data files and print the class distribution");
  auto* train = app.add_subcommand("train", "train one model and write its checkpoint");
  bind(train, "--model", "model", "relatednet | topknet | agreemnet");
  bind(train, "--epochs", "epochs", "maximum epochs");
  bind(train, "--synthetic", "synthetic_stances", "extra training rows from augment");
  bind(train, "--arc", "arc_csv", "ARC file added to training");
  bind_switch(train, "--weighted-loss", "weighted_loss", "balanced class weights");
  auto* tune = app.add_subcommand("tune", "Bayesian hyperparameter search");
  bind(tune, "--model", "model", "relatednet | topknet | agreemnet");
  bind(tune, "--space", "space", "search space file");
  bind(tune, "--budget", "budget", "total trials");
  bind(tune, "--history", "history", "history file (resumed if present)");
  auto* eval = app.add_subcommand("eval", "evaluate the two-stage pipeline on labelled data");
  bind(eval, "--relatednet", "relatednet_checkpoint", "stage-1 checkpoint");
  bind(eval, "--stage2", "stage2_checkpoint", "stage-2 checkpoint");
  bind(eval, "--test", "test_stances", "labelled pairs");
  auto* aug = app.add_subcommand("augment", "synthesize flipped-stance samples by negating headlines");
  bind(aug, "--parses", "parses", "CoNLL-U headline parses");
  bind(aug, "--wordnet", "wordnet_dir", "directory with index.verb and data.verb");
  bind_switch(aug, "--flip-disagree", "flip_disagree", "also flip disagreeing samples");
  auto* predict = app.add_subcommand("predict", "label headline/body pairs");
  bind(predict, "--relatednet", "relatednet_checkpoint", "stage-1 checkpoint");
  bind(predict, "--stage2", "stage2_checkpoint", "stage-2 checkpoint");
  bind(predict, "--input", "input", "CSV with Headline and Body ID columns");
  bind(predict, "--output", "output", "output CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitInput;
  }

  try {
    RunConfig config;
    if (!config_file.empty()) config.merge_file(config_file);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ParameterError("--set expects key=value, got '" + o + "'");
      config.set(o.substr(0, eq), o.substr(eq + 1));
    }
    for (const auto& [key, value] : bound) {
      if (!value.empty()) config.set(key, value);
    }
    for (const auto& [key, on] : switches) {
      if (on) config.set(key, "true");
    }
    if (!seed.empty()) config.set("seed", seed);
    if (!out_dir.empty()) config.set("out_dir", out_dir);
    (void)config.seed();  // validate early

    const std::string level = config.text("log_level");
    if (level == "debug") {
      log::set_level(log::Level::kDebug);
    } else if (level == "info") {
      log::set_level(log::Level::kInfo);
    } else if (level == "warning") {
      log::set_level(log::Level::kWarning);
    } else if (level == "error") {
      log::set_level(log::Level::kError);
    } else {
      throw ParameterError("log_level = '" + level + "' (expected debug, info, warning or error)");
    }

    if (*ingest) cmd_ingest(config, out);
    if (*train) cmd_train(config, out);
    if (*tune) cmd_tune(config, out);
    if (*eval) cmd_eval(config, out);
    if (*aug) cmd_augment(config, out);
    if (*predict) cmd_predict(config, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace bait::cli

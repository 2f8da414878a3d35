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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bait/augment/arc.hpp"
#include "bait/augment/class_weights.hpp"
#include "bait/augment/conllu.hpp"
#include "bait/augment/inflect.hpp"
#include "bait/augment/negation.hpp"
#include "bait/augment/ngram_lm.hpp"
#include "bait/augment/synthesis.hpp"
#include "bait/augment/wordnet.hpp"
#include "bait/data/csv.hpp"
#include "bait/errors.hpp"
#include "bait/rng.hpp"

namespace {

using namespace bait::augment;
using bait::data::Stance;

const std::filesystem::path kFixtures = BAIT_FIXTURE_DIR;

std::vector<ParsedHeadline> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_conllu(in, "inline");
}

std::string row(std::size_t id, const std::string& form, const std::string& lemma,
                const std::string& upos, std::size_t head, const std::string& rel) {
  return std::to_string(id) + "\t" + form + "\t" + lemma + "\t" + upos + "\t_\t_\t" +
         std::to_string(head) + "\t" + rel + "\t_\t_\n";
}

const WordNetIndex& mini_wordnet() {
  static const WordNetIndex wn = load_wordnet_dir(kFixtures / "negation");
  return wn;
}

std::vector<std::string> lm_corpus() {
  std::ifstream in(kFixtures / "negation" / "lm_corpus.txt");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

// Scorer that prefers the candidate listed first and counts its calls.
class CountingScorer : public LmScorer {
 public:
  explicit CountingScorer(std::string preferred = "") : preferred_(std::move(preferred)) {}
  double score(std::string_view s) const override {
    ++calls;
    return !preferred_.empty() && s.find(preferred_) != std::string_view::npos ? -1.0 : -10.0;
  }
  mutable std::size_t calls = 0;

 private:
  std::string preferred_;
};

}  // namespace

TEST_SUITE("class weights") {
  TEST_CASE("worked examples") {
    const std::vector<std::size_t> even = {10, 10};
    CHECK(balanced_class_weights(even) == std::vector<double>{1.0, 1.0});
    const std::vector<std::size_t> skew = {30, 10};
    const auto w = balanced_class_weights(skew);
    CHECK(w[0] == doctest::Approx(40.0 / 60.0));
    CHECK(w[1] == doctest::Approx(2.0));
  }

  TEST_CASE("weighted counts sum to the total") {
    bait::Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<std::size_t> counts(2 + rng.below(5));
      for (auto& c : counts) c = 1 + rng.below(100000);
      const auto w = balanced_class_weights(counts);
      double sum = 0.0;
      for (std::size_t c = 0; c < counts.size(); ++c) sum += double(counts[c]) * w[c];
      const double total = double(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
      CHECK(std::abs(sum - total) <= 1e-9 * total);
    }
  }

  TEST_CASE("zero counts are rejected") {
    const std::vector<std::size_t> counts = {3, 0};
    CHECK_THROWS_AS(balanced_class_weights(counts), bait::ParameterError);
  }
}

TEST_SUITE("conllu") {
  TEST_CASE("two-token sentence") {
    const auto p = parse(row(1, "Not", "not", "PART", 2, "advmod") + row(2, "now", "now", "ADV", 0, "root"));
    REQUIRE(p.size() == 1);
    CHECK(p[0].tokens.size() == 2);
    CHECK(p[0].root() == 1);
    CHECK(p[0].tokens[0].deprel == "advmod");
    CHECK(p[0].text == "Not now");
    CHECK(p[0].headline_id == 0);
  }

  TEST_CASE("sentences keep file order and comment ids") {
    const auto p = parse("# headline_id = 7\n# text = Hello there\n" + row(1, "Hello", "hello", "INTJ", 0, "root") +
                         row(2, "there", "there", "ADV", 1, "advmod") + "\n\n# headline_id = 3\n" +
                         row(1, "Bye", "bye", "INTJ", 0, "root"));
    REQUIRE(p.size() == 2);
    CHECK(p[0].headline_id == 7);
    CHECK(p[0].text == "Hello there");
    CHECK(p[1].headline_id == 3);
  }

  TEST_CASE("multiword ranges and empty nodes are skipped") {
    const auto p = parse("1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" + row(1, "do", "do", "AUX", 3, "aux") +
                         row(2, "n't", "not", "PART", 3, "advmod") + row(3, "go", "go", "VERB", 0, "root") +
                         "3.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n");
    REQUIRE(p.size() == 1);
    CHECK(p[0].tokens.size() == 3);
  }

  TEST_CASE("structural errors") {
    CHECK_THROWS_AS(parse(row(1, "a", "a", "X", 2, "dep") + row(2, "b", "b", "X", 1, "dep")),
                    bait::IntegrityError);
    CHECK_THROWS_AS(parse(row(1, "a", "a", "X", 0, "root") + row(2, "b", "b", "X", 0, "root")),
                    bait::IntegrityError);
    CHECK_THROWS_AS(parse(row(1, "a", "a", "X", 5, "root")), bait::IntegrityError);
    try {
      parse(row(1, "a", "a", "X", 0, "root") + "2\tb\tb\tX\t_\t_\tone\tdep\t_\t_\n");
      FAIL("expected a parse error");
    } catch (const bait::ParseError& e) {
      CHECK(e.line() == 2);
    }
    try {
      parse(row(1, "a", "a", "X", 0, "root") + "2\tb\tb\n");
      FAIL("expected a parse error");
    } catch (const bait::ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("detokenization attaches punctuation and clitics") {
    const std::vector<std::string> a = {"He", "said", "\"", "no", "\"", ",", "did", "n't", "he", "?"};
    CHECK(detokenize(a) == "He said \"no\", didn't he?");
    const std::vector<std::string> b = {"Costs", "(", "est.", ")", "rose", "5", "%"};
    CHECK(detokenize(b) == "Costs (est.) rose 5%");
  }

  TEST_CASE("fixture file parses completely") {
    const auto all = parse_conllu_file(kFixtures / "negation" / "headlines.conllu");
    CHECK(all.size() == 30);
    const auto byid = index_by_headline(all);
    CHECK(byid.count(100) == 1);
    CHECK(byid.at(100).text == "Israel is not opening the dams");
  }
}

TEST_SUITE("wordnet") {
  TEST_CASE("mini lexicon antonyms") {
    const auto& wn = mini_wordnet();
    const auto open = wn.antonyms("open");
    CHECK(std::set<std::string>(open.begin(), open.end()) == std::set<std::string>{"close", "shut"});
    CHECK(wn.antonyms("Open") == open);
    CHECK(wn.antonyms("stop").empty());
    CHECK(wn.antonyms("absent").empty());
    // Only gain -> lose is listed; the closure adds lose -> gain.
    CHECK(wn.antonyms("lose") == std::vector<std::string>{"gain", "win"});
  }

  TEST_CASE("antonym relation is symmetric") {
    for (const auto& dir : {kFixtures / "negation", kFixtures / "wordnet"}) {
      const auto wn = load_wordnet_dir(dir);
      std::ifstream index(dir / "index.verb");
      for (std::string line; std::getline(index, line);) {
        if (line.empty() || line[0] == ' ') continue;
        const std::string lemma = line.substr(0, line.find(' '));
        for (const auto& a : wn.antonyms(lemma)) {
          const auto back = wn.antonyms(a);
          CHECK(std::find(back.begin(), back.end(), lemma) != back.end());
        }
      }
    }
  }

  TEST_CASE("real lexicon: open has close as an antonym") {
    const auto wn = load_wordnet_dir(kFixtures / "wordnet");
    const auto open = wn.antonyms("open");
    CHECK(std::find(open.begin(), open.end(), "close") != open.end());
    CHECK(wn.lemma_count() > 10000);
  }

  TEST_CASE("constructed single-entry lexicon") {
    std::istringstream index("open v 1 1 ! 1 0 00001\n");
    std::istringstream data("00001 30 v 01 open 0 001 ! 00002 v 0101 00 | x\n"
                            "00002 30 v 01 close 0 000 00 | y\n");
    const auto wn = load_wordnet(index, data, "tiny");
    CHECK(wn.antonyms("open") == std::vector<std::string>{"close"});
    CHECK(wn.antonyms("close") == std::vector<std::string>{"open"});
  }

  TEST_CASE("dangling pointers and malformed offsets") {
    {
      std::istringstream index("open v 1 1 ! 1 0 00001\n");
      std::istringstream data("00001 30 v 01 open 0 001 ! 00009 v 0101 00 | x\n");
      try {
        load_wordnet(index, data, "dangling");
        FAIL("expected a parse error");
      } catch (const bait::ParseError& e) {
        CHECK(std::string(e.what()).find("9") != std::string::npos);
      }
    }
    {
      std::istringstream index("open v 1 1 ! 1 0 0000x\n");
      std::istringstream data("00001 30 v 01 open 0 000 00 | x\n");
      CHECK_THROWS_AS(load_wordnet(index, data, "bad"), bait::ParseError);
    }
  }
}

TEST_SUITE("inflection") {
  TEST_CASE("detects and reproduces forms") {
    CHECK(detect_form("opened", "open") == VerbForm::kPast);
    CHECK(detect_form("rose", "rise") == VerbForm::kPast);
    CHECK(detect_form("written", "write") == VerbForm::kPastParticiple);
    CHECK(detect_form("denies", "deny") == VerbForm::kThirdSingular);
    CHECK(detect_form("stopping", "stop") == VerbForm::kGerund);
    CHECK(detect_form("go", "go") == VerbForm::kBase);
    CHECK(inflect("close", VerbForm::kPast) == "closed");
    CHECK(inflect("stop", VerbForm::kPast) == "stopped");
    CHECK(inflect("deny", VerbForm::kThirdSingular) == "denies");
    CHECK(inflect("fall", VerbForm::kPast) == "fell");
    CHECK(inflect("fall", VerbForm::kPastParticiple) == "fallen");
    CHECK(inflect("close", VerbForm::kGerund) == "closing");
    CHECK(inflect("die", VerbForm::kGerund) == "dying");
    CHECK(inflect("push", VerbForm::kThirdSingular) == "pushes");
    CHECK(inflect("close_up", VerbForm::kPast) == "closed up");
    CHECK(match_case("Opened", "closed") == "Closed");
    CHECK(match_case("OPENED", "closed") == "CLOSED");
  }
}

TEST_SUITE("language model") {
  TEST_CASE("observed order is preferred and scores are log-probabilities") {
    const std::vector<std::string> corpus = {"a b"};
    const NgramLm lm(corpus);
    CHECK(lm.score("a b") > lm.score("b a"));
    bait::Rng rng(4);
    const char* words[] = {"a", "b", "c", "zebra"};
    for (int i = 0; i < 200; ++i) {
      std::string s;
      for (std::size_t j = 0; j < rng.below(6); ++j) s += std::string(words[rng.below(4)]) + " ";
      CHECK(lm.score(s) <= 0.0);
    }
  }

  TEST_CASE("matches a hand-computed smoothed trigram table") {
    const std::vector<std::string> corpus = {"a b", "b c"};
    const NgramLm lm(corpus, 3, 0.01);
    CHECK(lm.vocabulary_size() == 5);  // a b c </s> <unk>
    // score("a b"): P(a|<s><s>) = 1.01/2.05, P(b|<s>a) = 1.01/1.05, P(</s>|a b) = 1.01/1.05
    const double ab = std::log(1.01 / 2.05) + 2 * std::log(1.01 / 1.05);
    // score("a c"): P(a|<s><s>) = 1.01/2.05, P(c|<s>a) = 0.01/1.05, P(</s>|a c) = 0.01/0.05
    const double ac = std::log(1.01 / 2.05) + std::log(0.01 / 1.05) + std::log(0.01 / 0.05);
    CHECK(lm.score("a b") == doctest::Approx(ab).epsilon(1e-12));
    CHECK(lm.score("A  c") == doctest::Approx(ac).epsilon(1e-12));
    CHECK((lm.score("a b") > lm.score("a c")) == (ab > ac));
    // empty sentence: P(</s>|<s><s>) = 0.01/2.05
    CHECK(lm.score("") == doctest::Approx(std::log(0.01 / 2.05)).epsilon(1e-12));
  }

  TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(NgramLm(std::vector<std::string>{}), bait::ParameterError);
    const std::vector<std::string> corpus = {"x"};
    CHECK_THROWS_AS(NgramLm(corpus, 0), bait::ParameterError);
  }
}

TEST_SUITE("negation") {
  TEST_CASE("fixture suite: ten sentences per method") {
    const auto parses = index_by_headline(parse_conllu_file(kFixtures / "negation" / "headlines.conllu"));
    const NgramLm lm(lm_corpus());
    std::ifstream in(kFixtures / "negation" / "expected.tsv");
    std::string line;
    std::getline(in, line);  // header
    std::map<std::string, int> per_method;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string id, method, expected;
      std::getline(fields, id, '\t');
      std::getline(fields, method, '\t');
      std::getline(fields, expected);
      const auto r = negate_headline(parses.at(static_cast<std::uint32_t>(std::stoul(id))), mini_wordnet(), lm);
      CAPTURE(id);
      REQUIRE(r.has_value());
      CHECK(method_name(r->method) == method);
      CHECK(r->text == expected);
      ++per_method[method];
    }
    CHECK(per_method == std::map<std::string, int>{{"antonym_swap", 10}, {"insert_not", 10}, {"remove_not", 10}});
  }

  TEST_CASE("the scorer decides between antonyms") {
    const auto p = parse(row(1, "Israel", "Israel", "PROPN", 2, "nsubj") + row(2, "opened", "open", "VERB", 0, "root") +
                         row(3, "the", "the", "DET", 4, "det") + row(4, "dams", "dam", "NOUN", 2, "obj"));
    CHECK(negate_headline(p[0], mini_wordnet(), CountingScorer("closed"))->text == "Israel closed the dams");
    CHECK(negate_headline(p[0], mini_wordnet(), CountingScorer("shut"))->text == "Israel shut the dams");
  }

  TEST_CASE("method precedence") {
    // Negation modifier + auxiliary + verb with antonyms: only removal runs.
    const auto both = parse(row(1, "Senator", "senator", "NOUN", 4, "nsubj") + row(2, "has", "have", "AUX", 4, "aux") +
                            row(3, "not", "not", "PART", 4, "advmod") + row(4, "opened", "open", "VERB", 0, "root"));
    CountingScorer scorer("closed");
    const auto r1 = negate_headline(both[0], mini_wordnet(), scorer);
    CHECK(r1->method == NegationMethod::kRemoveNot);
    CHECK(r1->text == "Senator has opened");
    CHECK(scorer.calls == 0);
    // Auxiliary + verb with antonyms: insertion wins, no scoring.
    const auto aux = parse(row(1, "Senator", "senator", "NOUN", 3, "nsubj") + row(2, "has", "have", "AUX", 3, "aux") +
                           row(3, "opened", "open", "VERB", 0, "root"));
    const auto r2 = negate_headline(aux[0], mini_wordnet(), scorer);
    CHECK(r2->method == NegationMethod::kInsertNot);
    CHECK(scorer.calls == 0);
  }

  TEST_CASE("inapplicable headlines return nothing") {
    CountingScorer scorer;
    // Nominal root.
    const auto noun = parse(row(1, "Crisis", "crisis", "NOUN", 0, "root") + row(2, "in", "in", "ADP", 3, "case") +
                            row(3, "Greece", "Greece", "PROPN", 1, "nmod"));
    CHECK_FALSE(negate_headline(noun[0], mini_wordnet(), scorer).has_value());
    // Verbal root without antonyms or auxiliaries.
    const auto verb = parse(row(1, "Police", "police", "NOUN", 2, "nsubj") + row(2, "stopped", "stop", "VERB", 0, "root"));
    CHECK_FALSE(negate_headline(verb[0], mini_wordnet(), scorer).has_value());
    // "not" that is not a negation modifier.
    const auto cc = parse(row(1, "Not", "not", "CCONJ", 2, "cc") + row(2, "Greece", "Greece", "PROPN", 0, "root"));
    CHECK_FALSE(negate_headline(cc[0], mini_wordnet(), scorer).has_value());
  }
}

TEST_SUITE("synthesis") {
  struct World {
    bait::data::HeadlineTable headlines;
    std::unordered_map<std::uint32_t, ParsedHeadline> parses;
    NgramLm lm{lm_corpus()};
    World() {
      const auto a = headlines.intern("Israel has opened the dams");
      const auto b = headlines.intern("Crisis in Greece");
      const auto c = headlines.intern("Police accepted the offer");
      auto p = parse("# headline_id = " + std::to_string(a) + "\n" + row(1, "Israel", "Israel", "PROPN", 3, "nsubj") +
                     row(2, "has", "have", "AUX", 3, "aux") + row(3, "opened", "open", "VERB", 0, "root") +
                     row(4, "the", "the", "DET", 5, "det") + row(5, "dams", "dam", "NOUN", 3, "obj") +
                     "\n# headline_id = " + std::to_string(b) + "\n" + row(1, "Crisis", "crisis", "NOUN", 0, "root") +
                     row(2, "in", "in", "ADP", 3, "case") + row(3, "Greece", "Greece", "PROPN", 1, "nmod") +
                     "\n# headline_id = " + std::to_string(c) + "\n" + row(1, "Police", "police", "NOUN", 2, "nsubj") +
                     row(2, "accepted", "accept", "VERB", 0, "root") + row(3, "the", "the", "DET", 4, "det") +
                     row(4, "offer", "offer", "NOUN", 2, "obj"));
      parses = index_by_headline(std::move(p));
    }
  };

  TEST_CASE("one agreeing sample becomes one disagreeing sample") {
    World w;
    const std::vector<bait::data::SamplePair> samples = {{0, 5, Stance::kAgree}};
    const auto copy = samples;
    const auto r = synthesize_flipped_samples(samples, w.parses, w.headlines, mini_wordnet(), w.lm);
    REQUIRE(r.samples.size() == 1);
    CHECK(r.samples[0].stance == Stance::kDisagree);
    CHECK(r.samples[0].body_id == 5);
    CHECK(w.headlines.text(r.samples[0].headline_id) == "Israel has not opened the dams");
    CHECK(samples == copy);
    CHECK(r.method_counts[1] == 1);
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0].original == "Israel has opened the dams");
  }

  TEST_CASE("failed negation, missing parse and ineligible labels emit nothing") {
    World w;
    const std::vector<bait::data::SamplePair> samples = {
        {1, 1, Stance::kAgree}, {99, 1, Stance::kAgree}, {0, 2, Stance::kDiscuss}, {0, 3, Stance::kUnrelated},
        {2, 4, Stance::kDisagree}};
    const auto r = synthesize_flipped_samples(samples, w.parses, w.headlines, mini_wordnet(), w.lm);
    CHECK(r.samples.empty());
    CHECK(r.missing_parses == 1);
    CHECK(r.not_negatable == 1);
  }

  TEST_CASE("both directions behind the flag; labels only ever flip") {
    World w;
    const std::vector<bait::data::SamplePair> samples = {
        {0, 1, Stance::kAgree}, {0, 2, Stance::kAgree}, {2, 3, Stance::kDisagree}, {2, 4, Stance::kDiscuss}};
    const auto r = synthesize_flipped_samples(samples, w.parses, w.headlines, mini_wordnet(), w.lm,
                                              SynthesisOptions{true, true});
    REQUIRE(r.samples.size() == 3);
    CHECK(r.log.size() == 2);  // each headline negated once
    CHECK(r.samples[0].headline_id == r.samples[1].headline_id);
    CHECK(r.samples[2].stance == Stance::kAgree);
    CHECK(w.headlines.text(r.samples[2].headline_id) == "Police rejected the offer");
    for (const auto& s : r.samples) CHECK((s.stance == Stance::kAgree || s.stance == Stance::kDisagree));
  }

  TEST_CASE("flipping is an involution") {
    for (auto s : {Stance::kAgree, Stance::kDisagree}) CHECK(flip_label(flip_label(s)) == s);
    CHECK_THROWS_AS(flip_label(Stance::kDiscuss), bait::ContractError);
  }

  TEST_CASE("log is JSON lines") {
    World w;
    const std::vector<bait::data::SamplePair> samples = {{0, 1, Stance::kAgree}};
    const auto r = synthesize_flipped_samples(samples, w.parses, w.headlines, mini_wordnet(), w.lm);
    std::ostringstream out;
    write_synthesis_log(out, r.log);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["headline_id"] == 0);
    CHECK(j["method"] == "insert_not");
    CHECK(j["negated"] == "Israel has not opened the dams");
  }
}

TEST_SUITE("arc") {
  std::vector<ArcRecord> records(std::size_t topics, std::size_t per_topic) {
    std::vector<ArcRecord> out;
    const ArcSupport cycle[] = {ArcSupport::kClaim, ArcSupport::kOpposing, ArcSupport::kNeither};
    for (std::size_t t = 0; t < topics; ++t) {
      for (std::size_t i = 0; i < per_topic; ++i) {
        const std::string ts = std::to_string(t);
        out.push_back({"topic " + ts, "post " + ts + "-" + std::to_string(i), "claim " + ts,
                       "opposing " + ts, cycle[(t + i) % 3]});
      }
    }
    return out;
  }

  TEST_CASE("support labels map onto stances") {
    bait::data::HeadlineTable h;
    const std::vector<ArcRecord> r = {{"t1", "p1", "c1", "o1", ArcSupport::kClaim},
                                      {"t1", "p2", "c1", "o1", ArcSupport::kOpposing},
                                      {"t1", "p3", "c1", "o1", ArcSupport::kNeither}};
    const auto a = adapt_arc(r, h, 1000, 1, 0.0);
    REQUIRE(a.samples.size() == 3);
    CHECK(a.samples[0].stance == Stance::kAgree);
    CHECK(a.samples[1].stance == Stance::kDisagree);
    CHECK(a.samples[2].stance == Stance::kDiscuss);
    CHECK(h.text(a.samples[0].headline_id) == "c1");
    CHECK(a.bodies.at(a.samples[1].body_id) == "p2");
    CHECK(a.samples[0].body_id == 1000);
  }

  TEST_CASE("unrelated pairs fill three quarters and cross topics") {
    bait::data::HeadlineTable h;
    const auto r = records(6, 20);
    const auto a = adapt_arc(r, h, 0, 42);
    std::size_t unr = 0;
    std::map<std::uint32_t, std::string> body_topic;
    for (const auto& rec : r) {
      for (const auto& [id, text] : a.bodies) {
        if (text == rec.post) body_topic[id] = rec.topic;
      }
    }
    for (const auto& s : a.samples) {
      if (s.stance != Stance::kUnrelated) continue;
      ++unr;
      const std::string& claim = h.text(s.headline_id);
      const std::string claim_topic = "topic " + claim.substr(claim.find(' ') + 1);
      CHECK(claim_topic != body_topic.at(s.body_id));
    }
    CHECK(std::abs(double(unr) / double(a.samples.size()) - 0.75) < 0.01);
    // Same seed, same output.
    bait::data::HeadlineTable h2;
    const auto b = adapt_arc(r, h2, 0, 42);
    CHECK(a.samples == b.samples);
  }

  TEST_CASE("csv reading and missing fields") {
    std::istringstream ok("topic,post,claim,opposing_claim,support\nT,\"a post, with comma\",C,O,opposing\n");
    const auto r = read_arc_csv(ok, "ok");
    REQUIRE(r.size() == 1);
    CHECK(r[0].post == "a post, with comma");
    CHECK(r[0].support == ArcSupport::kOpposing);
    std::istringstream missing("topic,post,claim,opposing_claim,support\nT,,C,O,claim\n");
    try {
      read_arc_csv(missing, "missing");
      FAIL("expected a parse error");
    } catch (const bait::ParseError& e) {
      CHECK(e.line() == 2);
    }
    std::istringstream bad("topic,post,claim,opposing_claim,support\nT,P,C,O,maybe\n");
    CHECK_THROWS_AS(read_arc_csv(bad, "bad"), bait::ParseError);
    std::istringstream nocol("topic,post,claim,support\nT,P,C,claim\n");
    CHECK_THROWS_AS(read_arc_csv(nocol, "nocol"), bait::ParseError);
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cds/errors.hpp"
#include "cds/features.hpp"
#include "cds/lexicons.hpp"
#include "cds/ngram_store.hpp"
#include "test_util.hpp"

using namespace cds;
using testutil::fixture;

namespace {

Instance tw(std::string id, std::string text, Label l = Label::NonSarcastic) {
  return {std::move(id), std::move(text), Domain::Twitter, l, std::nullopt, std::nullopt};
}

Instance am(std::string id, std::string text, Label l = Label::NonSarcastic,
            std::optional<int> stars = std::nullopt) {
  return {std::move(id), std::move(text), Domain::Amazon, l, stars, std::nullopt};
}

struct Fixtures {
  PolarityLexicon liu = load_polarity(fixture("liu05_pos.txt"), fixture("liu05_neg.txt"));
  SubjectivityLexicon mpqa = load_subjectivity(fixture("mpqa.tsv"));
  ScoredLexicon afinn = load_scored(fixture("afinn.tsv"));
  IndicatorLists indicators = load_indicators(fixture("indicators"));
  NgramStore ngrams = NgramStore::load(fixture("counts.tsv"));
};

const Fixtures& fx() {
  static Fixtures f;
  return f;
}

}  // namespace

TEST_CASE("tokenize splits words and peels punctuation") {
  CHECK(tokenize("Great, just great!") ==
        std::vector<std::string>{"Great", ",", "just", "great", "!"});
  CHECK(tokenize("#love it") == std::vector<std::string>{"#love", "it"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("@bob hi!") == std::vector<std::string>{"@bob", "hi", "!"});
  CHECK(tokenize("wow...") == std::vector<std::string>{"wow", ".", ".", "."});
  CHECK(tokenize("#") == std::vector<std::string>{"#"});
}

TEST_CASE("token normalization strips case and surrounding punctuation") {
  CHECK(strip_surrounding_punct("'Great,'") == "Great");
  CHECK(norm_token("Great!") == "great");
  CHECK(norm_token("?!") == "");
  CHECK(norm_token("#Love") == "love");
  CHECK(norm_token("can't") == "can't");
}

TEST_CASE("group parsing round-trips and rejects unknowns") {
  CHECK(parse_group("syntactic") == FeatureGroup::Syntactic);
  CHECK(!parse_group("nope").has_value());
  CHECK(parse_groups("all").enabled.size() == 10);
  CHECK(parse_groups("general").enabled.size() == 8);
  CHECK(!parse_groups("general").has(FeatureGroup::TwitterSpecific));
  CHECK(parse_groups("syntactic,pmi").enabled.size() == 2);
  CHECK_THROWS_AS(parse_groups("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_groups(""), std::invalid_argument);
  CHECK(FeatureConfig::of({FeatureGroup::Syntactic}).describe() == "syntactic");
}

TEST_CASE("syntactic-only schema is exactly the six names") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Syntactic}), nullptr, nullptr,
                      nullptr, nullptr, nullptr, nullptr);
  CHECK(ex.schema() == std::vector<std::string>{"all_caps_count", "all_caps_ratio",
                                                "max_consecutive_chars",
                                                "max_consecutive_punct", "has_exclamation",
                                                "has_question"});
}

TEST_CASE("syntactic feature goldens") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Syntactic}), nullptr, nullptr,
                      nullptr, nullptr, nullptr, nullptr);

  auto fv = ex.extract(tw("a", "Sooooo happy!"));
  CHECK(fv.at("max_consecutive_chars") == FeatureValue::real(5));
  CHECK(fv.at("has_exclamation") == FeatureValue::binary(true));
  CHECK(fv.at("has_question") == FeatureValue::binary(false));

  auto caps = ex.extract(tw("b", "GREAT movie LOL"));
  CHECK(caps.at("all_caps_count") == FeatureValue::real(2));
  CHECK(caps.at("all_caps_ratio").num == doctest::Approx(2.0 / 3.0));

  auto punct = ex.extract(tw("c", "wait what?!?!"));
  CHECK(punct.at("max_consecutive_punct") == FeatureValue::real(4));
  CHECK(punct.at("has_question") == FeatureValue::binary(true));
  CHECK(punct.at("has_exclamation") == FeatureValue::binary(true));

  auto empty = ex.extract(tw("d", ""));
  CHECK(empty.at("all_caps_count") == FeatureValue::real(0));
  CHECK(empty.at("all_caps_ratio") == FeatureValue::real(0));
  CHECK(empty.at("max_consecutive_chars") == FeatureValue::real(0));
}

TEST_CASE("character runs reset at whitespace") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Syntactic}), nullptr, nullptr,
                      nullptr, nullptr, nullptr, nullptr);
  auto fv = ex.extract(tw("a", "aa aa!! !!"));
  CHECK(fv.at("max_consecutive_chars") == FeatureValue::real(2));
  CHECK(fv.at("max_consecutive_punct") == FeatureValue::real(2));
}

TEST_CASE("amazon features read stars and interjections") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::AmazonSpecific}), nullptr, nullptr,
                      nullptr, nullptr, nullptr, nullptr);

  auto fv = ex.extract(am("a", "wow just wow... huh", Label::Sarcastic, 2));
  CHECK(fv.at("star_rating") == FeatureValue::real(2));
  CHECK(fv.at("contains_wow") == FeatureValue::binary(true));
  CHECK(fv.at("contains_huh") == FeatureValue::binary(true));
  CHECK(fv.at("contains_ugh") == FeatureValue::binary(false));
  CHECK(fv.at("contains_ellipsis") == FeatureValue::binary(true));

  auto tweet = ex.extract(tw("b", "no stars here ugh"));
  CHECK(tweet.at("star_rating").is_missing());
  CHECK(tweet.at("contains_ugh") == FeatureValue::binary(true));
  CHECK(tweet.at("contains_ellipsis") == FeatureValue::binary(false));

  auto uni = ex.extract(am("c", "fine\xE2\x80\xA6 whatever", Label::NonSarcastic, 3));
  CHECK(uni.at("contains_ellipsis") == FeatureValue::binary(true));

  auto two_dots = ex.extract(am("d", "fine.. whatever", Label::NonSarcastic, 3));
  CHECK(two_dots.at("contains_ellipsis") == FeatureValue::binary(false));
}

TEST_CASE("most polar term picks the largest magnitude") {
  FeatureExtractor ex(
      FeatureConfig::of({FeatureGroup::MostPolarWord, FeatureGroup::MostPolarScore}),
      nullptr, nullptr, &fx().afinn, nullptr, nullptr, nullptr);

  auto fv = ex.extract(am("a", "awesome book terrible plot", Label::Sarcastic, 1));
  CHECK(fv.at("most_polar_unigram") == FeatureValue::categorical("awesome"));
  CHECK(fv.at("most_polar_score") == FeatureValue::real(4));

  SUBCASE("magnitude ties go negative") {
    auto t = ex.extract(tw("b", "love hate"));
    CHECK(t.at("most_polar_unigram") == FeatureValue::categorical("hate"));
    CHECK(t.at("most_polar_score") == FeatureValue::real(-3));
  }
  SUBCASE("full ties go to the earliest hit") {
    auto t = ex.extract(tw("c", "fantastic awesome"));
    CHECK(t.at("most_polar_unigram") == FeatureValue::categorical("fantastic"));
  }
  SUBCASE("phrases can win") {
    auto t = ex.extract(tw("d", "i can't stand this"));
    CHECK(t.at("most_polar_unigram") == FeatureValue::categorical("can't stand"));
    CHECK(t.at("most_polar_score") == FeatureValue::real(-3));
  }
  SUBCASE("no hits means missing") {
    auto t = ex.extract(tw("e", "plain neutral words"));
    CHECK(t.at("most_polar_unigram").is_missing());
    CHECK(t.at("most_polar_score").is_missing());
  }
}

TEST_CASE("polarity aggregate goldens") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::OtherPolarity}), &fx().liu,
                      &fx().mpqa, &fx().afinn, nullptr, nullptr, nullptr);

  auto fv = ex.extract(am("a", "awesome book terrible plot", Label::Sarcastic, 1));
  CHECK(fv.at("avg_polarity_liu05") == FeatureValue::real(0));
  CHECK(fv.at("overall_polarity_liu05") == FeatureValue::real(0));
  CHECK(fv.at("pct_positive_liu05") == FeatureValue::real(0.25));
  CHECK(fv.at("pct_negative_liu05") == FeatureValue::real(0.25));
  CHECK(fv.at("avg_polarity_mpqa") == FeatureValue::real(0));
  CHECK(fv.at("avg_polarity_afinn") == FeatureValue::real(0.5));
  CHECK(fv.at("overall_polarity_afinn") == FeatureValue::real(1));
  CHECK(fv.at("largest_score_gap") == FeatureValue::real(7));

  auto none = ex.extract(tw("b", "plain neutral words"));
  CHECK(none.at("avg_polarity_liu05").is_missing());
  CHECK(none.at("avg_polarity_afinn").is_missing());
  CHECK(none.at("largest_score_gap").is_missing());
  CHECK(none.at("overall_polarity_liu05") == FeatureValue::real(0));
  CHECK(none.at("pct_positive_liu05") == FeatureValue::real(0));
}

TEST_CASE("subjectivity fractions") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Subjectivity}), nullptr, &fx().mpqa,
                      nullptr, nullptr, nullptr, nullptr);

  auto fv = ex.extract(tw("a", "great happy good nice"));
  CHECK(fv.at("pct_strong_subj_positive") == FeatureValue::real(0.5));
  CHECK(fv.at("pct_weak_subj_positive") == FeatureValue::real(0.5));
  CHECK(fv.at("pct_strong_subj_negative") == FeatureValue::real(0));
  CHECK(fv.at("pct_weak_subj_negative") == FeatureValue::real(0));

  auto none = ex.extract(tw("b", "plain neutral words"));
  CHECK(none.at("pct_strong_subj_positive").is_missing());
  CHECK(none.at("pct_weak_subj_negative").is_missing());
}

TEST_CASE("twitter indicator features") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::TwitterSpecific}), nullptr, nullptr,
                      nullptr, &fx().indicators, nullptr, nullptr);

  auto tagged = ex.extract(tw("a", "nice #IRONY indeed"));
  CHECK(tagged.at("contains_sarcasm_hashtag") == FeatureValue::binary(true));
  CHECK(tagged.at("hashtag:irony") == FeatureValue::binary(true));
  CHECK(tagged.at("hashtag:sarcasm") == FeatureValue::binary(false));

  auto smiley = ex.extract(tw("b", "great day ;)"));
  CHECK(smiley.at("contains_sarcastic_smiley") == FeatureValue::binary(true));

  auto phrase = ex.extract(tw("c", "yeah right buddy"));
  CHECK(phrase.at("contains_sarcasm_indicator") == FeatureValue::binary(true));

  auto pred = ex.extract(tw("d", "i love this"));
  CHECK(pred.at("contains_positive_predicate") == FeatureValue::binary(true));

  auto sent = ex.extract(tw("e", "so happy today"));
  CHECK(sent.at("contains_positive_sentiment") == FeatureValue::binary(true));

  auto situ = ex.extract(tw("f", "waking up early again"));
  CHECK(situ.at("contains_negative_situation") == FeatureValue::binary(true));

  auto laugh = ex.extract(tw("g", "so fun LOL"));
  CHECK(laugh.at("contains_laughter") == FeatureValue::binary(true));
  CHECK(laugh.at("laughter:lol") == FeatureValue::binary(true));
  CHECK(laugh.at("laughter:haha") == FeatureValue::binary(false));

  auto plain = ex.extract(tw("h", "nothing special today"));
  for (const auto& name : ex.schema()) {
    CHECK(plain.at(name) == FeatureValue::binary(false));
  }
}

TEST_CASE("positive phrase preceding a negative situation within five tokens") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::TwitterSpecific}), nullptr, nullptr,
                      nullptr, &fx().indicators, nullptr, nullptr);
  auto near = ex.extract(tw("a", "i love waking up early"));
  CHECK(near.at("pos_precedes_neg_situation") == FeatureValue::binary(true));

  auto at_limit = ex.extract(tw("b", "i love a b c d waking up early"));
  CHECK(at_limit.at("pos_precedes_neg_situation") == FeatureValue::binary(true));

  auto too_far = ex.extract(tw("c", "i love a b c d e waking up early"));
  CHECK(too_far.at("pos_precedes_neg_situation") == FeatureValue::binary(false));

  auto wrong_order = ex.extract(tw("d", "waking up early i love it"));
  CHECK(wrong_order.at("pos_precedes_neg_situation") == FeatureValue::binary(false));
}

TEST_CASE("pmi features follow the most polar hit") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Pmi}), nullptr, nullptr, &fx().afinn,
                      nullptr, &fx().ngrams, nullptr);
  CHECK(ex.schema() == std::vector<std::string>{"pmi_1", "pmi_2", "pmi_3", "pmi_4"});

  auto fv = ex.extract(am("a", "awesome book terrible plot", Label::Sarcastic, 1));
  // joint 3, head marginal 5, tail marginal 4, bigram total 88
  CHECK(fv.at("pmi_1").num == doctest::Approx(std::log(3.0 * 88.0 / (5.0 * 4.0))));
  CHECK(fv.at("pmi_2").is_missing());
  CHECK(fv.at("pmi_4").is_missing());

  auto tri = ex.extract(tw("b", "awesome book club tonight"));
  CHECK(tri.at("pmi_2").num == doctest::Approx(std::log(16.0)));
  CHECK(tri.at("pmi_3").is_missing());

  auto no_hit = ex.extract(tw("c", "plain neutral words"));
  CHECK(no_hit.at("pmi_1").is_missing());
}

TEST_CASE("mention tokens become wildcards in pmi tails") {
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Pmi}), nullptr, nullptr, &fx().afinn,
                      nullptr, &fx().ngrams, nullptr);
  // the wildcard makes joint equal the head marginal, so independence is exact
  auto fv = ex.extract(tw("a", "awesome @shop book"));
  REQUIRE(!fv.at("pmi_1").is_missing());
  CHECK(fv.at("pmi_1").num == 0.0);
}

TEST_CASE("extractor demands the resources its groups use") {
  auto wants = [](FeatureConfig cfg, const char* needle) {
    try {
      FeatureExtractor ex(cfg, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr);
      FAIL("expected ResourceMissingError");
    } catch (const ResourceMissingError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  wants(FeatureConfig::of({FeatureGroup::TwitterSpecific}), "twitter");
  wants(FeatureConfig::of({FeatureGroup::Boaw}), "boaw");
  wants(FeatureConfig::of({FeatureGroup::Bocw}), "fitted association model");
  wants(FeatureConfig::of({FeatureGroup::Pmi}), "pmi");
  try {
    FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Pmi}), nullptr, nullptr,
                        &fx().afinn, nullptr, nullptr, nullptr);
    FAIL("expected ResourceMissingError");
  } catch (const ResourceMissingError& e) {
    CHECK(std::string(e.what()).find("n-gram count store") != std::string::npos);
  }
  wants(FeatureConfig::of({FeatureGroup::OtherPolarity}), "other_polarity");
  CHECK_THROWS_AS(FeatureExtractor(FeatureConfig{}, nullptr, nullptr, nullptr, nullptr,
                                   nullptr, nullptr),
                  std::invalid_argument);
}

TEST_CASE("association fitting selects the most label-bound words") {
  std::vector<Instance> train = {
      tw("t1", "zig common", Label::Sarcastic),
      tw("t2", "zig common", Label::Sarcastic),
      tw("t3", "zag common", Label::NonSarcastic),
      tw("t4", "zag common", Label::NonSarcastic),
      am("a1", "gamma", Label::Sarcastic, 1),
      am("a2", "delta", Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {}, 1);

  CHECK(m.boaw_groups[0].words == std::vector<std::string>{"zig"});
  CHECK(m.boaw_groups[1].words == std::vector<std::string>{"zag"});
  CHECK(m.boaw_groups[2].words == std::vector<std::string>{"gamma"});
  CHECK(m.boaw_groups[3].words == std::vector<std::string>{"delta"});
  CHECK(m.boaw_vocab == std::vector<std::string>{"delta", "gamma", "zag", "zig"});

  // brute-force the smoothed ratio over the twitter sarcastic group
  std::map<std::string, double> scores;
  double n = 4, n_sarc = 2;
  std::map<std::string, double> present = {{"zig", 2}, {"zag", 2}, {"common", 4}};
  std::map<std::string, double> present_sarc = {{"zig", 2}, {"common", 2}};
  for (const auto& [w, cwl] : present_sarc) {
    double p_wl = (cwl + 1) / (n + 2);
    double p_w = (present[w] + 1) / (n + 2);
    double p_l = (n_sarc + 1) / (n + 2);
    scores[w] = p_wl / (p_w * p_l);
  }
  auto best = std::max_element(scores.begin(), scores.end(), [](auto& a, auto& b) {
    return a.second < b.second;
  });
  CHECK(best->first == m.boaw_groups[0].words[0]);
}

TEST_CASE("association score ties resolve lexicographically") {
  std::vector<Instance> train = {
      tw("t1", "zig zebra", Label::Sarcastic),
      tw("t2", "filler", Label::NonSarcastic),
      am("a1", "x", Label::Sarcastic, 1),
      am("a2", "y", Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {}, 1);
  CHECK(m.boaw_groups[0].words == std::vector<std::string>{"zebra"});
}

TEST_CASE("association fitting with k=0 yields empty vocabularies") {
  std::vector<Instance> train = {
      tw("t1", "a", Label::Sarcastic),      tw("t2", "b", Label::NonSarcastic),
      am("a1", "c", Label::Sarcastic, 1),   am("a2", "d", Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {}, 0);
  CHECK(m.boaw_vocab.empty());
  CHECK(m.bocw_vocab.empty());
  for (const auto& g : m.boaw_groups) CHECK(g.words.empty());
}

TEST_CASE("association fitting requires every domain-class group") {
  std::vector<Instance> train = {
      tw("t1", "a", Label::Sarcastic),
      tw("t2", "b", Label::NonSarcastic),
  };
  try {
    fit_associations(train, {}, 1);
    FAIL("expected MissingGroupError");
  } catch (const MissingGroupError& e) {
    CHECK(std::string(e.what()).find("amazon") != std::string::npos);
  }
}

TEST_CASE("common-word lists drop words shared across groups") {
  std::vector<Instance> train = {
      tw("t1", "shared shared alpha", Label::Sarcastic),
      tw("t2", "shared shared beta", Label::NonSarcastic),
      am("a1", "shared shared gamma", Label::Sarcastic, 1),
      am("a2", "shared shared delta", Label::NonSarcastic, 5),
  };
  SUBCASE("a universally shared top word vanishes entirely") {
    auto m = fit_associations(train, {}, 1);
    CHECK(m.bocw_vocab.empty());
    for (const auto& g : m.bocw_groups) CHECK(g.words.empty());
  }
  SUBCASE("group-unique runners-up survive") {
    auto m = fit_associations(train, {}, 2);
    CHECK(m.bocw_vocab == std::vector<std::string>{"alpha", "beta", "delta", "gamma"});
  }
}

TEST_CASE("stopwords gate association words but not common words") {
  std::vector<Instance> train = {
      tw("t1", "the the zig", Label::Sarcastic),
      tw("t2", "zag", Label::NonSarcastic),
      am("a1", "g", Label::Sarcastic, 1),
      am("a2", "d", Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {"the"}, 1);
  CHECK(m.boaw_groups[0].words == std::vector<std::string>{"zig"});
  CHECK(m.bocw_groups[0].words == std::vector<std::string>{"the"});
  CHECK(std::count(m.bocw_vocab.begin(), m.bocw_vocab.end(), "the") == 1);
}

TEST_CASE("four non-overlapping groups at k=50 give 200 bag-of-words columns") {
  auto words_for = [](const std::string& prefix) {
    std::string text;
    for (int i = 0; i < 50; ++i) {
      if (i) text += ' ';
      text += prefix + std::to_string(100 + i);
    }
    return text;
  };
  std::vector<Instance> train = {
      tw("t1", words_for("tws"), Label::Sarcastic),
      tw("t2", words_for("twn"), Label::NonSarcastic),
      am("a1", words_for("ams"), Label::Sarcastic, 1),
      am("a2", words_for("amn"), Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {}, 50);
  CHECK(m.boaw_vocab.size() == 200);
  CHECK(m.bocw_vocab.size() == 200);
  CHECK(std::is_sorted(m.boaw_vocab.begin(), m.boaw_vocab.end()));

  auto schema = feature_schema(
      FeatureConfig::of({FeatureGroup::Boaw, FeatureGroup::Bocw}), &m, nullptr);
  CHECK(schema.size() == 400);
  CHECK(schema.front().rfind("boaw:", 0) == 0);
  CHECK(schema.back().rfind("bocw:", 0) == 0);
}

TEST_CASE("bag-of-words features fire on normalized tokens") {
  std::vector<Instance> train = {
      tw("t1", "zig common", Label::Sarcastic),
      tw("t2", "zag common", Label::NonSarcastic),
      am("a1", "gamma", Label::Sarcastic, 1),
      am("a2", "delta", Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {}, 1);
  FeatureExtractor ex(FeatureConfig::of({FeatureGroup::Boaw}), nullptr, nullptr, nullptr,
                      nullptr, nullptr, &m);
  auto fv = ex.extract(tw("x", "ZIG!"));
  CHECK(fv.at("boaw:zig") == FeatureValue::binary(true));
  CHECK(fv.at("boaw:zag") == FeatureValue::binary(false));
}

TEST_CASE("association model JSON round-trips") {
  std::vector<Instance> train = {
      tw("t1", "zig common", Label::Sarcastic),
      tw("t2", "zag common", Label::NonSarcastic),
      am("a1", "gamma delta", Label::Sarcastic, 1),
      am("a2", "delta gamma", Label::NonSarcastic, 5),
  };
  auto m = fit_associations(train, {"of", "the"}, 2);
  auto text = assoc_to_json_string(m);
  auto back = assoc_from_json_string(text);
  CHECK(back.per_group_k == m.per_group_k);
  CHECK(back.stopwords == m.stopwords);
  CHECK(back.boaw_vocab == m.boaw_vocab);
  CHECK(back.bocw_vocab == m.bocw_vocab);
  for (int i = 0; i < 4; ++i) {
    CHECK(back.boaw_groups[i].words == m.boaw_groups[i].words);
    CHECK(back.bocw_groups[i].words == m.bocw_groups[i].words);
    CHECK(back.boaw_groups[i].domain == m.boaw_groups[i].domain);
    CHECK(back.boaw_groups[i].label == m.boaw_groups[i].label);
  }
  CHECK(assoc_to_json_string(back) == text);

  CHECK_THROWS_AS(assoc_from_json_string("not json"), Error);
  CHECK_THROWS_AS(assoc_from_json_string("{\"format\":\"other\"}"), Error);
}

TEST_CASE("schema matches extraction order for every config") {
  auto twitter = load_dataset(fixture("twitter.jsonl"), DatasetFormat::Jsonl);
  auto amazon = load_dataset(fixture("amazon.jsonl"), DatasetFormat::Jsonl);
  std::vector<Instance> train = twitter.instances;
  train.insert(train.end(), amazon.instances.begin(), amazon.instances.end());
  auto stop = load_wordlist(fixture("stopwords.txt"));
  auto assoc = fit_associations(train, stop, 10);

  auto cfg = FeatureConfig::all();
  FeatureExtractor ex(cfg, &fx().liu, &fx().mpqa, &fx().afinn, &fx().indicators,
                      &fx().ngrams, &assoc);
  CHECK(ex.schema() == feature_schema(cfg, &assoc, &fx().indicators));

  for (const auto& inst : train) {
    auto fv = ex.extract(inst);
    REQUIRE(fv.names == ex.schema());
    REQUIRE(fv.values.size() == ex.schema().size());
    CHECK(fv == ex.extract(inst));
    for (std::size_t i = 0; i < fv.names.size(); ++i) {
      if (fv.names[i].rfind("pct_", 0) == 0 && !fv.values[i].is_missing()) {
        CHECK(fv.values[i].num >= 0.0);
        CHECK(fv.values[i].num <= 1.0);
      }
    }
  }
}

TEST_CASE("matrix TSV writes header, cells, and missing blanks") {
  std::vector<std::string> schema = {"a", "b", "c", "d"};
  FeatureVector row;
  row.names = schema;
  row.values = {FeatureValue::real(2.5), FeatureValue::binary(true),
                FeatureValue::missing(), FeatureValue::categorical("tok")};
  std::ostringstream out;
  write_matrix_tsv(out, schema, {row});
  CHECK(out.str() == "a\tb\tc\td\n2.5\t1\t\ttok\n");

  CHECK(feature_value_cell(FeatureValue::binary(false)) == "0");
  CHECK(feature_value_cell(FeatureValue::missing()).empty());

  FeatureVector bad;
  bad.names = {"a"};
  bad.values = {FeatureValue::real(1)};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_matrix_tsv(sink, schema, {bad}), SchemaMismatchError);
}

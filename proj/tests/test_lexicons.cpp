#include <doctest.h>

#include <algorithm>

#include "cds/errors.hpp"
#include "cds/lexicons.hpp"
#include "test_util.hpp"

using namespace cds;
using testutil::TempDir;

TEST_CASE("load_polarity builds lowercase word sets") {
  TempDir tmp;
  auto pos = tmp.file("pos.txt", "Good\ngreat\n# a comment\n\ngood\n");
  auto neg = tmp.file("neg.txt", "bad\n; also a comment\n");
  auto lex = load_polarity(pos, neg);
  CHECK(lex.positive.size() == 2);
  CHECK(lex.negative.size() == 1);
  CHECK(lex.positive.count("good") == 1);
  CHECK(lex.dropped_conflicts.empty());
}

TEST_CASE("load_polarity drops conflicts by default and records them") {
  TempDir tmp;
  auto pos = tmp.file("pos.txt", "good\nodd\nzany\n");
  auto neg = tmp.file("neg.txt", "bad\nodd\nzany\n");
  auto lex = load_polarity(pos, neg);
  CHECK(lex.positive.count("odd") == 0);
  CHECK(lex.negative.count("odd") == 0);
  CHECK(lex.positive.count("good") == 1);
  CHECK(lex.negative.count("bad") == 1);
  CHECK(lex.dropped_conflicts == std::vector<std::string>{"odd", "zany"});
}

TEST_CASE("load_polarity strict mode raises on conflicts") {
  TempDir tmp;
  auto pos = tmp.file("pos.txt", "good\nodd\n");
  auto neg = tmp.file("neg.txt", "odd\n");
  CHECK_THROWS_AS(load_polarity(pos, neg, true), ConflictError);
}

TEST_CASE("load_polarity handles empty files and missing files") {
  TempDir tmp;
  auto lex = load_polarity(tmp.file("p.txt", ""), tmp.file("n.txt", ""));
  CHECK(lex.empty());
  CHECK_THROWS_AS(load_polarity(tmp.path() / "absent.txt", tmp.path() / "n.txt"), IoError);
}

TEST_CASE("load_scored parses terms and phrases") {
  TempDir tmp;
  auto p = tmp.file("a.tsv", "awesome\t4\ncan't stand\t-3\nLOL\t3\n");
  auto lex = load_scored(p);
  CHECK(lex.score("awesome") == 4);
  CHECK(lex.score("can't stand") == -3);
  CHECK(lex.score("lol") == 3);
  CHECK(!lex.score("meh").has_value());
  CHECK(lex.max_phrase_tokens == 2);
}

TEST_CASE("load_scored rejects out-of-range and zero scores") {
  TempDir tmp;
  CHECK_THROWS_AS(load_scored(tmp.file("z.tsv", "meh\t0\n")), RangeError);
  CHECK_THROWS_AS(load_scored(tmp.file("hi.tsv", "wow\t6\n")), RangeError);
  CHECK_THROWS_AS(load_scored(tmp.file("lo.tsv", "ugh\t-6\n")), RangeError);
  CHECK_THROWS_AS(load_scored(tmp.file("bad.tsv", "word only\n")), ParseError);
  CHECK_THROWS_AS(load_scored(tmp.file("nan.tsv", "word\tx\n")), ParseError);
}

TEST_CASE("load_scored resolves duplicates by magnitude, negative on ties") {
  TempDir tmp;
  auto lex = load_scored(tmp.file("d.tsv", "word\t2\nword\t-4\nword\t3\n"));
  CHECK(lex.score("word") == -4);
  auto tie = load_scored(tmp.file("t.tsv", "word\t3\nword\t-3\n"));
  CHECK(tie.score("word") == -3);
  auto tie2 = load_scored(tmp.file("t2.tsv", "word\t-3\nword\t3\n"));
  CHECK(tie2.score("word") == -3);
}

TEST_CASE("load_subjectivity parses entries") {
  TempDir tmp;
  auto p = tmp.file("m.tsv", "delighted\tstrong\tpos\nokay\tweak\tpos\ngrim\tstrong\tneg\n");
  auto lex = load_subjectivity(p);
  auto* e = lex.find("delighted");
  REQUIRE(e != nullptr);
  CHECK(e->strength == Strength::Strong);
  CHECK(e->polarity == Polarity::Pos);
  CHECK(lex.find("missing") == nullptr);
}

TEST_CASE("load_subjectivity resolves duplicates strongest-first") {
  TempDir tmp;
  auto lex = load_subjectivity(
      tmp.file("d.tsv", "word\tweak\tpos\nword\tstrong\tpos\nword\tweak\tneg\n"));
  auto* e = lex.find("word");
  REQUIRE(e != nullptr);
  CHECK(e->strength == Strength::Strong);
  CHECK(e->polarity == Polarity::Pos);

  auto tie = load_subjectivity(tmp.file("t.tsv", "word\tstrong\tpos\nword\tstrong\tneg\n"));
  CHECK(tie.find("word")->polarity == Polarity::Neg);
}

TEST_CASE("load_subjectivity rejects malformed rows") {
  TempDir tmp;
  CHECK_THROWS_AS(load_subjectivity(tmp.file("s.tsv", "word\tmedium\tpos\n")), ParseError);
  CHECK_THROWS_AS(load_subjectivity(tmp.file("p.tsv", "word\tstrong\tneutral\n")), ParseError);
  CHECK_THROWS_AS(load_subjectivity(tmp.file("c.tsv", "word\tstrong\n")), ParseError);
}

TEST_CASE("lexicon loading is line-order independent") {
  TempDir tmp;
  auto a = load_scored(tmp.file("a.tsv", "x\t2\ny\t-1\nx\t-2\n"));
  auto b = load_scored(tmp.file("b.tsv", "x\t-2\ny\t-1\nx\t2\n"));
  CHECK(a.entries == b.entries);

  auto sa = load_subjectivity(tmp.file("sa.tsv", "w\tweak\tpos\nw\tstrong\tneg\n"));
  auto sb = load_subjectivity(tmp.file("sb.tsv", "w\tstrong\tneg\nw\tweak\tpos\n"));
  CHECK(sa.find("w")->strength == sb.find("w")->strength);
  CHECK(sa.find("w")->polarity == sb.find("w")->polarity);
}

TEST_CASE("laughter tokens are the fixed nine") {
  const auto& toks = IndicatorLists::laughter_tokens();
  REQUIRE(toks.size() == 9);
  CHECK(std::count(toks.begin(), toks.end(), "haha") == 1);
  CHECK(std::count(toks.begin(), toks.end(), "lol") == 1);
  CHECK(std::count(toks.begin(), toks.end(), "rofl") == 1);
}

TEST_CASE("load_indicators reads the six named files") {
  auto lists = load_indicators(testutil::fixture("indicators"));
  CHECK(lists.sarcasm_hashtags.size() == 5);
  CHECK(std::count(lists.sarcasm_hashtags.begin(), lists.sarcasm_hashtags.end(),
                   "sarcasm") == 1);
  CHECK(lists.sarcastic_smileys.size() == 5);
  CHECK(std::count(lists.sarcastic_smileys.begin(), lists.sarcastic_smileys.end(), ";)") ==
        1);
  CHECK(!lists.sarcasm_indicator_phrases.empty());
  CHECK(!lists.positive_predicates.empty());
  CHECK(!lists.positive_sentiment_phrases.empty());
  CHECK(!lists.negative_situation_phrases.empty());
}

TEST_CASE("load_indicators treats missing files as empty lists") {
  TempDir tmp;
  tmp.file("sarcastic_smileys.txt", ";)\n:p\n");
  auto lists = load_indicators(tmp.path());
  CHECK(lists.sarcastic_smileys == std::vector<std::string>{":p", ";)"});
  CHECK(lists.sarcasm_hashtags.empty());
  CHECK(lists.negative_situation_phrases.empty());
  CHECK(IndicatorLists::laughter_tokens().size() == 9);

  auto none = load_indicators(tmp.path() / "no_such_dir");
  CHECK(none.sarcastic_smileys.empty());
}

TEST_CASE("indicator comment markers need trailing whitespace") {
  TempDir tmp;
  tmp.file("sarcastic_smileys.txt", "; a comment line\n;)\n#\n# another comment\n");
  auto lists = load_indicators(tmp.path());
  CHECK(lists.sarcastic_smileys == std::vector<std::string>{";)"});
}

TEST_CASE("hashtag entries are stored bare") {
  TempDir tmp;
  tmp.file("sarcasm_hashtags.txt", "#Sarcasm\nirony\n##not\n");
  auto lists = load_indicators(tmp.path());
  CHECK(lists.sarcasm_hashtags == std::vector<std::string>{"irony", "not", "sarcasm"});
}

TEST_CASE("load_wordlist lowercases and skips comments") {
  TempDir tmp;
  auto words = load_wordlist(tmp.file("w.txt", "The\nand\n# skip\nAND\n"));
  CHECK(words.size() == 2);
  CHECK(words.count("the") == 1);
  CHECK(words.count("and") == 1);
}

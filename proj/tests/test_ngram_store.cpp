#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cds/errors.hpp"
#include "cds/ngram_store.hpp"
#include "cds/util.hpp"
#include "test_util.hpp"

using namespace cds;
using testutil::TempDir;

TEST_CASE("build counts sliding windows") {
  TempDir tmp;
  auto store = NgramStore::build(tmp.file("c.txt", "a b a b\n"), 2);
  CHECK(store.count({"a"}) == 2);
  CHECK(store.count({"b"}) == 2);
  CHECK(store.count({"a", "b"}) == 2);
  CHECK(store.count({"b", "a"}) == 1);
  CHECK(store.total(1) == 4);
  CHECK(store.total(2) == 3);
}

TEST_CASE("build does not cross line boundaries") {
  TempDir tmp;
  auto store = NgramStore::build(tmp.file("c.txt", "a b\nc d\n"), 2);
  CHECK(store.count({"a", "b"}) == 1);
  CHECK(store.count({"c", "d"}) == 1);
  CHECK(store.count({"b", "c"}) == 0);
  CHECK(store.total(2) == 2);
}

TEST_CASE("tokens are lowercased at the boundary") {
  TempDir tmp;
  auto store = NgramStore::build(tmp.file("c.txt", "Good MOVIE good movie\n"), 2);
  CHECK(store.count({"good"}) == 2);
  CHECK(store.count({"GOOD", "Movie"}) == 2);
}

TEST_CASE("build validates max_n") {
  TempDir tmp;
  auto p = tmp.file("c.txt", "a b c\n");
  CHECK_THROWS_AS(NgramStore::build(p, 1), std::invalid_argument);
  CHECK_THROWS_AS(NgramStore::build(p, 6), std::invalid_argument);
  CHECK_THROWS_AS(NgramStore::build(tmp.path() / "absent.txt", 2), IoError);
}

TEST_CASE("empty and single-token corpora") {
  TempDir tmp;
  auto empty = NgramStore::build(tmp.file("e.txt", ""), 2);
  CHECK(empty.empty());
  CHECK(empty.total(2) == 0);
  CHECK(!empty.pmi(PmiQuery::of("a", {"b"})).has_value());

  auto one = NgramStore::build(tmp.file("one.txt", "solo\n"), 2);
  CHECK(one.total(1) == 1);
  CHECK(one.total(2) == 0);
  CHECK(!one.pmi(PmiQuery::of("solo", {"solo"})).has_value());
}

TEST_CASE("load sums duplicates and derives unigrams from bigram heads") {
  TempDir tmp;
  auto store = NgramStore::load(tmp.file("c.tsv", "good movie\t2\ngood film\t2\n"));
  CHECK(store.head_marginal("good", 1) == 4);
  CHECK(store.count({"good"}) == 4);
  CHECK(store.tail_marginal({"movie"}) == 2);

  auto dup = NgramStore::load(tmp.file("d.tsv", "a b\t2\na b\t3\n"));
  CHECK(dup.count({"a", "b"}) == 5);
  CHECK(dup.total(2) == 5);
}

TEST_CASE("load keeps explicit unigram counts") {
  TempDir tmp;
  auto store = NgramStore::load(tmp.file("c.tsv", "good\t7\ngood movie\t2\n"));
  CHECK(store.count({"good"}) == 7);
}

TEST_CASE("load rejects malformed lines") {
  TempDir tmp;
  CHECK_THROWS_AS(NgramStore::load(tmp.file("n.tsv", "a b\t-1\n")), NegativeCountError);
  CHECK_THROWS_AS(NgramStore::load(tmp.file("t.tsv", "a b 3\n")), ParseError);
  CHECK_THROWS_AS(NgramStore::load(tmp.file("c.tsv", "a b\tx\n")), ParseError);
  CHECK_THROWS_AS(NgramStore::load(tmp.file("l.tsv", "a b c d e f\t1\n")), ParseError);
}

TEST_CASE("pmi is exactly zero under independence") {
  TempDir tmp;
  auto store = NgramStore::load(
      tmp.file("c.tsv", "good movie\t2\ngood film\t2\nbad movie\t3\nbad film\t3\n"));
  auto v = store.pmi(PmiQuery::of("good", {"movie"}));
  REQUIRE(v.has_value());
  CHECK(*v == 0.0);
}

TEST_CASE("pmi matches the count-ratio formula") {
  TempDir tmp;
  auto store = NgramStore::load(
      tmp.file("c.tsv", "good movie\t4\nbad movie\t1\nx y\t5\n"));
  auto v = store.pmi(PmiQuery::of("good", {"movie"}));
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("pmi is Missing when any count is zero") {
  TempDir tmp;
  auto store = NgramStore::load(tmp.file("c.tsv", "good movie\t2\nbad film\t3\n"));
  CHECK(!store.pmi(PmiQuery::of("good", {"film"})).has_value());
  CHECK(!store.pmi(PmiQuery::of("zzz", {"movie"})).has_value());
  CHECK(!store.pmi(PmiQuery::of("good", {"zzz"})).has_value());
}

TEST_CASE("pmi grows strictly with the joint count at fixed marginals") {
  TempDir tmp;
  auto a = NgramStore::load(
      tmp.file("a.tsv", "good movie\t2\ngood film\t2\nbad movie\t3\nbad film\t3\n"));
  auto b = NgramStore::load(
      tmp.file("b.tsv", "good movie\t3\ngood film\t1\nbad movie\t2\nbad film\t4\n"));
  auto c = NgramStore::load(
      tmp.file("c.tsv", "good movie\t4\nbad movie\t1\nbad film\t5\n"));
  auto q = PmiQuery::of("good", {"movie"});
  REQUIRE(a.total(2) == 10);
  REQUIRE(b.total(2) == 10);
  REQUIRE(c.total(2) == 10);
  REQUIRE(a.head_marginal("good", 1) == 4);
  REQUIRE(b.head_marginal("good", 1) == 4);
  REQUIRE(c.head_marginal("good", 1) == 4);
  CHECK(*a.pmi(q) < *b.pmi(q));
  CHECK(*b.pmi(q) < *c.pmi(q));
}

TEST_CASE("wildcard positions sum over matching tails") {
  TempDir tmp;
  auto store = NgramStore::load(tmp.file("c.tsv",
                                         "see @alice tonight\t2\n"
                                         "see @bob tonight\t3\n"
                                         "meet @carol tonight\t5\n"
                                         "see friends tomorrow\t5\n"));
  PmiQuery q;
  q.head = "see";
  q.tail = {"@anyone", "tonight"};
  q.wildcard = {true, false};
  auto v = store.pmi(q);
  REQUIRE(v.has_value());
  // joint 5, head marginal 10, tail-pattern marginal 10, N3 15
  CHECK(*v == doctest::Approx(std::log(0.75)).epsilon(1e-14));

  PmiQuery none = q;
  none.head = "greet";
  CHECK(!store.pmi(none).has_value());
}

TEST_CASE("pmi validates queries") {
  TempDir tmp;
  auto store = NgramStore::load(tmp.file("c.tsv", "a b\t1\n"));
  CHECK_THROWS_AS(store.pmi(PmiQuery::of("a", {})), std::invalid_argument);
  CHECK_THROWS_AS(store.pmi(PmiQuery::of("a", {"b", "c", "d", "e", "f"})),
                  std::invalid_argument);
  CHECK_THROWS_AS(store.pmi(PmiQuery::of("", {"b"})), std::invalid_argument);
  PmiQuery bad = PmiQuery::of("a", {"b", "c"});
  bad.wildcard = {true};
  CHECK_THROWS_AS(store.pmi(bad), std::invalid_argument);
}

TEST_CASE("marginals agree with a brute-force recount on random corpora") {
  Rng rng(2024);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 10; ++trial) {
    TempDir tmp;
    std::string corpus;
    std::vector<std::vector<std::string>> lines;
    int n_lines = 1 + static_cast<int>(rng.bounded(4));
    for (int l = 0; l < n_lines; ++l) {
      std::vector<std::string> toks;
      int len = 2 + static_cast<int>(rng.bounded(12));
      for (int i = 0; i < len; ++i) {
        toks.push_back(alphabet[rng.bounded(alphabet.size())]);
      }
      lines.push_back(toks);
      for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) corpus += ' ';
        corpus += toks[i];
      }
      corpus += '\n';
    }
    auto store = NgramStore::build(tmp.file("c.txt", corpus), 3);

    for (int m = 2; m <= 3; ++m) {
      std::map<std::string, long long> joint;
      std::map<std::string, long long> by_head;
      std::map<std::string, long long> by_tail;
      long long total = 0;
      for (const auto& toks : lines) {
        if (toks.size() < static_cast<std::size_t>(m)) continue;
        for (std::size_t i = 0; i + static_cast<std::size_t>(m) <= toks.size(); ++i) {
          std::string key = toks[i];
          std::string tail;
          for (int j = 1; j < m; ++j) {
            key += ' ';
            key += toks[i + static_cast<std::size_t>(j)];
            if (j > 1) tail += ' ';
            tail += toks[i + static_cast<std::size_t>(j)];
          }
          ++joint[key];
          ++by_head[toks[i]];
          ++by_tail[tail];
          ++total;
        }
      }
      CHECK(store.total(m) == total);
      for (const auto& [head, c] : by_head) {
        CHECK(store.head_marginal(head, m - 1) == c);
      }
      for (const auto& [tail, c] : by_tail) {
        std::vector<std::string> tail_toks;
        for (auto part : split_char(tail, ' ')) tail_toks.emplace_back(part);
        CHECK(store.tail_marginal(tail_toks) == c);
      }
      for (const auto& [key, c] : joint) {
        std::vector<std::string> toks;
        for (auto part : split_char(key, ' ')) toks.emplace_back(part);
        CHECK(store.count(toks) == c);
        auto head = toks.front();
        std::vector<std::string> tail_toks(toks.begin() + 1, toks.end());
        std::string tail_key = join(tail_toks, " ");
        auto got = store.pmi(PmiQuery::of(head, tail_toks));
        REQUIRE(got.has_value());
        double expect = std::log((static_cast<double>(c) * static_cast<double>(total)) /
                                 (static_cast<double>(by_head[head]) *
                                  static_cast<double>(by_tail[tail_key])));
        CHECK(std::fabs(*got - expect) <= 1e-12);
      }
    }
  }
}

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cds {

// Head unigram followed by a tail n-gram (n = 1..4). Wildcard tail positions
// match any token (used for @-mentions).
struct PmiQuery {
  std::string head;
  std::vector<std::string> tail;
  std::vector<bool> wildcard;  // empty means no wildcards

  static PmiQuery of(std::string head, std::vector<std::string> tail) {
    return {std::move(head), std::move(tail), {}};
  }
};

// In-memory count store for n-grams of length 1..5 with the marginals needed
// for pointwise mutual information. Tokens are lowercased at the boundary.
class NgramStore {
 public:
  static constexpr int kMaxLen = 5;

  // Sliding-window counts over a whitespace-tokenized corpus, one window
  // stream per line. max_n must lie in [2, 5].
  static NgramStore build(const std::filesystem::path& corpus_path, int max_n);

  // Web1T-style TSV: `tok1 tok2 ... tokN<TAB>count`. Duplicate n-grams sum.
  // Unigram counts are taken as given when present, otherwise derived from
  // bigram head marginals.
  static NgramStore load(const std::filesystem::path& path);

  // Natural-log PMI; std::nullopt (Missing) when any of the three counts is
  // zero. Wildcards sum counts over all matching n-grams first.
  std::optional<double> pmi(const PmiQuery& q) const;

  void add(const std::vector<std::string>& tokens, long long count);
  void finalize();  // recompute totals and marginals from the joint counts

  long long count(const std::vector<std::string>& tokens) const;
  long long total(int len) const { return totals_.at(static_cast<std::size_t>(len)); }
  long long head_marginal(const std::string& head, int tail_len) const;
  long long tail_marginal(const std::vector<std::string>& tail) const;
  bool empty() const;

 private:
  struct TailMatch {
    long long joint = 0;  // C(head, tail-pattern)
    long long any = 0;    // C(*, tail-pattern)
  };
  TailMatch scan_tail_pattern(const PmiQuery& q) const;

  // counts_[m]: space-joined m-gram -> count, m in 1..5
  std::array<std::unordered_map<std::string, long long>, kMaxLen + 1> counts_;
  std::array<long long, kMaxLen + 1> totals_{};
  // marginals of the joint counts, per joint length m:
  //   head_totals_[m][w]    = number of m-grams starting with unigram w
  //   tail_totals_[m][tail] = number of m-grams ending with the (m-1)-gram tail
  std::array<std::unordered_map<std::string, long long>, kMaxLen + 1> head_totals_;
  std::array<std::unordered_map<std::string, long long>, kMaxLen + 1> tail_totals_;
};

}  // namespace cds

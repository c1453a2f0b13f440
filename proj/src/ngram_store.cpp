#include "cds/ngram_store.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cds/errors.hpp"
#include "cds/util.hpp"

namespace cds {

namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  return join(tokens, " ");
}

}  // namespace

void NgramStore::add(const std::vector<std::string>& tokens, long long count) {
  if (tokens.empty() || tokens.size() > kMaxLen)
    throw std::invalid_argument("n-gram length must lie in 1..5");
  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const auto& t : tokens) lowered.push_back(to_lower(t));
  counts_[tokens.size()][join_tokens(lowered)] += count;
}

void NgramStore::finalize() {
  totals_.fill(0);
  for (auto& m : head_totals_) m.clear();
  for (auto& m : tail_totals_) m.clear();

  // Derive unigrams from bigram head marginals when none were given.
  if (counts_[1].empty() && !counts_[2].empty()) {
    for (const auto& [key, c] : counts_[2]) {
      auto sp = key.find(' ');
      counts_[1][key.substr(0, sp)] += c;
    }
  }

  for (int m = 1; m <= kMaxLen; ++m) {
    for (const auto& [key, c] : counts_[static_cast<std::size_t>(m)]) {
      totals_[static_cast<std::size_t>(m)] += c;
      if (m >= 2) {
        auto sp = key.find(' ');
        head_totals_[static_cast<std::size_t>(m)][key.substr(0, sp)] += c;
        tail_totals_[static_cast<std::size_t>(m)][key.substr(sp + 1)] += c;
      }
    }
  }
}

bool NgramStore::empty() const {
  for (const auto& m : counts_) {
    if (!m.empty()) return false;
  }
  return true;
}

long long NgramStore::count(const std::vector<std::string>& tokens) const {
  if (tokens.empty() || tokens.size() > kMaxLen) return 0;
  std::vector<std::string> lowered;
  for (const auto& t : tokens) lowered.push_back(to_lower(t));
  const auto& m = counts_[tokens.size()];
  auto it = m.find(join_tokens(lowered));
  return it == m.end() ? 0 : it->second;
}

long long NgramStore::head_marginal(const std::string& head, int tail_len) const {
  std::size_t m = static_cast<std::size_t>(tail_len) + 1;
  if (m < 2 || m > kMaxLen) return 0;
  auto it = head_totals_[m].find(to_lower(head));
  return it == head_totals_[m].end() ? 0 : it->second;
}

long long NgramStore::tail_marginal(const std::vector<std::string>& tail) const {
  std::size_t m = tail.size() + 1;
  if (m < 2 || m > kMaxLen) return 0;
  std::vector<std::string> lowered;
  for (const auto& t : tail) lowered.push_back(to_lower(t));
  auto it = tail_totals_[m].find(join_tokens(lowered));
  return it == tail_totals_[m].end() ? 0 : it->second;
}

NgramStore NgramStore::build(const std::filesystem::path& corpus_path, int max_n) {
  if (max_n < 2 || max_n > kMaxLen)
    throw std::invalid_argument("max_n must lie in [2, 5]");
  std::ifstream in(corpus_path);
  if (!in) throw IoError("cannot open corpus file: " + corpus_path.string());

  NgramStore store;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = split_whitespace(line);
    for (auto& t : tokens) t = to_lower(t);
    for (int n = 1; n <= max_n; ++n) {
      if (tokens.size() < static_cast<std::size_t>(n)) break;
      for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int j = 1; j < n; ++j) {
          key += ' ';
          key += tokens[i + static_cast<std::size_t>(j)];
        }
        store.counts_[static_cast<std::size_t>(n)][key] += 1;
      }
    }
  }
  if (in.bad()) throw IoError("read failure on " + corpus_path.string());
  store.finalize();
  return store;
}

NgramStore NgramStore::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open counts file: " + path.string());

  NgramStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty()) continue;
    auto tab = v.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError(line_no, "expected `ngram<TAB>count`");
    auto tokens = split_whitespace(v.substr(0, tab));
    if (tokens.empty()) throw ParseError(line_no, "empty n-gram");
    if (tokens.size() > kMaxLen)
      throw ParseError(line_no, "n-gram longer than 5 tokens");
    std::string_view count_s = trim(v.substr(tab + 1));
    long long count = 0;
    auto [ptr, ec] = std::from_chars(count_s.data(), count_s.data() + count_s.size(), count);
    if (ec != std::errc() || ptr != count_s.data() + count_s.size())
      throw ParseError(line_no, "bad count value");
    if (count < 0)
      throw NegativeCountError("negative count at line " + std::to_string(line_no));
    store.add(tokens, count);
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  store.finalize();
  return store;
}

NgramStore::TailMatch NgramStore::scan_tail_pattern(const PmiQuery& q) const {
  TailMatch result;
  const std::size_t n = q.tail.size();
  const std::size_t m = n + 1;
  const std::string head = to_lower(q.head);
  std::vector<std::string> pattern;
  pattern.reserve(n);
  for (const auto& t : q.tail) pattern.push_back(to_lower(t));

  for (const auto& [key, c] : counts_[m]) {
    // key = head SP t1 SP ... SP tn
    std::size_t pos = key.find(' ');
    std::string_view key_head(key.data(), pos);
    std::string_view rest(key.data() + pos + 1, key.size() - pos - 1);
    bool tail_ok = true;
    std::size_t idx = 0;
    std::size_t start = 0;
    while (idx < n) {
      std::size_t sp = rest.find(' ', start);
      std::string_view tok = sp == std::string_view::npos
                                 ? rest.substr(start)
                                 : rest.substr(start, sp - start);
      if (!q.wildcard.empty() && q.wildcard[idx]) {
        // wildcard position: any token matches
      } else if (tok != pattern[idx]) {
        tail_ok = false;
        break;
      }
      if (sp == std::string_view::npos) {
        ++idx;
        break;
      }
      start = sp + 1;
      ++idx;
    }
    if (!tail_ok || idx != n) continue;
    result.any += c;
    if (key_head == head) result.joint += c;
  }
  return result;
}

std::optional<double> NgramStore::pmi(const PmiQuery& q) const {
  const std::size_t n = q.tail.size();
  if (n < 1 || n > 4) throw std::invalid_argument("tail length must lie in 1..4");
  if (!q.wildcard.empty() && q.wildcard.size() != n)
    throw std::invalid_argument("wildcard mask must match tail length");
  if (q.head.empty()) throw std::invalid_argument("empty head token");

  const std::size_t m = n + 1;
  const long long big_n = totals_[m];
  if (big_n == 0) return std::nullopt;

  bool has_wildcard = false;
  for (bool w : q.wildcard) has_wildcard = has_wildcard || w;

  long long joint = 0;
  long long tail_any = 0;
  if (has_wildcard) {
    TailMatch match = scan_tail_pattern(q);
    joint = match.joint;
    tail_any = match.any;
  } else {
    std::vector<std::string> full;
    full.reserve(m);
    full.push_back(q.head);
    for (const auto& t : q.tail) full.push_back(t);
    joint = count(full);
    tail_any = tail_marginal(q.tail);
  }
  long long head_any = head_marginal(q.head, static_cast<int>(n));

  if (joint == 0 || head_any == 0 || tail_any == 0) return std::nullopt;

  // PMI = ln( p(w,W) / (p(w,*) p(*,W)) ) with each p = C/N; the N factors
  // collapse to one, keeping the independence case an exact ln(1) = 0.
  double ratio = (static_cast<double>(joint) * static_cast<double>(big_n)) /
                 (static_cast<double>(head_any) * static_cast<double>(tail_any));
  return std::log(ratio);
}

}  // namespace cds

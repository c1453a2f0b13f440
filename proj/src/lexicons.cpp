#include "cds/lexicons.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "cds/errors.hpp"
#include "cds/util.hpp"

namespace cds {

namespace {

// Word-list and TSV lexicons: any line starting with '#' or ';' is a comment.
bool is_comment_strict(std::string_view line) {
  return !line.empty() && (line.front() == '#' || line.front() == ';');
}

// Indicator lists hold hashtags and smileys, so the comment marker only
// counts when followed by whitespace or end-of-line (";)" is data).
bool is_comment_indicator(std::string_view line) {
  if (line.empty() || (line.front() != '#' && line.front() != ';')) return false;
  return line.size() == 1 || is_ascii_space(static_cast<unsigned char>(line[1]));
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path.string());
  return in;
}

std::unordered_set<std::string> read_word_set(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = trim(line);
    if (v.empty() || is_comment_strict(v)) continue;
    words.insert(to_lower(v));
  }
  return words;
}

}  // namespace

PolarityLexicon load_polarity(const std::filesystem::path& pos_path,
                              const std::filesystem::path& neg_path,
                              bool strict) {
  PolarityLexicon lex;
  lex.positive = read_word_set(pos_path);
  lex.negative = read_word_set(neg_path);

  std::vector<std::string> conflicts;
  for (const auto& w : lex.positive) {
    if (lex.negative.count(w)) conflicts.push_back(w);
  }
  if (!conflicts.empty()) {
    std::sort(conflicts.begin(), conflicts.end());
    if (strict) {
      throw ConflictError("word(s) in both polarity files: " + join(conflicts, ", "));
    }
    for (const auto& w : conflicts) {
      lex.positive.erase(w);
      lex.negative.erase(w);
    }
    lex.dropped_conflicts = std::move(conflicts);
  }
  return lex;
}

ScoredLexicon load_scored(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  ScoredLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty() || is_comment_strict(v)) continue;
    auto cols = split_char(v, '\t');
    if (cols.size() != 2) throw ParseError(line_no, "expected `term<TAB>score`");
    auto term_tokens = split_whitespace(cols[0]);
    if (term_tokens.empty()) throw ParseError(line_no, "empty term");
    std::string term = to_lower(join(term_tokens, " "));
    int score = 0;
    auto [ptr, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), score);
    if (ec != std::errc() || ptr != cols[1].data() + cols[1].size())
      throw ParseError(line_no, "bad score value");
    if (score < -5 || score > 5)
      throw RangeError("score for `" + term + "` outside [-5, 5]");
    if (score == 0)
      throw RangeError("zero score for `" + term + "` (zero means absent)");

    // Duplicate terms resolve order-independently: keep the larger magnitude,
    // preferring the negative one on a tie.
    auto it = lex.entries.find(term);
    if (it == lex.entries.end()) {
      lex.entries.emplace(term, score);
    } else {
      int old = it->second;
      if (std::abs(score) > std::abs(old) ||
          (std::abs(score) == std::abs(old) && score < old)) {
        it->second = score;
      }
    }
    lex.max_phrase_tokens =
        std::max(lex.max_phrase_tokens, static_cast<int>(term_tokens.size()));
  }
  return lex;
}

SubjectivityLexicon load_subjectivity(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  SubjectivityLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty() || is_comment_strict(v)) continue;
    auto cols = split_char(v, '\t');
    if (cols.size() != 3)
      throw ParseError(line_no, "expected `word<TAB>strength<TAB>polarity`");
    std::string word = to_lower(trim(cols[0]));
    if (word.empty()) throw ParseError(line_no, "empty word");
    if (word.find(' ') != std::string::npos)
      throw ParseError(line_no, "multi-word subjectivity entries are not supported");

    std::string strength_s = to_lower(trim(cols[1]));
    std::string polarity_s = to_lower(trim(cols[2]));
    Strength strength;
    if (strength_s == "strong") strength = Strength::Strong;
    else if (strength_s == "weak") strength = Strength::Weak;
    else throw ParseError(line_no, "unknown strength `" + strength_s + "`");
    Polarity polarity;
    if (polarity_s == "pos") polarity = Polarity::Pos;
    else if (polarity_s == "neg") polarity = Polarity::Neg;
    else throw ParseError(line_no, "unknown polarity `" + polarity_s + "`");

    // Duplicates (the source format differentiates by part of speech, which
    // we ignore): Strong beats Weak; on equal strength Neg beats Pos.
    auto it = lex.entries.find(word);
    if (it == lex.entries.end()) {
      lex.entries.emplace(word, SubjectivityLexicon::Entry{strength, polarity});
    } else {
      auto& cur = it->second;
      bool replace = false;
      if (strength == Strength::Strong && cur.strength == Strength::Weak) replace = true;
      else if (strength == cur.strength && polarity == Polarity::Neg && cur.polarity == Polarity::Pos)
        replace = true;
      if (replace) cur = {strength, polarity};
    }
  }
  return lex;
}

const std::array<std::string_view, 9>& IndicatorLists::laughter_tokens() {
  static const std::array<std::string_view, 9> tokens = {
      "hahaha", "haha", "hehehe", "hehe", "jajaja", "jaja", "lol", "lmao", "rofl"};
  return tokens;
}

namespace {

std::vector<std::string> read_indicator_list(const std::filesystem::path& file) {
  std::error_code ec;
  if (!std::filesystem::exists(file, ec)) return {};
  std::ifstream in(file);
  if (!in) throw IoError("cannot read indicator file: " + file.string());
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = trim(line);
    if (v.empty() || is_comment_indicator(v)) continue;
    entries.push_back(to_lower(v));
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  return entries;
}

// Hashtag entries are stored bare; tolerate a leading '#' in the file.
std::vector<std::string> read_hashtag_list(const std::filesystem::path& file) {
  auto entries = read_indicator_list(file);
  for (auto& e : entries) {
    while (!e.empty() && e.front() == '#') e.erase(e.begin());
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::remove(entries.begin(), entries.end(), std::string()), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  return entries;
}

}  // namespace

IndicatorLists load_indicators(const std::filesystem::path& dir) {
  IndicatorLists lists;
  std::error_code ec;
  if (dir.empty() || !std::filesystem::exists(dir, ec)) return lists;
  lists.sarcasm_hashtags = read_hashtag_list(dir / "sarcasm_hashtags.txt");
  lists.sarcastic_smileys = read_indicator_list(dir / "sarcastic_smileys.txt");
  lists.sarcasm_indicator_phrases = read_indicator_list(dir / "sarcasm_indicator_phrases.txt");
  lists.positive_predicates = read_indicator_list(dir / "positive_predicates.txt");
  lists.positive_sentiment_phrases = read_indicator_list(dir / "positive_sentiment_phrases.txt");
  lists.negative_situation_phrases = read_indicator_list(dir / "negative_situation_phrases.txt");
  return lists;
}

std::unordered_set<std::string> load_wordlist(const std::filesystem::path& path) {
  return read_word_set(path);
}

}  // namespace cds

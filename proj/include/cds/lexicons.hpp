#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cds {

// Liu05-style opinion lexicon: plain positive/negative word sets.
struct PolarityLexicon {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;
  // Words that appeared in both input files and were dropped from both
  // (default mode); sorted for reproducible reporting.
  std::vector<std::string> dropped_conflicts;

  bool empty() const { return positive.empty() && negative.empty(); }
};

enum class Strength { Weak, Strong };
enum class Polarity { Pos, Neg };

// MPQA-style subjectivity lexicon, single words only.
struct SubjectivityLexicon {
  struct Entry {
    Strength strength;
    Polarity polarity;
  };
  std::unordered_map<std::string, Entry> entries;

  const Entry* find(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

// AFINN-style scored lexicon; keys are lowercased terms, possibly multi-word
// (tokens joined by single spaces). Scores are nonzero integers in [-5, 5].
struct ScoredLexicon {
  std::map<std::string, int> entries;
  int max_phrase_tokens = 1;

  std::optional<int> score(const std::string& term) const {
    auto it = entries.find(term);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  }
};

// Learned indicator lists plus the built-in laughter tokens. All entries are
// lowercase and sorted; loading is order-independent.
struct IndicatorLists {
  std::vector<std::string> sarcasm_hashtags;           // stored without '#'
  std::vector<std::string> sarcastic_smileys;
  std::vector<std::string> sarcasm_indicator_phrases;
  std::vector<std::string> positive_predicates;
  std::vector<std::string> positive_sentiment_phrases;
  std::vector<std::string> negative_situation_phrases;

  static const std::array<std::string_view, 9>& laughter_tokens();
};

PolarityLexicon load_polarity(const std::filesystem::path& pos_path,
                              const std::filesystem::path& neg_path,
                              bool strict = false);

ScoredLexicon load_scored(const std::filesystem::path& path);

SubjectivityLexicon load_subjectivity(const std::filesystem::path& path);

// Missing files yield empty lists; an unreadable directory entry is an error.
// Expected file names: sarcasm_hashtags.txt, sarcastic_smileys.txt,
// sarcasm_indicator_phrases.txt, positive_predicates.txt,
// positive_sentiment_phrases.txt, negative_situation_phrases.txt.
IndicatorLists load_indicators(const std::filesystem::path& dir);

// One lowercased word per line, '#'/';' comments ignored. Used for stopwords.
std::unordered_set<std::string> load_wordlist(const std::filesystem::path& path);

}  // namespace cds

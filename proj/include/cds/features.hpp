#pragma once

#include <array>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cds/corpus.hpp"
#include "cds/lexicons.hpp"
#include "cds/ngram_store.hpp"

namespace cds {

// Whitespace split, then leading/trailing punctuation peeled off as
// single-char tokens. Tokens opening with '#' or '@' keep their marker.
std::vector<std::string> tokenize(std::string_view text);

// Case-preserving strip of leading/trailing ASCII punctuation.
std::string strip_surrounding_punct(std::string_view token);

// Lowercased strip_surrounding_punct; the canonical form for lexicon and
// bag-of-words lookups. Pure punctuation normalizes to "".
std::string norm_token(std::string_view token);

struct FeatureValue {
  enum class Kind { Real, Binary, Categorical, Missing };

  Kind kind = Kind::Missing;
  double num = 0.0;       // Real value, or 0/1 for Binary
  std::string token;      // Categorical only

  static FeatureValue real(double v) { return {Kind::Real, v, {}}; }
  static FeatureValue binary(bool b) { return {Kind::Binary, b ? 1.0 : 0.0, {}}; }
  static FeatureValue categorical(std::string t) {
    return {Kind::Categorical, 0.0, std::move(t)};
  }
  static FeatureValue missing() { return {}; }

  bool is_missing() const { return kind == Kind::Missing; }
  bool operator==(const FeatureValue&) const = default;
};

// Parallel name/value arrays in schema order; names identical across all
// vectors produced by one extractor.
struct FeatureVector {
  std::vector<std::string> names;
  std::vector<FeatureValue> values;

  std::size_t size() const { return values.size(); }

  const FeatureValue* find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return &values[i];
    }
    return nullptr;
  }
  const FeatureValue& at(std::string_view name) const;

  bool operator==(const FeatureVector&) const = default;
};

enum class FeatureGroup {
  TwitterSpecific,
  AmazonSpecific,
  MostPolarWord,
  MostPolarScore,
  OtherPolarity,
  Subjectivity,
  Syntactic,
  Pmi,
  Boaw,
  Bocw,
};

inline constexpr std::array<FeatureGroup, 10> kAllGroups = {
    FeatureGroup::TwitterSpecific, FeatureGroup::AmazonSpecific,
    FeatureGroup::MostPolarWord,   FeatureGroup::MostPolarScore,
    FeatureGroup::OtherPolarity,   FeatureGroup::Subjectivity,
    FeatureGroup::Syntactic,       FeatureGroup::Pmi,
    FeatureGroup::Boaw,            FeatureGroup::Bocw,
};

std::string_view group_name(FeatureGroup g);
std::optional<FeatureGroup> parse_group(std::string_view name);

struct FeatureConfig {
  std::set<FeatureGroup> enabled;

  bool has(FeatureGroup g) const { return enabled.count(g) != 0; }
  bool empty() const { return enabled.empty(); }
  std::string describe() const;  // comma-joined group names

  static FeatureConfig of(std::initializer_list<FeatureGroup> gs) {
    FeatureConfig c;
    c.enabled.insert(gs.begin(), gs.end());
    return c;
  }
  static FeatureConfig all();
  static FeatureConfig general();  // everything but the two domain groups
};

// Comma-separated group names; "all" and "general" accepted as shorthands.
FeatureConfig parse_groups(std::string_view csv);

// Learned bag-of-words vocabularies over the four (domain x class) training
// groups. Group word lists keep selection (rank) order; the flattened vocabs
// are sorted, deduplicated unions.
struct AssociationModel {
  struct Group {
    Domain domain = Domain::Twitter;
    Label label = Label::Sarcastic;
    std::vector<std::string> words;
  };

  std::array<Group, 4> boaw_groups;
  std::array<Group, 4> bocw_groups;  // after cross-group dedup
  std::vector<std::string> boaw_vocab;
  std::vector<std::string> bocw_vocab;
  std::set<std::string> stopwords;
  int per_group_k = 50;
};

// BOAW: per group, top-k unigrams by smoothed PMI(word, label), probabilities
// computed within the group's domain, stopwords excluded; ties lexicographic.
// BOCW: per group, top-k unigrams by occurrence count; words landing in the
// top list of two or more groups are then removed from all of them.
AssociationModel fit_associations(std::span<const Instance> train,
                                  const std::unordered_set<std::string>& stopwords,
                                  int per_group_k = 50);

std::string assoc_to_json_string(const AssociationModel& m);
AssociationModel assoc_from_json_string(const std::string& text);

// Deterministic feature-name list for a config. assoc may be null unless
// Boaw/Bocw is enabled; indicators may be null unless TwitterSpecific is.
std::vector<std::string> feature_schema(const FeatureConfig& config,
                                        const AssociationModel* assoc,
                                        const IndicatorLists* indicators);

class FeatureExtractor {
 public:
  // Throws ResourceMissingError naming the group whose resource is null.
  FeatureExtractor(FeatureConfig config, const PolarityLexicon* liu,
                   const SubjectivityLexicon* mpqa, const ScoredLexicon* afinn,
                   const IndicatorLists* indicators, const NgramStore* ngrams,
                   const AssociationModel* assoc);

  const FeatureConfig& config() const { return config_; }
  const std::vector<std::string>& schema() const { return schema_; }

  // Pure; safe to call concurrently.
  FeatureVector extract(const Instance& inst) const;

 private:
  FeatureConfig config_;
  const PolarityLexicon* liu_;
  const SubjectivityLexicon* mpqa_;
  const ScoredLexicon* afinn_;
  const IndicatorLists* indicators_;
  const NgramStore* ngrams_;
  const AssociationModel* assoc_;
  std::vector<std::string> schema_;

  // tokenized lowercase phrase patterns, precomputed once
  std::vector<std::vector<std::string>> smiley_pats_;
  std::vector<std::vector<std::string>> indicator_pats_;
  std::vector<std::vector<std::string>> pos_pred_pats_;
  std::vector<std::vector<std::string>> pos_sent_pats_;
  std::vector<std::vector<std::string>> neg_sit_pats_;
  std::unordered_set<std::string> hashtag_set_;
  std::unordered_set<std::string> boaw_set_;
  std::unordered_set<std::string> bocw_set_;
};

// Header = schema; Missing -> empty cell, Binary -> 0/1, Categorical -> token.
void write_matrix_tsv(std::ostream& out, const std::vector<std::string>& schema,
                      const std::vector<FeatureVector>& rows);
std::string feature_value_cell(const FeatureValue& v);

}  // namespace cds

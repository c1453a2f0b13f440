#include "cds/features.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "cds/errors.hpp"
#include "cds/util.hpp"

namespace cds {

using nlohmann::json;

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string& chunk : split_whitespace(text)) {
    std::size_t b = 0;
    std::size_t e = chunk.size();
    std::size_t lead_end = 0;
    while (b < e) {
      unsigned char c = static_cast<unsigned char>(chunk[b]);
      if (!is_ascii_punct(c)) break;
      // hashtag / mention markers stay glued to their word
      if ((c == '#' || c == '@') && e - b >= 2) break;
      ++b;
    }
    lead_end = b;
    while (e > b) {
      unsigned char c = static_cast<unsigned char>(chunk[e - 1]);
      if (!is_ascii_punct(c)) break;
      --e;
    }
    for (std::size_t i = 0; i < lead_end; ++i) out.push_back(std::string(1, chunk[i]));
    if (e > b) out.push_back(chunk.substr(b, e - b));
    for (std::size_t i = e; i < chunk.size(); ++i) out.push_back(std::string(1, chunk[i]));
  }
  return out;
}

std::string strip_surrounding_punct(std::string_view token) {
  while (!token.empty() && is_ascii_punct(static_cast<unsigned char>(token.front())))
    token.remove_prefix(1);
  while (!token.empty() && is_ascii_punct(static_cast<unsigned char>(token.back())))
    token.remove_suffix(1);
  return std::string(token);
}

std::string norm_token(std::string_view token) {
  return to_lower(strip_surrounding_punct(token));
}

const FeatureValue& FeatureVector::at(std::string_view name) const {
  const FeatureValue* v = find(name);
  if (!v) throw std::out_of_range("no feature named " + std::string(name));
  return *v;
}

std::string_view group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::TwitterSpecific: return "twitter";
    case FeatureGroup::AmazonSpecific: return "amazon";
    case FeatureGroup::MostPolarWord: return "most_polar_word";
    case FeatureGroup::MostPolarScore: return "most_polar_score";
    case FeatureGroup::OtherPolarity: return "other_polarity";
    case FeatureGroup::Subjectivity: return "subjectivity";
    case FeatureGroup::Syntactic: return "syntactic";
    case FeatureGroup::Pmi: return "pmi";
    case FeatureGroup::Boaw: return "boaw";
    case FeatureGroup::Bocw: return "bocw";
  }
  return "?";
}

std::optional<FeatureGroup> parse_group(std::string_view name) {
  for (FeatureGroup g : kAllGroups) {
    if (group_name(g) == name) return g;
  }
  return std::nullopt;
}

std::string FeatureConfig::describe() const {
  std::vector<std::string_view> names;
  for (FeatureGroup g : enabled) names.push_back(group_name(g));
  return join(names, ",");
}

FeatureConfig FeatureConfig::all() {
  FeatureConfig c;
  c.enabled.insert(kAllGroups.begin(), kAllGroups.end());
  return c;
}

FeatureConfig FeatureConfig::general() {
  FeatureConfig c = all();
  c.enabled.erase(FeatureGroup::TwitterSpecific);
  c.enabled.erase(FeatureGroup::AmazonSpecific);
  return c;
}

FeatureConfig parse_groups(std::string_view csv) {
  FeatureConfig c;
  for (std::string_view part : split_char(csv, ',')) {
    std::string name = to_lower(trim(part));
    if (name.empty()) continue;
    if (name == "all") {
      FeatureConfig a = FeatureConfig::all();
      c.enabled.insert(a.enabled.begin(), a.enabled.end());
    } else if (name == "general") {
      FeatureConfig g = FeatureConfig::general();
      c.enabled.insert(g.enabled.begin(), g.enabled.end());
    } else if (auto g = parse_group(name)) {
      c.enabled.insert(*g);
    } else {
      throw std::invalid_argument("unknown feature group: " + name);
    }
  }
  if (c.empty()) throw std::invalid_argument("feature group list is empty");
  return c;
}

namespace {

constexpr std::array<std::string_view, 8> kTwitterBinary = {
    "contains_sarcasm_hashtag",   "contains_sarcastic_smiley",
    "contains_sarcasm_indicator", "contains_positive_predicate",
    "contains_positive_sentiment", "contains_negative_situation",
    "pos_precedes_neg_situation", "contains_laughter",
};

constexpr std::array<std::string_view, 13> kOtherPolarityNames = {
    "avg_polarity_liu05",   "avg_polarity_mpqa",   "avg_polarity_afinn",
    "overall_polarity_liu05", "overall_polarity_mpqa", "overall_polarity_afinn",
    "pct_positive_liu05",   "pct_negative_liu05",  "pct_positive_mpqa",
    "pct_negative_mpqa",    "pct_positive_afinn",  "pct_negative_afinn",
    "largest_score_gap",
};

constexpr std::array<std::string_view, 4> kSubjectivityNames = {
    "pct_strong_subj_positive", "pct_weak_subj_positive",
    "pct_strong_subj_negative", "pct_weak_subj_negative",
};

constexpr std::array<std::string_view, 6> kSyntacticNames = {
    "all_caps_count", "all_caps_ratio",  "max_consecutive_chars",
    "max_consecutive_punct", "has_exclamation", "has_question",
};

void require(bool ok, std::string_view resource, FeatureGroup g) {
  if (!ok)
    throw ResourceMissingError(std::string(resource) + " (needed by feature group '" +
                               std::string(group_name(g)) + "')");
}

std::vector<std::vector<std::string>> phrase_patterns(const std::vector<std::string>& entries) {
  std::vector<std::vector<std::string>> pats;
  for (const auto& e : entries) {
    auto toks = tokenize(e);
    for (auto& t : toks) t = to_lower(t);
    if (!toks.empty()) pats.push_back(std::move(toks));
  }
  return pats;
}

// (start, inclusive end) spans where any pattern matches the token run
void collect_spans(const std::vector<std::string>& lower_tokens,
                   const std::vector<std::vector<std::string>>& pats,
                   std::vector<std::pair<std::size_t, std::size_t>>& out) {
  for (const auto& pat : pats) {
    if (pat.size() > lower_tokens.size()) continue;
    for (std::size_t s = 0; s + pat.size() <= lower_tokens.size(); ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < pat.size(); ++i) {
        if (lower_tokens[s + i] != pat[i]) {
          ok = false;
          break;
        }
      }
      if (ok) out.emplace_back(s, s + pat.size() - 1);
    }
  }
}

bool has_phrase(const std::vector<std::string>& lower_tokens,
                const std::vector<std::vector<std::string>>& pats) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  collect_spans(lower_tokens, pats, spans);
  return !spans.empty();
}

struct FiltTok {
  std::string norm;
  std::size_t raw_idx;
};

struct AfinnHit {
  std::string term;  // lexicon key (space-joined when multi-word)
  int score = 0;
  std::size_t pos = 0;  // filtered-sequence coordinates
  std::size_t len = 1;
};

// Greedy left-to-right scan, longest phrase first; each hit consumes its span.
std::vector<AfinnHit> afinn_hits(const std::vector<FiltTok>& filt, const ScoredLexicon& afinn) {
  std::vector<AfinnHit> hits;
  std::size_t i = 0;
  while (i < filt.size()) {
    std::size_t max_len =
        std::min<std::size_t>(static_cast<std::size_t>(afinn.max_phrase_tokens), filt.size() - i);
    bool matched = false;
    for (std::size_t len = max_len; len >= 1; --len) {
      std::string key = filt[i].norm;
      for (std::size_t j = 1; j < len; ++j) {
        key += ' ';
        key += filt[i + j].norm;
      }
      if (auto s = afinn.score(key)) {
        hits.push_back({std::move(key), *s, i, len});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return hits;
}

// Highest |score| wins; ties prefer the negative score, then the earlier hit.
const AfinnHit* most_polar(const std::vector<AfinnHit>& hits) {
  const AfinnHit* best = nullptr;
  for (const auto& h : hits) {
    if (!best) {
      best = &h;
      continue;
    }
    int ha = std::abs(h.score), ba = std::abs(best->score);
    if (ha > ba || (ha == ba && h.score < 0 && best->score > 0)) best = &h;
  }
  return best;
}

bool contains_ellipsis_text(std::string_view text) {
  int dots = 0;
  for (char c : text) {
    dots = c == '.' ? dots + 1 : 0;
    if (dots >= 3) return true;
  }
  return text.find("\xE2\x80\xA6") != std::string_view::npos;
}

int max_run_repeated(std::string_view text) {
  int best = 0, run = 0;
  char prev = '\0';
  bool have_prev = false;
  for (char c : text) {
    if (is_ascii_space(static_cast<unsigned char>(c))) {
      run = 0;
      have_prev = false;
      continue;
    }
    run = (have_prev && c == prev) ? run + 1 : 1;
    prev = c;
    have_prev = true;
    best = std::max(best, run);
  }
  return best;
}

int max_run_punct(std::string_view text) {
  int best = 0, run = 0;
  for (char c : text) {
    run = is_ascii_punct(static_cast<unsigned char>(c)) ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

bool is_all_caps_word(std::string_view token) {
  std::string s = strip_surrounding_punct(token);
  if (s.size() < 2) return false;
  bool any_alpha = false;
  for (char c : s) {
    if (is_ascii_alpha(static_cast<unsigned char>(c))) {
      any_alpha = true;
      if (!is_ascii_upper(static_cast<unsigned char>(c))) return false;
    }
  }
  return any_alpha;
}

std::size_t domain_index(Domain d) { return d == Domain::Twitter ? 0 : 1; }

std::vector<std::string> sorted_union(const std::array<AssociationModel::Group, 4>& groups) {
  std::set<std::string> u;
  for (const auto& g : groups) u.insert(g.words.begin(), g.words.end());
  return {u.begin(), u.end()};
}

}  // namespace

std::vector<std::string> feature_schema(const FeatureConfig& config,
                                        const AssociationModel* assoc,
                                        const IndicatorLists* indicators) {
  std::vector<std::string> names;
  for (FeatureGroup g : config.enabled) {
    switch (g) {
      case FeatureGroup::TwitterSpecific: {
        require(indicators != nullptr, "indicator lists", g);
        for (auto n : kTwitterBinary) names.emplace_back(n);
        for (const auto& tag : indicators->sarcasm_hashtags) names.push_back("hashtag:" + tag);
        for (auto tok : IndicatorLists::laughter_tokens())
          names.push_back("laughter:" + std::string(tok));
        break;
      }
      case FeatureGroup::AmazonSpecific:
        names.emplace_back("star_rating");
        names.emplace_back("contains_wow");
        names.emplace_back("contains_ugh");
        names.emplace_back("contains_huh");
        names.emplace_back("contains_ellipsis");
        break;
      case FeatureGroup::MostPolarWord:
        names.emplace_back("most_polar_unigram");
        break;
      case FeatureGroup::MostPolarScore:
        names.emplace_back("most_polar_score");
        break;
      case FeatureGroup::OtherPolarity:
        for (auto n : kOtherPolarityNames) names.emplace_back(n);
        break;
      case FeatureGroup::Subjectivity:
        for (auto n : kSubjectivityNames) names.emplace_back(n);
        break;
      case FeatureGroup::Syntactic:
        for (auto n : kSyntacticNames) names.emplace_back(n);
        break;
      case FeatureGroup::Pmi:
        names.emplace_back("pmi_1");
        names.emplace_back("pmi_2");
        names.emplace_back("pmi_3");
        names.emplace_back("pmi_4");
        break;
      case FeatureGroup::Boaw:
        require(assoc != nullptr, "fitted association model", g);
        for (const auto& w : assoc->boaw_vocab) names.push_back("boaw:" + w);
        break;
      case FeatureGroup::Bocw:
        require(assoc != nullptr, "fitted association model", g);
        for (const auto& w : assoc->bocw_vocab) names.push_back("bocw:" + w);
        break;
    }
  }
  return names;
}

FeatureExtractor::FeatureExtractor(FeatureConfig config, const PolarityLexicon* liu,
                                   const SubjectivityLexicon* mpqa, const ScoredLexicon* afinn,
                                   const IndicatorLists* indicators, const NgramStore* ngrams,
                                   const AssociationModel* assoc)
    : config_(std::move(config)),
      liu_(liu),
      mpqa_(mpqa),
      afinn_(afinn),
      indicators_(indicators),
      ngrams_(ngrams),
      assoc_(assoc) {
  if (config_.empty()) throw std::invalid_argument("feature config has no groups");
  if (config_.has(FeatureGroup::TwitterSpecific))
    require(indicators_ != nullptr, "indicator lists", FeatureGroup::TwitterSpecific);
  if (config_.has(FeatureGroup::MostPolarWord))
    require(afinn_ != nullptr, "scored sentiment lexicon", FeatureGroup::MostPolarWord);
  if (config_.has(FeatureGroup::MostPolarScore))
    require(afinn_ != nullptr, "scored sentiment lexicon", FeatureGroup::MostPolarScore);
  if (config_.has(FeatureGroup::OtherPolarity)) {
    require(liu_ != nullptr, "polarity lexicon", FeatureGroup::OtherPolarity);
    require(mpqa_ != nullptr, "subjectivity lexicon", FeatureGroup::OtherPolarity);
    require(afinn_ != nullptr, "scored sentiment lexicon", FeatureGroup::OtherPolarity);
  }
  if (config_.has(FeatureGroup::Subjectivity))
    require(mpqa_ != nullptr, "subjectivity lexicon", FeatureGroup::Subjectivity);
  if (config_.has(FeatureGroup::Pmi)) {
    require(afinn_ != nullptr, "scored sentiment lexicon", FeatureGroup::Pmi);
    require(ngrams_ != nullptr, "n-gram count store", FeatureGroup::Pmi);
  }
  if (config_.has(FeatureGroup::Boaw))
    require(assoc_ != nullptr, "fitted association model", FeatureGroup::Boaw);
  if (config_.has(FeatureGroup::Bocw))
    require(assoc_ != nullptr, "fitted association model", FeatureGroup::Bocw);

  schema_ = feature_schema(config_, assoc_, indicators_);

  if (indicators_) {
    smiley_pats_ = phrase_patterns(indicators_->sarcastic_smileys);
    indicator_pats_ = phrase_patterns(indicators_->sarcasm_indicator_phrases);
    pos_pred_pats_ = phrase_patterns(indicators_->positive_predicates);
    pos_sent_pats_ = phrase_patterns(indicators_->positive_sentiment_phrases);
    neg_sit_pats_ = phrase_patterns(indicators_->negative_situation_phrases);
    hashtag_set_.insert(indicators_->sarcasm_hashtags.begin(),
                        indicators_->sarcasm_hashtags.end());
  }
  if (assoc_) {
    boaw_set_.insert(assoc_->boaw_vocab.begin(), assoc_->boaw_vocab.end());
    bocw_set_.insert(assoc_->bocw_vocab.begin(), assoc_->bocw_vocab.end());
  }
}

FeatureVector FeatureExtractor::extract(const Instance& inst) const {
  const std::vector<std::string> tokens = tokenize(inst.text);
  std::vector<std::string> lower_tokens;
  lower_tokens.reserve(tokens.size());
  for (const auto& t : tokens) lower_tokens.push_back(to_lower(t));

  std::vector<FiltTok> filt;
  std::unordered_map<std::string, long long> norm_counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string n = norm_token(tokens[i]);
    if (n.empty()) continue;
    ++norm_counts[n];
    filt.push_back({std::move(n), i});
  }
  const double total_words = static_cast<double>(filt.size());
  auto seen = [&](const std::string& w) { return norm_counts.count(w) != 0; };

  std::vector<AfinnHit> hits;
  const AfinnHit* best = nullptr;
  if (afinn_) {
    hits = afinn_hits(filt, *afinn_);
    best = most_polar(hits);
  }

  FeatureVector fv;
  fv.names = schema_;
  fv.values.reserve(schema_.size());
  auto emit = [&fv](FeatureValue v) { fv.values.push_back(std::move(v)); };
  auto ratio_or_zero = [&](long long count) {
    return FeatureValue::real(count > 0 ? static_cast<double>(count) / total_words : 0.0);
  };

  for (FeatureGroup g : config_.enabled) {
    switch (g) {
      case FeatureGroup::TwitterSpecific: {
        std::unordered_set<std::string> inst_hashtags;
        for (const auto& t : tokens) {
          if (t.size() >= 2 && t[0] == '#') inst_hashtags.insert(to_lower(t.substr(1)));
        }
        bool any_learned_hashtag = false;
        for (const auto& tag : inst_hashtags) {
          if (hashtag_set_.count(tag)) {
            any_learned_hashtag = true;
            break;
          }
        }
        std::vector<std::pair<std::size_t, std::size_t>> pos_spans, neg_spans;
        collect_spans(lower_tokens, pos_pred_pats_, pos_spans);
        collect_spans(lower_tokens, pos_sent_pats_, pos_spans);
        collect_spans(lower_tokens, neg_sit_pats_, neg_spans);
        bool pos_then_neg = false;
        for (const auto& [ps, pe] : pos_spans) {
          for (const auto& [ns, ne] : neg_spans) {
            (void)ne;
            if (ns > pe && ns - pe <= 5) {
              pos_then_neg = true;
              break;
            }
          }
          if (pos_then_neg) break;
        }
        bool any_laughter = false;
        for (auto tok : IndicatorLists::laughter_tokens())
          any_laughter = any_laughter || seen(std::string(tok));

        emit(FeatureValue::binary(any_learned_hashtag));
        emit(FeatureValue::binary(has_phrase(lower_tokens, smiley_pats_)));
        emit(FeatureValue::binary(has_phrase(lower_tokens, indicator_pats_)));
        emit(FeatureValue::binary(has_phrase(lower_tokens, pos_pred_pats_)));
        emit(FeatureValue::binary(has_phrase(lower_tokens, pos_sent_pats_)));
        emit(FeatureValue::binary(!neg_spans.empty()));
        emit(FeatureValue::binary(pos_then_neg));
        emit(FeatureValue::binary(any_laughter));
        for (const auto& tag : indicators_->sarcasm_hashtags)
          emit(FeatureValue::binary(inst_hashtags.count(tag) != 0));
        for (auto tok : IndicatorLists::laughter_tokens())
          emit(FeatureValue::binary(seen(std::string(tok))));
        break;
      }
      case FeatureGroup::AmazonSpecific:
        emit(inst.star_rating ? FeatureValue::real(*inst.star_rating)
                              : FeatureValue::missing());
        emit(FeatureValue::binary(seen("wow")));
        emit(FeatureValue::binary(seen("ugh")));
        emit(FeatureValue::binary(seen("huh")));
        emit(FeatureValue::binary(contains_ellipsis_text(inst.text)));
        break;
      case FeatureGroup::MostPolarWord:
        emit(best ? FeatureValue::categorical(best->term) : FeatureValue::missing());
        break;
      case FeatureGroup::MostPolarScore:
        emit(best ? FeatureValue::real(best->score) : FeatureValue::missing());
        break;
      case FeatureGroup::OtherPolarity: {
        long long liu_pos = 0, liu_neg = 0;
        long long mpqa_pos = 0, mpqa_neg = 0;
        double mpqa_sum = 0;
        for (const auto& ft : filt) {
          if (liu_->positive.count(ft.norm)) ++liu_pos;
          if (liu_->negative.count(ft.norm)) ++liu_neg;
          if (const auto* e = mpqa_->find(ft.norm)) {
            int mag = e->strength == Strength::Strong ? 2 : 1;
            if (e->polarity == Polarity::Pos) {
              ++mpqa_pos;
              mpqa_sum += mag;
            } else {
              ++mpqa_neg;
              mpqa_sum -= mag;
            }
          }
        }
        long long liu_hits = liu_pos + liu_neg;
        long long mpqa_hits = mpqa_pos + mpqa_neg;
        double liu_sum = static_cast<double>(liu_pos - liu_neg);
        long long afinn_pos = 0, afinn_neg = 0;
        double afinn_sum = 0;
        for (const auto& h : hits) {
          afinn_sum += h.score;
          (h.score > 0 ? afinn_pos : afinn_neg)++;
        }
        long long afinn_cnt = afinn_pos + afinn_neg;

        emit(liu_hits > 0 ? FeatureValue::real(liu_sum / static_cast<double>(liu_hits))
                          : FeatureValue::missing());
        emit(mpqa_hits > 0 ? FeatureValue::real(mpqa_sum / static_cast<double>(mpqa_hits))
                           : FeatureValue::missing());
        emit(afinn_cnt > 0 ? FeatureValue::real(afinn_sum / static_cast<double>(afinn_cnt))
                           : FeatureValue::missing());
        emit(FeatureValue::real(liu_sum));
        emit(FeatureValue::real(mpqa_sum));
        emit(FeatureValue::real(afinn_sum));
        emit(ratio_or_zero(liu_pos));
        emit(ratio_or_zero(liu_neg));
        emit(ratio_or_zero(mpqa_pos));
        emit(ratio_or_zero(mpqa_neg));
        emit(ratio_or_zero(afinn_pos));
        emit(ratio_or_zero(afinn_neg));
        if (hits.empty()) {
          emit(FeatureValue::missing());
        } else {
          int hi = hits[0].score, lo = hits[0].score;
          for (const auto& h : hits) {
            hi = std::max(hi, h.score);
            lo = std::min(lo, h.score);
          }
          emit(FeatureValue::real(hi - lo));
        }
        break;
      }
      case FeatureGroup::Subjectivity: {
        long long sp = 0, wp = 0, sn = 0, wn = 0;
        for (const auto& ft : filt) {
          const auto* e = mpqa_->find(ft.norm);
          if (!e) continue;
          if (e->polarity == Polarity::Pos)
            (e->strength == Strength::Strong ? sp : wp)++;
          else
            (e->strength == Strength::Strong ? sn : wn)++;
        }
        double denom = static_cast<double>(sp + wp + sn + wn);
        auto frac = [&](long long c) {
          return denom > 0 ? FeatureValue::real(static_cast<double>(c) / denom)
                           : FeatureValue::missing();
        };
        emit(frac(sp));
        emit(frac(wp));
        emit(frac(sn));
        emit(frac(wn));
        break;
      }
      case FeatureGroup::Syntactic: {
        long long caps = 0;
        for (const auto& t : tokens)
          if (is_all_caps_word(t)) ++caps;
        emit(FeatureValue::real(static_cast<double>(caps)));
        emit(ratio_or_zero(caps));
        emit(FeatureValue::real(max_run_repeated(inst.text)));
        emit(FeatureValue::real(max_run_punct(inst.text)));
        emit(FeatureValue::binary(inst.text.find('!') != std::string::npos));
        emit(FeatureValue::binary(inst.text.find('?') != std::string::npos));
        break;
      }
      case FeatureGroup::Pmi: {
        for (int n = 1; n <= 4; ++n) {
          if (!best) {
            emit(FeatureValue::missing());
            continue;
          }
          std::size_t after = best->pos + best->len;
          if (after + static_cast<std::size_t>(n) > filt.size()) {
            emit(FeatureValue::missing());
            continue;
          }
          PmiQuery q;
          std::string head = best->term;
          auto sp = head.rfind(' ');
          q.head = sp == std::string::npos ? head : head.substr(sp + 1);
          bool any_wild = false;
          std::vector<bool> wild;
          for (int j = 0; j < n; ++j) {
            const FiltTok& ft = filt[after + static_cast<std::size_t>(j)];
            q.tail.push_back(ft.norm);
            const std::string& raw = tokens[ft.raw_idx];
            bool w = raw.size() >= 2 && raw[0] == '@';
            wild.push_back(w);
            any_wild = any_wild || w;
          }
          if (any_wild) q.wildcard = std::move(wild);
          auto v = ngrams_->pmi(q);
          emit(v ? FeatureValue::real(*v) : FeatureValue::missing());
        }
        break;
      }
      case FeatureGroup::Boaw:
        for (const auto& w : assoc_->boaw_vocab) emit(FeatureValue::binary(seen(w)));
        break;
      case FeatureGroup::Bocw:
        for (const auto& w : assoc_->bocw_vocab) emit(FeatureValue::binary(seen(w)));
        break;
    }
  }

  if (fv.values.size() != schema_.size())
    throw SchemaMismatchError("extracted vector does not match schema");
  return fv;
}

AssociationModel fit_associations(std::span<const Instance> train,
                                  const std::unordered_set<std::string>& stopwords,
                                  int per_group_k) {
  if (per_group_k < 0) throw std::invalid_argument("per_group_k must be nonnegative");

  struct DomStats {
    long long n = 0;
    std::array<long long, 2> n_label{};
    std::unordered_map<std::string, long long> present;  // instances containing w
    std::array<std::unordered_map<std::string, long long>, 2> present_label;
    std::array<std::unordered_map<std::string, long long>, 2> occurrences;
  };
  std::array<DomStats, 2> dom;

  for (const Instance& inst : train) {
    DomStats& d = dom[domain_index(inst.domain)];
    std::size_t li = label_index(inst.label);
    ++d.n;
    ++d.n_label[li];
    std::unordered_set<std::string> in_this;
    for (const auto& t : tokenize(inst.text)) {
      std::string w = norm_token(t);
      if (w.empty()) continue;
      ++d.occurrences[li][w];
      if (in_this.insert(w).second) {
        ++d.present[w];
        ++d.present_label[li][w];
      }
    }
  }

  AssociationModel m;
  m.per_group_k = per_group_k;
  for (const auto& w : stopwords) m.stopwords.insert(w);

  const std::array<std::pair<Domain, Label>, 4> group_keys = {{
      {Domain::Twitter, Label::Sarcastic},
      {Domain::Twitter, Label::NonSarcastic},
      {Domain::Amazon, Label::Sarcastic},
      {Domain::Amazon, Label::NonSarcastic},
  }};

  for (std::size_t gi = 0; gi < 4; ++gi) {
    auto [d, l] = group_keys[gi];
    if (dom[domain_index(d)].n_label[label_index(l)] == 0)
      throw MissingGroupError("no " + std::string(to_string(l)) + " instances in the " +
                              std::string(to_string(d)) + " training data");
    m.boaw_groups[gi].domain = m.bocw_groups[gi].domain = d;
    m.boaw_groups[gi].label = m.bocw_groups[gi].label = l;
  }

  auto take_top = [per_group_k](std::vector<std::pair<double, std::string>>& scored) {
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::vector<std::string> words;
    for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(per_group_k); ++i)
      words.push_back(std::move(scored[i].second));
    return words;
  };

  for (std::size_t gi = 0; gi < 4; ++gi) {
    auto [dk, lk] = group_keys[gi];
    const DomStats& d = dom[domain_index(dk)];
    std::size_t li = label_index(lk);
    const double denom_n = static_cast<double>(d.n + 2);

    // Rank by the smoothed probability ratio; log is monotone so the PMI
    // ordering is unchanged and ties stay exact.
    std::vector<std::pair<double, std::string>> scored;
    for (const auto& [w, cwl] : d.present_label[li]) {
      if (stopwords.count(w)) continue;
      double p_wl = static_cast<double>(cwl + 1) / denom_n;
      double p_w = static_cast<double>(d.present.at(w) + 1) / denom_n;
      double p_l = static_cast<double>(d.n_label[li] + 1) / denom_n;
      scored.emplace_back(p_wl / (p_w * p_l), w);
    }
    m.boaw_groups[gi].words = take_top(scored);

    std::vector<std::pair<double, std::string>> common;
    for (const auto& [w, cnt] : d.occurrences[li])
      common.emplace_back(static_cast<double>(cnt), w);
    m.bocw_groups[gi].words = take_top(common);
  }

  std::unordered_map<std::string, int> appearances;
  for (const auto& g : m.bocw_groups)
    for (const auto& w : g.words) ++appearances[w];
  for (auto& g : m.bocw_groups) {
    std::erase_if(g.words, [&](const std::string& w) { return appearances[w] >= 2; });
  }

  m.boaw_vocab = sorted_union(m.boaw_groups);
  m.bocw_vocab = sorted_union(m.bocw_groups);
  return m;
}

std::string assoc_to_json_string(const AssociationModel& m) {
  auto dump_groups = [](const std::array<AssociationModel::Group, 4>& gs) {
    json arr = json::array();
    for (const auto& g : gs) {
      arr.push_back({{"domain", std::string(to_string(g.domain))},
                     {"label", std::string(to_string(g.label))},
                     {"words", g.words}});
    }
    return arr;
  };
  json j = {
      {"format", "cds-assoc"},
      {"version", 1},
      {"per_group_k", m.per_group_k},
      {"stopwords", m.stopwords},
      {"boaw_groups", dump_groups(m.boaw_groups)},
      {"bocw_groups", dump_groups(m.bocw_groups)},
  };
  return j.dump(2);
}

AssociationModel assoc_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("bad association model document: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "cds-assoc" || j.value("version", 0) != 1)
    throw Error("unrecognized association model document");

  AssociationModel m;
  try {
    m.per_group_k = j.at("per_group_k").get<int>();
    for (const auto& w : j.at("stopwords")) m.stopwords.insert(w.get<std::string>());
    auto read_groups = [](const json& arr, std::array<AssociationModel::Group, 4>& out) {
      if (!arr.is_array() || arr.size() != 4)
        throw Error("association model must have exactly four groups");
      for (std::size_t i = 0; i < 4; ++i) {
        out[i].domain = parse_domain(arr[i].at("domain").get<std::string>());
        out[i].label = parse_label(arr[i].at("label").get<std::string>());
        out[i].words = arr[i].at("words").get<std::vector<std::string>>();
      }
    };
    read_groups(j.at("boaw_groups"), m.boaw_groups);
    read_groups(j.at("bocw_groups"), m.bocw_groups);
  } catch (const json::exception& e) {
    throw Error(std::string("bad association model document: ") + e.what());
  }
  m.boaw_vocab = sorted_union(m.boaw_groups);
  m.bocw_vocab = sorted_union(m.bocw_groups);
  return m;
}

std::string feature_value_cell(const FeatureValue& v) {
  switch (v.kind) {
    case FeatureValue::Kind::Missing: return "";
    case FeatureValue::Kind::Binary: return v.num != 0 ? "1" : "0";
    case FeatureValue::Kind::Real: return format_double(v.num);
    case FeatureValue::Kind::Categorical: return v.token;
  }
  return "";
}

void write_matrix_tsv(std::ostream& out, const std::vector<std::string>& schema,
                      const std::vector<FeatureVector>& rows) {
  out << join(schema, "\t") << '\n';
  for (const auto& row : rows) {
    if (row.values.size() != schema.size())
      throw SchemaMismatchError("matrix row does not match header width");
    std::vector<std::string> cells;
    cells.reserve(row.values.size());
    for (const auto& v : row.values) cells.push_back(feature_value_cell(v));
    out << join(cells, "\t") << '\n';
  }
}

}  // namespace cds

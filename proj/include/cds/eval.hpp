#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cds/classify.hpp"
#include "cds/corpus.hpp"
#include "cds/features.hpp"
#include "cds/lexicons.hpp"
#include "cds/ngram_store.hpp"

namespace cds {

// Precision/recall/F1 on the positive (Sarcastic) class.
struct EvalReport {
  std::string scenario;
  std::string config;
  long long tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  std::uint64_t seed = 0;
  std::size_t feature_dim = 0;  // encoded width before any augmentation
  std::size_t train_dim = 0;    // width the classifier actually saw

  long long total() const { return tp + fp + fn + tn; }
};

EvalReport score(const std::vector<Label>& predictions, const std::vector<Label>& gold);

EvalReport baseline_all_sarcasm(const Dataset& test);

// Each instance is independently predicted positive with probability
// positive_rate; deterministic per seed.
EvalReport baseline_random(const Dataset& test, double positive_rate, std::uint64_t seed);

double positive_prior(std::span<const Instance> instances);

enum class TrainSource { TwitterOnly, AmazonOnly, Both, EasyAdapt };
enum class ClassifierKind { NB, LR };

std::string_view to_string(TrainSource s);
std::string_view to_string(ClassifierKind k);
std::optional<TrainSource> parse_train_source(std::string_view s);
std::optional<ClassifierKind> parse_classifier(std::string_view s);

// Immutable views over the loaded side inputs. Pointers may be null when the
// feature config does not need them; stopwords only gate association fitting.
struct Resources {
  const PolarityLexicon* liu = nullptr;
  const SubjectivityLexicon* mpqa = nullptr;
  const ScoredLexicon* afinn = nullptr;
  const IndicatorLists* indicators = nullptr;
  const NgramStore* ngrams = nullptr;
  const std::unordered_set<std::string>* stopwords = nullptr;
};

// Everything needed to reproduce predictions: the fitted vocabularies, the
// one-hot encoder, the optional augmented-space encoder, and the classifier.
struct Pipeline {
  FeatureConfig feature_config;
  ClassifierKind classifier = ClassifierKind::NB;
  bool easyadapt = false;
  std::optional<AssociationModel> assoc;
  DenseEncoder encoder;
  std::optional<DenseEncoder> aug_encoder;
  std::optional<NaiveBayesModel> nb;
  std::optional<LogisticModel> lr;
  std::size_t feature_dim = 0;
  std::size_t train_dim = 0;
};

// Fits associations (when the config wants them and fixed_assoc is null),
// extracts, encodes, augments when easyadapt is set (origin = instance
// domain; Twitter source, Amazon target), and trains the classifier.
Pipeline fit_pipeline(std::span<const Instance> train, bool easyadapt, ClassifierKind clf,
                      const FeatureConfig& cfg, const Resources& res,
                      const LrOptions& lr_opt = {},
                      const AssociationModel* fixed_assoc = nullptr);

std::vector<Label> predict_pipeline(const Pipeline& p, const Resources& res,
                                    std::span<const Instance> test);

struct CvResult {
  // Counts are pooled over folds; precision/recall/f1 are fold means.
  EvalReport mean;
  std::vector<EvalReport> folds;
};

// Stratified k-fold with fold sizes differing by at most one; associations,
// encoders, and imputation statistics are refit inside every fold.
CvResult cross_validate(const Dataset& data, int k, ClassifierKind clf,
                        const FeatureConfig& cfg, const Resources& res, std::uint64_t seed,
                        const LrOptions& lr_opt = {});

struct MatrixRow {
  std::string name;
  std::vector<EvalReport> cells;  // the five scenario cells, fixed order
};

// Five cells per config: train-twitter/test-amazon, train-both/test-amazon,
// train-amazon/test-amazon, easyadapt/test-amazon, train-twitter/test-twitter.
struct MatrixResult {
  EvalReport all_sarcasm_amazon, all_sarcasm_twitter;
  EvalReport random_amazon, random_twitter;
  std::vector<MatrixRow> rows;

  std::vector<EvalReport> flat() const;  // baselines first, then row cells
};

// Both datasets must carry a train/test split. Associations are fitted once
// on the union of the two train sides and shared by every cell.
MatrixResult run_matrix(const Dataset& twitter, const Dataset& amazon,
                        const std::vector<FeatureConfig>& configs, ClassifierKind clf,
                        const Resources& res, std::uint64_t seed,
                        const LrOptions& lr_opt = {}, bool uniform_random_baseline = false);

void write_reports_tsv(std::ostream& out, std::span<const EvalReport> reports);
void write_reports_json(std::ostream& out, std::span<const EvalReport> reports);
std::string pretty_matrix(const MatrixResult& m);

}  // namespace cds

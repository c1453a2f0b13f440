#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cds/corpus.hpp"
#include "cds/features.hpp"

namespace cds {

enum class ColumnKind { Gaussian, Bernoulli };

struct EncodedSchema {
  std::vector<std::string> names;
  std::vector<ColumnKind> kinds;

  std::size_t size() const { return names.size(); }
};

// Maps FeatureVectors onto dense numeric rows. Categorical columns expand to
// a sorted one-hot block with a trailing <oov> bucket fixed from training
// data; Missing encodes as NaN.
class DenseEncoder {
 public:
  struct Column {
    std::string name;
    bool categorical = false;
    bool binary = false;             // every non-missing training value was Binary
    std::vector<std::string> vocab;  // categorical only; sorted, <oov> appended
  };

  static DenseEncoder fit(const std::vector<FeatureVector>& train);
  static DenseEncoder from_columns(std::vector<Column> cols);

  const std::vector<Column>& columns() const { return columns_; }
  const EncodedSchema& schema() const { return schema_; }

  std::vector<double> encode(const FeatureVector& v) const;
  // One-hot expansion at the FeatureValue level; non-categorical columns pass
  // through, a Missing categorical stays Missing across its whole block.
  FeatureVector expand(const FeatureVector& v) const;

 private:
  std::vector<Column> columns_;
  EncodedSchema schema_;

  void check_names(const FeatureVector& v) const;
};

inline constexpr double kVarianceFloor = 1e-9;

// Hybrid model: Gaussian likelihoods for real columns, plus-one smoothed
// Bernoulli for binary/one-hot columns. Missing values are skipped at both
// training and prediction time.
struct NaiveBayesModel {
  struct ColumnParams {
    std::array<double, 2> mean{};
    std::array<double, 2> var{};
    std::array<double, 2> p_true{};
    bool inert = false;  // column had no observed value at all; always skipped
  };

  EncodedSchema schema;
  std::array<double, 2> priors{};  // index by label_index; sums to 1
  std::vector<ColumnParams> columns;
};

NaiveBayesModel train_nb(const std::vector<std::vector<double>>& rows,
                         const std::vector<Label>& labels, const EncodedSchema& schema);

// Posterior over {Sarcastic, NonSarcastic}; exact ties predict NonSarcastic.
std::pair<Label, std::array<double, 2>> predict_nb(const NaiveBayesModel& m,
                                                   const std::vector<double>& row);

struct LrOptions {
  double l2 = 0.01;
  double tol = 1e-6;  // on the max-abs gradient entry
  int max_iters = 10000;
};

struct LogisticModel {
  EncodedSchema schema;
  std::vector<double> mean;   // per-column imputation value (training mean)
  std::vector<double> scale;  // per-column standardization divisor
  std::vector<double> weights;
  double bias = 0.0;
  double l2 = 0.01;
  int iterations = 0;
  double final_grad_norm = 0.0;
};

// L2-regularized logistic regression via backtracking gradient descent;
// Missing values imputed to the column training mean, then standardized.
// Throws NonConvergenceError when the tolerance is not met within max_iters.
LogisticModel train_lr(const std::vector<std::vector<double>>& rows,
                       const std::vector<Label>& labels, const EncodedSchema& schema,
                       const LrOptions& opt = {});

// Probability of the positive (Sarcastic) class; label = probability >= 0.5.
std::pair<Label, double> predict_lr(const LogisticModel& m, const std::vector<double>& row);

// Mean log-loss plus (l2/2)|w|^2 over already-standardized rows; y holds 1
// for the positive class. Exposed so the gradient can be checked numerically.
double lr_loss(const std::vector<std::vector<double>>& z, const std::vector<int>& y,
               const std::vector<double>& w, double bias, double l2);
// Derivative w.r.t. (w, bias); the bias slot is last.
std::vector<double> lr_gradient(const std::vector<std::vector<double>>& z,
                                const std::vector<int>& y, const std::vector<double>& w,
                                double bias, double l2);

std::string encoder_to_json_string(const DenseEncoder& e);
DenseEncoder encoder_from_json_string(const std::string& text);
std::string nb_to_json_string(const NaiveBayesModel& m);
NaiveBayesModel nb_from_json_string(const std::string& text);
std::string lr_to_json_string(const LogisticModel& m);
LogisticModel lr_from_json_string(const std::string& text);

}  // namespace cds

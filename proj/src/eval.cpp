#include "cds/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "cds/adapt.hpp"
#include "cds/errors.hpp"
#include "cds/util.hpp"

namespace cds {
namespace {

using nlohmann::json;

std::vector<Label> labels_of(std::span<const Instance> instances) {
  std::vector<Label> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(inst.label);
  return out;
}

Origin origin_of(const Instance& inst) {
  return inst.domain == Domain::Twitter ? Origin::Source : Origin::Target;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

EvalReport score(const std::vector<Label>& predictions, const std::vector<Label>& gold) {
  if (predictions.size() != gold.size()) {
    throw LengthMismatchError("predictions and gold labels differ in length");
  }
  if (gold.empty()) throw EmptyDatasetError();

  EvalReport r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool pred_pos = predictions[i] == Label::Sarcastic;
    const bool gold_pos = gold[i] == Label::Sarcastic;
    if (pred_pos && gold_pos) ++r.tp;
    else if (pred_pos && !gold_pos) ++r.fp;
    else if (!pred_pos && gold_pos) ++r.fn;
    else ++r.tn;
  }
  r.precision = r.tp + r.fp > 0 ? double(r.tp) / double(r.tp + r.fp) : 0.0;
  r.recall = r.tp + r.fn > 0 ? double(r.tp) / double(r.tp + r.fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

EvalReport baseline_all_sarcasm(const Dataset& test) {
  const auto gold = labels_of(test.instances);
  const std::vector<Label> preds(gold.size(), Label::Sarcastic);
  EvalReport r = score(preds, gold);
  r.scenario = "baseline:all_sarcasm";
  return r;
}

EvalReport baseline_random(const Dataset& test, double positive_rate, std::uint64_t seed) {
  if (!(positive_rate >= 0.0 && positive_rate <= 1.0)) {
    throw std::invalid_argument("positive_rate must lie in [0, 1]");
  }
  const auto gold = labels_of(test.instances);
  Rng rng(seed);
  std::vector<Label> preds;
  preds.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    preds.push_back(rng.uniform01() < positive_rate ? Label::Sarcastic
                                                    : Label::NonSarcastic);
  }
  EvalReport r = score(preds, gold);
  r.scenario = "baseline:random";
  r.config = "rate=" + format_double(positive_rate);
  r.seed = seed;
  return r;
}

double positive_prior(std::span<const Instance> instances) {
  if (instances.empty()) throw EmptyDatasetError();
  std::size_t pos = 0;
  for (const auto& inst : instances) {
    if (inst.label == Label::Sarcastic) ++pos;
  }
  return double(pos) / double(instances.size());
}

std::string_view to_string(TrainSource s) {
  switch (s) {
    case TrainSource::TwitterOnly: return "twitter";
    case TrainSource::AmazonOnly: return "amazon";
    case TrainSource::Both: return "both";
    case TrainSource::EasyAdapt: return "easyadapt";
  }
  return "twitter";
}

std::string_view to_string(ClassifierKind k) {
  return k == ClassifierKind::NB ? "nb" : "lr";
}

std::optional<TrainSource> parse_train_source(std::string_view s) {
  if (s == "twitter") return TrainSource::TwitterOnly;
  if (s == "amazon") return TrainSource::AmazonOnly;
  if (s == "both") return TrainSource::Both;
  if (s == "easyadapt") return TrainSource::EasyAdapt;
  return std::nullopt;
}

std::optional<ClassifierKind> parse_classifier(std::string_view s) {
  if (s == "nb") return ClassifierKind::NB;
  if (s == "lr") return ClassifierKind::LR;
  return std::nullopt;
}

Pipeline fit_pipeline(std::span<const Instance> train, bool easyadapt, ClassifierKind clf,
                      const FeatureConfig& cfg, const Resources& res,
                      const LrOptions& lr_opt, const AssociationModel* fixed_assoc) {
  if (train.empty()) throw EmptyTrainingError();

  Pipeline p;
  p.feature_config = cfg;
  p.classifier = clf;
  p.easyadapt = easyadapt;

  if (cfg.has(FeatureGroup::Boaw) || cfg.has(FeatureGroup::Bocw)) {
    if (fixed_assoc) {
      p.assoc = *fixed_assoc;
    } else {
      static const std::unordered_set<std::string> kNoStopwords;
      p.assoc = fit_associations(train, res.stopwords ? *res.stopwords : kNoStopwords);
    }
  }

  const AssociationModel* assoc_ptr = p.assoc ? &*p.assoc : nullptr;
  FeatureExtractor extractor(cfg, res.liu, res.mpqa, res.afinn, res.indicators,
                             res.ngrams, assoc_ptr);

  std::vector<FeatureVector> fvs;
  std::vector<Label> labels;
  fvs.reserve(train.size());
  labels.reserve(train.size());
  for (const auto& inst : train) {
    fvs.push_back(extractor.extract(inst));
    labels.push_back(inst.label);
  }

  p.encoder = DenseEncoder::fit(fvs);
  p.feature_dim = p.encoder.schema().size();

  std::vector<std::vector<double>> rows;
  rows.reserve(fvs.size());
  const EncodedSchema* train_schema = nullptr;
  if (easyadapt) {
    std::vector<std::pair<FeatureVector, Origin>> pairs;
    pairs.reserve(fvs.size());
    for (std::size_t i = 0; i < fvs.size(); ++i) {
      pairs.emplace_back(p.encoder.expand(fvs[i]), origin_of(train[i]));
    }
    const auto augmented = augment_dataset(pairs);
    std::vector<FeatureVector> flats;
    flats.reserve(augmented.size());
    for (const auto& a : augmented) flats.push_back(a.flat());
    p.aug_encoder = DenseEncoder::fit(flats);
    train_schema = &p.aug_encoder->schema();
    for (const auto& f : flats) rows.push_back(p.aug_encoder->encode(f));
  } else {
    train_schema = &p.encoder.schema();
    for (const auto& f : fvs) rows.push_back(p.encoder.encode(f));
  }
  p.train_dim = train_schema->size();

  if (clf == ClassifierKind::NB) {
    p.nb = train_nb(rows, labels, *train_schema);
  } else {
    p.lr = train_lr(rows, labels, *train_schema, lr_opt);
  }
  return p;
}

std::vector<Label> predict_pipeline(const Pipeline& p, const Resources& res,
                                    std::span<const Instance> test) {
  const AssociationModel* assoc_ptr = p.assoc ? &*p.assoc : nullptr;
  FeatureExtractor extractor(p.feature_config, res.liu, res.mpqa, res.afinn,
                             res.indicators, res.ngrams, assoc_ptr);

  std::vector<Label> out;
  out.reserve(test.size());
  for (const auto& inst : test) {
    const FeatureVector fv = extractor.extract(inst);
    std::vector<double> row;
    if (p.easyadapt) {
      row = p.aug_encoder->encode(augment(p.encoder.expand(fv), origin_of(inst)).flat());
    } else {
      row = p.encoder.encode(fv);
    }
    out.push_back(p.classifier == ClassifierKind::NB ? predict_nb(*p.nb, row).first
                                                     : predict_lr(*p.lr, row).first);
  }
  return out;
}

CvResult cross_validate(const Dataset& data, int k, ClassifierKind clf,
                        const FeatureConfig& cfg, const Resources& res,
                        std::uint64_t seed, const LrOptions& lr_opt) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const auto& instances = data.instances;
  if (instances.empty()) throw EmptyDatasetError();

  std::vector<std::size_t> pos_idx, neg_idx;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    (instances[i].label == Label::Sarcastic ? pos_idx : neg_idx).push_back(i);
  }
  if (pos_idx.size() < std::size_t(k) || neg_idx.size() < std::size_t(k)) {
    throw TooFewInstancesError("each class needs at least k instances for " +
                               std::to_string(k) + "-fold cross-validation");
  }

  Rng rng(seed);
  rng.shuffle(pos_idx);
  rng.shuffle(neg_idx);

  // Rolling round-robin cursor across both classes keeps every fold within
  // one instance of the others while staying stratified.
  std::vector<int> fold_of(instances.size(), 0);
  int cursor = 0;
  for (auto idx : pos_idx) {
    fold_of[idx] = cursor;
    cursor = (cursor + 1) % k;
  }
  for (auto idx : neg_idx) {
    fold_of[idx] = cursor;
    cursor = (cursor + 1) % k;
  }

  CvResult result;
  double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
  for (int f = 0; f < k; ++f) {
    std::vector<Instance> train, test;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      (fold_of[i] == f ? test : train).push_back(instances[i]);
    }
    Pipeline pipe = fit_pipeline(train, false, clf, cfg, res, lr_opt);
    const auto preds = predict_pipeline(pipe, res, test);
    EvalReport rep = score(preds, labels_of(test));
    rep.scenario = "cv:fold=" + std::to_string(f);
    rep.config = cfg.describe();
    rep.seed = seed;
    rep.feature_dim = pipe.feature_dim;
    rep.train_dim = pipe.train_dim;

    result.mean.tp += rep.tp;
    result.mean.fp += rep.fp;
    result.mean.fn += rep.fn;
    result.mean.tn += rep.tn;
    p_sum += rep.precision;
    r_sum += rep.recall;
    f_sum += rep.f1;
    result.folds.push_back(std::move(rep));
  }

  result.mean.scenario = "cv:k=" + std::to_string(k);
  result.mean.config = cfg.describe();
  result.mean.seed = seed;
  result.mean.precision = p_sum / k;
  result.mean.recall = r_sum / k;
  result.mean.f1 = f_sum / k;
  result.mean.feature_dim = result.folds.front().feature_dim;
  result.mean.train_dim = result.folds.front().train_dim;
  return result;
}

std::vector<EvalReport> MatrixResult::flat() const {
  std::vector<EvalReport> out = {all_sarcasm_amazon, all_sarcasm_twitter,
                                 random_amazon, random_twitter};
  for (const auto& row : rows) {
    out.insert(out.end(), row.cells.begin(), row.cells.end());
  }
  return out;
}

MatrixResult run_matrix(const Dataset& twitter, const Dataset& amazon,
                        const std::vector<FeatureConfig>& configs, ClassifierKind clf,
                        const Resources& res, std::uint64_t seed,
                        const LrOptions& lr_opt, bool uniform_random_baseline) {
  if (!twitter.split || !amazon.split) {
    throw std::invalid_argument("run_matrix needs datasets with a train/test split");
  }
  const auto tw_train = twitter.side(SplitSide::Train);
  const auto tw_test = twitter.side(SplitSide::Test);
  const auto am_train = amazon.side(SplitSide::Train);
  const auto am_test = amazon.side(SplitSide::Test);

  std::vector<Instance> both_train = tw_train;
  both_train.insert(both_train.end(), am_train.begin(), am_train.end());

  Dataset am_test_ds{am_test, std::nullopt};
  Dataset tw_test_ds{tw_test, std::nullopt};

  MatrixResult m;
  m.all_sarcasm_amazon = baseline_all_sarcasm(am_test_ds);
  m.all_sarcasm_amazon.scenario += "/test_amazon";
  m.all_sarcasm_twitter = baseline_all_sarcasm(tw_test_ds);
  m.all_sarcasm_twitter.scenario += "/test_twitter";

  const double am_rate = uniform_random_baseline ? 0.5 : positive_prior(am_train);
  const double tw_rate = uniform_random_baseline ? 0.5 : positive_prior(tw_train);
  m.random_amazon = baseline_random(am_test_ds, am_rate, seed);
  m.random_amazon.scenario += "/test_amazon";
  m.random_twitter = baseline_random(tw_test_ds, tw_rate, seed + 1);
  m.random_twitter.scenario += "/test_twitter";

  bool need_assoc = false;
  for (const auto& cfg : configs) {
    need_assoc = need_assoc || cfg.has(FeatureGroup::Boaw) || cfg.has(FeatureGroup::Bocw);
  }
  std::optional<AssociationModel> shared_assoc;
  if (need_assoc) {
    static const std::unordered_set<std::string> kNoStopwords;
    shared_assoc =
        fit_associations(both_train, res.stopwords ? *res.stopwords : kNoStopwords);
  }
  const AssociationModel* assoc_ptr = shared_assoc ? &*shared_assoc : nullptr;

  struct Cell {
    TrainSource source;
    const std::vector<Instance>* train;
    const std::vector<Instance>* test;
    const char* name;
  };
  const std::array<Cell, 5> cells = {{
      {TrainSource::TwitterOnly, &tw_train, &am_test, "train_twitter/test_amazon"},
      {TrainSource::Both, &both_train, &am_test, "train_both/test_amazon"},
      {TrainSource::AmazonOnly, &am_train, &am_test, "train_amazon/test_amazon"},
      {TrainSource::EasyAdapt, &both_train, &am_test, "easyadapt/test_amazon"},
      {TrainSource::TwitterOnly, &tw_train, &tw_test, "train_twitter/test_twitter"},
  }};

  for (const auto& cfg : configs) {
    MatrixRow row;
    row.name = cfg.describe();
    for (const auto& cell : cells) {
      const bool easy = cell.source == TrainSource::EasyAdapt;
      Pipeline pipe = fit_pipeline(*cell.train, easy, clf, cfg, res, lr_opt, assoc_ptr);
      const auto preds = predict_pipeline(pipe, res, *cell.test);
      EvalReport rep = score(preds, labels_of(*cell.test));
      rep.scenario = cell.name;
      rep.config = row.name;
      rep.seed = seed;
      rep.feature_dim = pipe.feature_dim;
      rep.train_dim = pipe.train_dim;
      row.cells.push_back(std::move(rep));
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

void write_reports_tsv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "scenario\tconfig\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\tfeature_dim\t"
         "train_dim\tseed\n";
  for (const auto& r : reports) {
    out << r.scenario << '\t' << r.config << '\t' << r.tp << '\t' << r.fp << '\t'
        << r.fn << '\t' << r.tn << '\t' << format_double(r.precision) << '\t'
        << format_double(r.recall) << '\t' << format_double(r.f1) << '\t'
        << r.feature_dim << '\t' << r.train_dim << '\t' << r.seed << '\n';
  }
}

void write_reports_json(std::ostream& out, std::span<const EvalReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({
        {"scenario", r.scenario},
        {"config", r.config},
        {"tp", r.tp},
        {"fp", r.fp},
        {"fn", r.fn},
        {"tn", r.tn},
        {"precision", r.precision},
        {"recall", r.recall},
        {"f1", r.f1},
        {"feature_dim", r.feature_dim},
        {"train_dim", r.train_dim},
        {"seed", r.seed},
    });
  }
  out << arr.dump(2) << '\n';
}

std::string pretty_matrix(const MatrixResult& m) {
  const std::array<std::string, 5> headers = {
      "Twitter>Amazon", "Both>Amazon", "Amazon>Amazon", "EasyAdapt>Amazon",
      "Twitter>Twitter"};

  auto cell_text = [](const EvalReport& r) {
    return fmt3(r.precision) + "/" + fmt3(r.recall) + "/" + fmt3(r.f1);
  };

  std::vector<std::vector<std::string>> table;
  table.push_back({"features"});
  for (const auto& h : headers) table.back().push_back(h);

  auto baseline_row = [&](const std::string& name, const EvalReport& amazon,
                          const EvalReport& twitter) {
    std::vector<std::string> row = {name};
    for (int i = 0; i < 4; ++i) row.push_back(cell_text(amazon));
    row.push_back(cell_text(twitter));
    table.push_back(std::move(row));
  };
  baseline_row("all-sarcasm", m.all_sarcasm_amazon, m.all_sarcasm_twitter);
  baseline_row("random", m.random_amazon, m.random_twitter);

  for (const auto& row : m.rows) {
    std::vector<std::string> line = {row.name};
    for (const auto& cell : row.cells) line.push_back(cell_text(cell));
    table.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }

  std::ostringstream out;
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      out << row[c];
      if (c + 1 < row.size()) {
        out << std::string(widths[c] - row[c].size(), ' ');
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cds

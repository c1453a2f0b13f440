#include "cds/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "cds/errors.hpp"

namespace cds {

using nlohmann::json;

namespace {

constexpr const char* kOovToken = "<oov>";

bool is_nan(double v) { return std::isnan(v); }

void check_training_shape(const std::vector<std::vector<double>>& rows,
                          const std::vector<Label>& labels, const EncodedSchema& schema) {
  if (rows.empty()) throw EmptyTrainingError();
  if (rows.size() != labels.size())
    throw LengthMismatchError("row and label counts differ");
  for (const auto& r : rows) {
    if (r.size() != schema.size())
      throw SchemaMismatchError("training row width does not match schema");
  }
  std::array<std::size_t, 2> counts{};
  for (Label l : labels) ++counts[label_index(l)];
  if (counts[0] == 0 || counts[1] == 0) throw SingleClassError();
}

double sigmoid(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  double e = std::exp(s);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow
double softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

DenseEncoder DenseEncoder::fit(const std::vector<FeatureVector>& train) {
  if (train.empty()) throw EmptyTrainingError();
  const auto& names = train.front().names;
  for (const auto& fv : train) {
    if (fv.names != names) throw SchemaMismatchError("training vectors disagree on schema");
  }

  std::vector<Column> cols(names.size());
  std::vector<std::set<std::string>> vocabs(names.size());
  std::vector<bool> saw_real(names.size(), false), saw_binary(names.size(), false),
      saw_cat(names.size(), false);

  for (const auto& fv : train) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      const FeatureValue& v = fv.values[c];
      switch (v.kind) {
        case FeatureValue::Kind::Missing: break;
        case FeatureValue::Kind::Real: saw_real[c] = true; break;
        case FeatureValue::Kind::Binary: saw_binary[c] = true; break;
        case FeatureValue::Kind::Categorical:
          saw_cat[c] = true;
          vocabs[c].insert(v.token);
          break;
      }
    }
  }

  for (std::size_t c = 0; c < names.size(); ++c) {
    cols[c].name = names[c];
    if (saw_cat[c]) {
      if (saw_real[c] || saw_binary[c])
        throw SchemaMismatchError("column " + names[c] + " mixes categorical and numeric values");
      cols[c].categorical = true;
      cols[c].vocab.assign(vocabs[c].begin(), vocabs[c].end());
      cols[c].vocab.push_back(kOovToken);
    } else {
      cols[c].binary = saw_binary[c] && !saw_real[c];
    }
  }
  return from_columns(std::move(cols));
}

DenseEncoder DenseEncoder::from_columns(std::vector<Column> cols) {
  DenseEncoder e;
  e.columns_ = std::move(cols);
  for (const auto& col : e.columns_) {
    if (col.categorical) {
      for (const auto& tok : col.vocab) {
        e.schema_.names.push_back(col.name + "=" + tok);
        e.schema_.kinds.push_back(ColumnKind::Bernoulli);
      }
    } else {
      e.schema_.names.push_back(col.name);
      e.schema_.kinds.push_back(col.binary ? ColumnKind::Bernoulli : ColumnKind::Gaussian);
    }
  }
  return e;
}

void DenseEncoder::check_names(const FeatureVector& v) const {
  if (v.values.size() != columns_.size() || v.names.size() != columns_.size())
    throw SchemaMismatchError("vector width does not match encoder");
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (v.names[c] != columns_[c].name)
      throw SchemaMismatchError("vector schema does not match encoder (column " +
                                v.names[c] + " vs " + columns_[c].name + ")");
  }
}

std::vector<double> DenseEncoder::encode(const FeatureVector& v) const {
  check_names(v);
  std::vector<double> out;
  out.reserve(schema_.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const Column& col = columns_[c];
    const FeatureValue& val = v.values[c];
    if (!col.categorical) {
      if (val.kind == FeatureValue::Kind::Categorical)
        throw SchemaMismatchError("categorical value in numeric column " + col.name);
      out.push_back(val.is_missing() ? nan : val.num);
      continue;
    }
    if (val.is_missing()) {
      out.insert(out.end(), col.vocab.size(), nan);
      continue;
    }
    if (val.kind != FeatureValue::Kind::Categorical)
      throw SchemaMismatchError("numeric value in categorical column " + col.name);
    std::size_t hit = col.vocab.size() - 1;  // <oov>
    auto it = std::lower_bound(col.vocab.begin(), col.vocab.end() - 1, val.token);
    if (it != col.vocab.end() - 1 && *it == val.token)
      hit = static_cast<std::size_t>(it - col.vocab.begin());
    for (std::size_t i = 0; i < col.vocab.size(); ++i)
      out.push_back(i == hit ? 1.0 : 0.0);
  }
  return out;
}

FeatureVector DenseEncoder::expand(const FeatureVector& v) const {
  check_names(v);
  FeatureVector out;
  out.names = schema_.names;
  out.values.reserve(schema_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const Column& col = columns_[c];
    const FeatureValue& val = v.values[c];
    if (!col.categorical) {
      if (val.kind == FeatureValue::Kind::Categorical)
        throw SchemaMismatchError("categorical value in numeric column " + col.name);
      out.values.push_back(val);
      continue;
    }
    if (val.is_missing()) {
      out.values.insert(out.values.end(), col.vocab.size(), FeatureValue::missing());
      continue;
    }
    if (val.kind != FeatureValue::Kind::Categorical)
      throw SchemaMismatchError("numeric value in categorical column " + col.name);
    std::size_t hit = col.vocab.size() - 1;
    auto it = std::lower_bound(col.vocab.begin(), col.vocab.end() - 1, val.token);
    if (it != col.vocab.end() - 1 && *it == val.token)
      hit = static_cast<std::size_t>(it - col.vocab.begin());
    for (std::size_t i = 0; i < col.vocab.size(); ++i)
      out.values.push_back(FeatureValue::binary(i == hit));
  }
  return out;
}

NaiveBayesModel train_nb(const std::vector<std::vector<double>>& rows,
                         const std::vector<Label>& labels, const EncodedSchema& schema) {
  check_training_shape(rows, labels, schema);
  const std::size_t n = rows.size();
  const std::size_t width = schema.size();

  NaiveBayesModel m;
  m.schema = schema;
  std::array<std::size_t, 2> class_n{};
  for (Label l : labels) ++class_n[label_index(l)];
  m.priors = {static_cast<double>(class_n[0]) / static_cast<double>(n),
              static_cast<double>(class_n[1]) / static_cast<double>(n)};

  m.columns.resize(width);
  for (std::size_t c = 0; c < width; ++c) {
    NaiveBayesModel::ColumnParams& p = m.columns[c];
    if (schema.kinds[c] == ColumnKind::Bernoulli) {
      std::array<long long, 2> obs{}, truthy{};
      for (std::size_t i = 0; i < n; ++i) {
        double x = rows[i][c];
        if (is_nan(x)) continue;
        std::size_t k = label_index(labels[i]);
        ++obs[k];
        if (x != 0.0) ++truthy[k];
      }
      for (std::size_t k = 0; k < 2; ++k)
        p.p_true[k] = static_cast<double>(truthy[k] + 1) / static_cast<double>(obs[k] + 2);
      continue;
    }
    // Gaussian: per-class MLE over observed values; classes with no
    // observations borrow the pooled statistics.
    std::array<double, 2> sum{}, sumsq{};
    std::array<long long, 2> cnt{};
    for (std::size_t i = 0; i < n; ++i) {
      double x = rows[i][c];
      if (is_nan(x)) continue;
      std::size_t k = label_index(labels[i]);
      sum[k] += x;
      sumsq[k] += x * x;
      ++cnt[k];
    }
    long long all_cnt = cnt[0] + cnt[1];
    if (all_cnt == 0) {
      p.inert = true;
      continue;
    }
    double all_mean = (sum[0] + sum[1]) / static_cast<double>(all_cnt);
    double all_var =
        std::max((sumsq[0] + sumsq[1]) / static_cast<double>(all_cnt) - all_mean * all_mean,
                 kVarianceFloor);
    for (std::size_t k = 0; k < 2; ++k) {
      if (cnt[k] == 0) {
        p.mean[k] = all_mean;
        p.var[k] = all_var;
        continue;
      }
      double mean = sum[k] / static_cast<double>(cnt[k]);
      double var = sumsq[k] / static_cast<double>(cnt[k]) - mean * mean;
      p.mean[k] = mean;
      p.var[k] = std::max(var, kVarianceFloor);
    }
  }
  return m;
}

std::pair<Label, std::array<double, 2>> predict_nb(const NaiveBayesModel& m,
                                                   const std::vector<double>& row) {
  if (row.size() != m.schema.size())
    throw SchemaMismatchError("prediction row width does not match model schema");

  std::array<double, 2> lp = {std::log(m.priors[0]), std::log(m.priors[1])};
  for (std::size_t c = 0; c < row.size(); ++c) {
    double x = row[c];
    if (is_nan(x)) continue;
    const auto& p = m.columns[c];
    if (p.inert) continue;
    if (m.schema.kinds[c] == ColumnKind::Bernoulli) {
      bool t = x != 0.0;
      for (std::size_t k = 0; k < 2; ++k)
        lp[k] += std::log(t ? p.p_true[k] : 1.0 - p.p_true[k]);
    } else {
      for (std::size_t k = 0; k < 2; ++k) {
        double d = x - p.mean[k];
        lp[k] += -0.5 * std::log(2.0 * std::numbers::pi * p.var[k]) - d * d / (2.0 * p.var[k]);
      }
    }
  }

  Label label = lp[0] > lp[1] ? Label::Sarcastic : Label::NonSarcastic;
  double hi = std::max(lp[0], lp[1]);
  std::array<double, 2> post = {std::exp(lp[0] - hi), std::exp(lp[1] - hi)};
  double z = post[0] + post[1];
  post[0] /= z;
  post[1] /= z;
  return {label, post};
}

double lr_loss(const std::vector<std::vector<double>>& z, const std::vector<int>& y,
               const std::vector<double>& w, double bias, double l2) {
  const double n = static_cast<double>(z.size());
  double loss = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double s = bias;
    for (std::size_t c = 0; c < w.size(); ++c) s += w[c] * z[i][c];
    double margin = y[i] == 1 ? s : -s;
    loss += softplus(-margin);
  }
  loss /= n;
  double reg = 0;
  for (double v : w) reg += v * v;
  return loss + 0.5 * l2 * reg;
}

std::vector<double> lr_gradient(const std::vector<std::vector<double>>& z,
                                const std::vector<int>& y, const std::vector<double>& w,
                                double bias, double l2) {
  const double n = static_cast<double>(z.size());
  std::vector<double> g(w.size() + 1, 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    double s = bias;
    for (std::size_t c = 0; c < w.size(); ++c) s += w[c] * z[i][c];
    double r = sigmoid(s) - (y[i] == 1 ? 1.0 : 0.0);
    for (std::size_t c = 0; c < w.size(); ++c) g[c] += r * z[i][c];
    g[w.size()] += r;
  }
  for (double& v : g) v /= n;
  for (std::size_t c = 0; c < w.size(); ++c) g[c] += l2 * w[c];
  return g;
}

LogisticModel train_lr(const std::vector<std::vector<double>>& rows,
                       const std::vector<Label>& labels, const EncodedSchema& schema,
                       const LrOptions& opt) {
  check_training_shape(rows, labels, schema);
  if (opt.l2 <= 0) throw std::invalid_argument("l2 strength must be positive");
  const std::size_t n = rows.size();
  const std::size_t width = schema.size();

  LogisticModel m;
  m.schema = schema;
  m.l2 = opt.l2;
  m.mean.assign(width, 0.0);
  m.scale.assign(width, 1.0);

  for (std::size_t c = 0; c < width; ++c) {
    double sum = 0;
    long long cnt = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_nan(rows[i][c])) {
        sum += rows[i][c];
        ++cnt;
      }
    }
    m.mean[c] = cnt > 0 ? sum / static_cast<double>(cnt) : 0.0;
  }

  std::vector<std::vector<double>> z(n, std::vector<double>(width));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < width; ++c)
      z[i][c] = is_nan(rows[i][c]) ? m.mean[c] : rows[i][c];

  for (std::size_t c = 0; c < width; ++c) {
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = z[i][c] - m.mean[c];
      var += d * d;
    }
    var /= static_cast<double>(n);
    double sd = std::sqrt(var);
    m.scale[c] = sd > 1e-12 ? sd : 1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < width; ++c) z[i][c] = (z[i][c] - m.mean[c]) / m.scale[c];

  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] == Label::Sarcastic ? 1 : 0;

  std::vector<double> w(width, 0.0);
  double bias = 0.0;
  double step = 1.0;
  double loss = lr_loss(z, y, w, bias, opt.l2);
  double gnorm = 0.0;
  int iter = 0;
  for (; iter < opt.max_iters; ++iter) {
    std::vector<double> g = lr_gradient(z, y, w, bias, opt.l2);
    gnorm = 0;
    double gsq = 0;
    for (double v : g) {
      gnorm = std::max(gnorm, std::abs(v));
      gsq += v * v;
    }
    if (gnorm < opt.tol) break;

    bool accepted = false;
    while (step > 1e-18) {
      std::vector<double> w2(width);
      for (std::size_t c = 0; c < width; ++c) w2[c] = w[c] - step * g[c];
      double b2 = bias - step * g[width];
      double cand = lr_loss(z, y, w2, b2, opt.l2);
      if (cand <= loss - 1e-4 * step * gsq) {
        w = std::move(w2);
        bias = b2;
        loss = cand;
        step = std::min(step * 1.5, 1e3);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) throw NonConvergenceError(gnorm, iter);
  }
  if (gnorm >= opt.tol) throw NonConvergenceError(gnorm, iter);

  m.weights = std::move(w);
  m.bias = bias;
  m.iterations = iter;
  m.final_grad_norm = gnorm;
  return m;
}

std::pair<Label, double> predict_lr(const LogisticModel& m, const std::vector<double>& row) {
  if (row.size() != m.schema.size())
    throw SchemaMismatchError("prediction row width does not match model schema");
  double s = m.bias;
  for (std::size_t c = 0; c < row.size(); ++c) {
    double x = is_nan(row[c]) ? m.mean[c] : row[c];
    s += m.weights[c] * (x - m.mean[c]) / m.scale[c];
  }
  double p = sigmoid(s);
  return {p >= 0.5 ? Label::Sarcastic : Label::NonSarcastic, p};
}

namespace {

json schema_to_json(const EncodedSchema& s) {
  json kinds = json::array();
  for (ColumnKind k : s.kinds) kinds.push_back(k == ColumnKind::Gaussian ? "gaussian" : "bernoulli");
  return {{"names", s.names}, {"kinds", kinds}};
}

EncodedSchema schema_from_json(const json& j) {
  EncodedSchema s;
  s.names = j.at("names").get<std::vector<std::string>>();
  for (const auto& k : j.at("kinds")) {
    std::string kind = k.get<std::string>();
    if (kind == "gaussian")
      s.kinds.push_back(ColumnKind::Gaussian);
    else if (kind == "bernoulli")
      s.kinds.push_back(ColumnKind::Bernoulli);
    else
      throw Error("unknown column kind: " + kind);
  }
  if (s.names.size() != s.kinds.size()) throw Error("schema names/kinds length mismatch");
  return s;
}

json parse_document(const std::string& text, const char* format, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("bad ") + what + " document: " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != format || j.value("version", 0) != 1)
    throw Error(std::string("unrecognized ") + what + " document");
  return j;
}

}  // namespace

std::string encoder_to_json_string(const DenseEncoder& e) {
  json cols = json::array();
  for (const auto& c : e.columns()) {
    cols.push_back({{"name", c.name},
                    {"categorical", c.categorical},
                    {"binary", c.binary},
                    {"vocab", c.vocab}});
  }
  json j = {{"format", "cds-encoder"}, {"version", 1}, {"columns", cols}};
  return j.dump(2);
}

DenseEncoder encoder_from_json_string(const std::string& text) {
  json j = parse_document(text, "cds-encoder", "encoder");
  std::vector<DenseEncoder::Column> cols;
  try {
    for (const auto& c : j.at("columns")) {
      DenseEncoder::Column col;
      col.name = c.at("name").get<std::string>();
      col.categorical = c.at("categorical").get<bool>();
      col.binary = c.at("binary").get<bool>();
      col.vocab = c.at("vocab").get<std::vector<std::string>>();
      cols.push_back(std::move(col));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad encoder document: ") + e.what());
  }
  return DenseEncoder::from_columns(std::move(cols));
}

std::string nb_to_json_string(const NaiveBayesModel& m) {
  json cols = json::array();
  for (const auto& c : m.columns) {
    cols.push_back({{"mean", c.mean},
                    {"var", c.var},
                    {"p_true", c.p_true},
                    {"inert", c.inert}});
  }
  json j = {{"format", "cds-nb"},
            {"version", 1},
            {"schema", schema_to_json(m.schema)},
            {"priors", m.priors},
            {"columns", cols}};
  return j.dump(2);
}

NaiveBayesModel nb_from_json_string(const std::string& text) {
  json j = parse_document(text, "cds-nb", "model");
  NaiveBayesModel m;
  try {
    m.schema = schema_from_json(j.at("schema"));
    m.priors = j.at("priors").get<std::array<double, 2>>();
    for (const auto& c : j.at("columns")) {
      NaiveBayesModel::ColumnParams p;
      p.mean = c.at("mean").get<std::array<double, 2>>();
      p.var = c.at("var").get<std::array<double, 2>>();
      p.p_true = c.at("p_true").get<std::array<double, 2>>();
      p.inert = c.at("inert").get<bool>();
      m.columns.push_back(p);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad model document: ") + e.what());
  }
  if (m.columns.size() != m.schema.size()) throw Error("model column count mismatch");
  return m;
}

std::string lr_to_json_string(const LogisticModel& m) {
  json j = {{"format", "cds-lr"},
            {"version", 1},
            {"schema", schema_to_json(m.schema)},
            {"mean", m.mean},
            {"scale", m.scale},
            {"weights", m.weights},
            {"bias", m.bias},
            {"l2", m.l2}};
  return j.dump(2);
}

LogisticModel lr_from_json_string(const std::string& text) {
  json j = parse_document(text, "cds-lr", "model");
  LogisticModel m;
  try {
    m.schema = schema_from_json(j.at("schema"));
    m.mean = j.at("mean").get<std::vector<double>>();
    m.scale = j.at("scale").get<std::vector<double>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.l2 = j.at("l2").get<double>();
  } catch (const json::exception& e) {
    throw Error(std::string("bad model document: ") + e.what());
  }
  if (m.mean.size() != m.schema.size() || m.scale.size() != m.schema.size() ||
      m.weights.size() != m.schema.size())
    throw Error("model parameter widths mismatch");
  return m;
}

}  // namespace cds

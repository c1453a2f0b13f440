#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cds/adapt.hpp"
#include "cds/classify.hpp"
#include "cds/corpus.hpp"
#include "cds/errors.hpp"
#include "cds/eval.hpp"
#include "cds/features.hpp"
#include "cds/lexicons.hpp"
#include "cds/ngram_store.hpp"
#include "cds/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cds;

namespace {

constexpr double kTrainFraction = 0.8;

struct Opts {
  std::string config_path;
  std::uint64_t seed = 13;
  std::string groups = "all";
  std::vector<std::string> group_rows;  // experiment: one config per occurrence
  std::string classifier = "nb";
  std::string scenario = "both";
  std::string test_domain;  // empty = keep every domain
  std::string out;
  bool strict_lexicons = false;
  std::string baseline;

  std::string in_path;
  std::string twitter_path;
  std::string amazon_path;
  std::string data_path;
  std::vector<std::string> train_paths;
  std::string model_path;
  std::string assoc_path;
  std::string liu_pos, liu_neg, mpqa, afinn, indicators, ngrams, stopwords;
  double rate = -1.0;  // <0 means "use the dataset prior"
  int per_group_k = 50;
};

// Relative input paths resolve under CDS_DATA_DIR when it is set; outputs
// always resolve against the working directory.
fs::path resolve(const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  if (path.is_absolute()) return path;
  if (const char* base = std::getenv("CDS_DATA_DIR")) {
    if (*base != '\0') return fs::path(base) / path;
  }
  return path;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open " + p.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  if (f.bad()) throw IoError("read failed on " + p.string());
  return buf.str();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open " + p.string() + " for writing");
  return f;
}

void require_flag(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(std::string("missing required option ") + flag);
}

void apply_config(const json& cfg, Opts& o) {
  if (!cfg.is_object()) throw Error("config file must hold a JSON object");
  for (const auto& [key, val] : cfg.items()) {
    if (key == "seed") o.seed = val.get<std::uint64_t>();
    else if (key == "groups") {
      if (val.is_array()) o.group_rows = val.get<std::vector<std::string>>();
      else o.groups = val.get<std::string>();
    }
    else if (key == "classifier") o.classifier = val.get<std::string>();
    else if (key == "scenario") o.scenario = val.get<std::string>();
    else if (key == "test_domain") o.test_domain = val.get<std::string>();
    else if (key == "out") o.out = val.get<std::string>();
    else if (key == "strict_lexicons") o.strict_lexicons = val.get<bool>();
    else if (key == "baseline") o.baseline = val.get<std::string>();
    else if (key == "in") o.in_path = val.get<std::string>();
    else if (key == "twitter") o.twitter_path = val.get<std::string>();
    else if (key == "amazon") o.amazon_path = val.get<std::string>();
    else if (key == "data") o.data_path = val.get<std::string>();
    else if (key == "train") {
      if (val.is_array()) o.train_paths = val.get<std::vector<std::string>>();
      else o.train_paths = {val.get<std::string>()};
    }
    else if (key == "model") o.model_path = val.get<std::string>();
    else if (key == "assoc") o.assoc_path = val.get<std::string>();
    else if (key == "liu_pos") o.liu_pos = val.get<std::string>();
    else if (key == "liu_neg") o.liu_neg = val.get<std::string>();
    else if (key == "mpqa") o.mpqa = val.get<std::string>();
    else if (key == "afinn") o.afinn = val.get<std::string>();
    else if (key == "indicators") o.indicators = val.get<std::string>();
    else if (key == "ngrams") o.ngrams = val.get<std::string>();
    else if (key == "stopwords") o.stopwords = val.get<std::string>();
    else if (key == "rate") o.rate = val.get<double>();
    else if (key == "k") o.per_group_k = val.get<int>();
    else throw Error("config: unknown key '" + key + "'");
  }
}

Dataset load_ds(const std::string& path) {
  fs::path p = resolve(path);
  return load_dataset(p, format_from_path(p));
}

Dataset filter_domain(Dataset d, const std::string& domain) {
  if (domain.empty()) return d;
  const Domain want = parse_domain(domain);
  Dataset out;
  for (auto& inst : d.instances) {
    if (inst.domain == want) out.instances.push_back(std::move(inst));
  }
  return out;
}

struct LoadedResources {
  std::optional<PolarityLexicon> liu;
  std::optional<SubjectivityLexicon> mpqa;
  std::optional<ScoredLexicon> afinn;
  std::optional<IndicatorLists> indicators;
  std::optional<NgramStore> ngrams;
  std::optional<std::unordered_set<std::string>> stopwords;

  Resources view() const {
    Resources r;
    if (liu) r.liu = &*liu;
    if (mpqa) r.mpqa = &*mpqa;
    if (afinn) r.afinn = &*afinn;
    if (indicators) r.indicators = &*indicators;
    if (ngrams) r.ngrams = &*ngrams;
    if (stopwords) r.stopwords = &*stopwords;
    return r;
  }
};

// Loads every resource the user pointed at; the extractor reports any group
// whose resource is still missing.
LoadedResources load_resources(const Opts& o) {
  LoadedResources lr;
  if (!o.liu_pos.empty() || !o.liu_neg.empty()) {
    if (o.liu_pos.empty() || o.liu_neg.empty()) {
      throw Error("--liu-pos and --liu-neg must be given together");
    }
    lr.liu = load_polarity(resolve(o.liu_pos), resolve(o.liu_neg), o.strict_lexicons);
  }
  if (!o.mpqa.empty()) lr.mpqa = load_subjectivity(resolve(o.mpqa));
  if (!o.afinn.empty()) lr.afinn = load_scored(resolve(o.afinn));
  if (!o.indicators.empty()) lr.indicators = load_indicators(resolve(o.indicators));
  if (!o.ngrams.empty()) lr.ngrams = NgramStore::load(resolve(o.ngrams));
  if (!o.stopwords.empty()) lr.stopwords = load_wordlist(resolve(o.stopwords));
  return lr;
}

std::optional<AssociationModel> load_assoc_file(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return assoc_from_json_string(read_file(resolve(path)));
}

std::vector<Label> gold_labels(const std::vector<Instance>& instances) {
  std::vector<Label> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(inst.label);
  return out;
}

void write_report_rows(const Opts& o, std::span<const EvalReport> reports) {
  if (o.out.empty()) {
    write_reports_tsv(std::cout, reports);
  } else {
    auto f = open_out(fs::path(o.out));
    write_reports_tsv(f, reports);
  }
}

std::string model_to_json_string(const Pipeline& p, std::uint64_t seed) {
  json bundle = {
      {"format", "cds-model"},
      {"version", 1},
      {"classifier", std::string(to_string(p.classifier))},
      {"groups", p.feature_config.describe()},
      {"easyadapt", p.easyadapt},
      {"seed", seed},
      {"feature_dim", p.feature_dim},
      {"train_dim", p.train_dim},
      {"assoc", p.assoc ? json::parse(assoc_to_json_string(*p.assoc)) : json()},
      {"encoder", json::parse(encoder_to_json_string(p.encoder))},
      {"aug_encoder",
       p.aug_encoder ? json::parse(encoder_to_json_string(*p.aug_encoder)) : json()},
      {"nb", p.nb ? json::parse(nb_to_json_string(*p.nb)) : json()},
      {"lr", p.lr ? json::parse(lr_to_json_string(*p.lr)) : json()},
  };
  return bundle.dump(2);
}

Pipeline model_from_json_string(const std::string& text) {
  json b;
  try {
    b = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("model bundle: ") + e.what());
  }
  try {
    if (b.at("format") != "cds-model" || b.at("version") != 1) {
      throw Error("unrecognized model bundle format");
    }
    Pipeline p;
    auto clf = parse_classifier(b.at("classifier").get<std::string>());
    if (!clf) throw Error("model bundle: unknown classifier");
    p.classifier = *clf;
    p.feature_config = parse_groups(b.at("groups").get<std::string>());
    p.easyadapt = b.at("easyadapt").get<bool>();
    p.feature_dim = b.at("feature_dim").get<std::size_t>();
    p.train_dim = b.at("train_dim").get<std::size_t>();
    if (!b.at("assoc").is_null()) p.assoc = assoc_from_json_string(b["assoc"].dump());
    p.encoder = encoder_from_json_string(b.at("encoder").dump());
    if (!b.at("aug_encoder").is_null()) {
      p.aug_encoder = encoder_from_json_string(b["aug_encoder"].dump());
    }
    if (!b.at("nb").is_null()) p.nb = nb_from_json_string(b["nb"].dump());
    if (!b.at("lr").is_null()) p.lr = lr_from_json_string(b["lr"].dump());
    if (p.classifier == ClassifierKind::NB && !p.nb) {
      throw Error("model bundle: classifier is nb but no nb parameters present");
    }
    if (p.classifier == ClassifierKind::LR && !p.lr) {
      throw Error("model bundle: classifier is lr but no lr parameters present");
    }
    if (p.easyadapt && !p.aug_encoder) {
      throw Error("model bundle: easyadapt model lacks its augmented encoder");
    }
    return p;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("model bundle: ") + e.what());
  }
}

int cmd_filter_tweets(const Opts& o) {
  require_flag(o.in_path, "--in");
  fs::path in = resolve(o.in_path);
  std::ifstream f(in);
  if (!f) throw IoError("cannot open " + in.string());

  Dataset d;
  std::map<std::string, long long> rejected;
  long long accepted = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(f, line)) {
    ++line_no;
    FilterResult r = filter_tweet(line);
    if (r.accepted()) {
      Instance inst;
      inst.id = "t" + std::to_string(line_no);
      inst.text = r.stripped_text;
      inst.domain = Domain::Twitter;
      inst.label = *r.label;
      inst.source_hashtag = r.source_hashtag;
      d.instances.push_back(std::move(inst));
      ++accepted;
    } else {
      ++rejected[std::string(to_string(r.reason))];
    }
  }
  if (f.bad()) throw IoError("read failed on " + in.string());

  if (o.out.empty()) {
    write_dataset_jsonl(std::cout, d);
  } else {
    auto out = open_out(fs::path(o.out));
    write_dataset_jsonl(out, d);
  }
  std::cerr << "accepted: " << accepted << "\n";
  for (const auto& [reason, n] : rejected) {
    std::cerr << "rejected " << reason << ": " << n << "\n";
  }
  return 0;
}

int cmd_fit_assoc(const Opts& o) {
  if (o.train_paths.empty()) throw Error("missing required option --train");
  std::vector<Instance> all;
  for (const auto& p : o.train_paths) {
    Dataset d = load_ds(p);
    all.insert(all.end(), d.instances.begin(), d.instances.end());
  }
  std::unordered_set<std::string> stops;
  if (!o.stopwords.empty()) stops = load_wordlist(resolve(o.stopwords));

  AssociationModel m = fit_associations(all, stops, o.per_group_k);
  const std::string text = assoc_to_json_string(m);
  if (o.out.empty()) {
    std::cout << text << "\n";
  } else {
    auto f = open_out(fs::path(o.out));
    f << text << "\n";
  }
  std::cerr << "instances: " << all.size() << "\n";
  for (const auto& g : m.boaw_groups) {
    std::cerr << "boaw " << to_string(g.domain) << "/" << to_string(g.label) << ": "
              << g.words.size() << " words\n";
  }
  for (const auto& g : m.bocw_groups) {
    std::cerr << "bocw " << to_string(g.domain) << "/" << to_string(g.label) << ": "
              << g.words.size() << " words\n";
  }
  return 0;
}

int cmd_extract(const Opts& o) {
  require_flag(o.data_path, "--data");
  require_flag(o.out, "--out");
  FeatureConfig cfg = parse_groups(o.groups);
  LoadedResources res = load_resources(o);
  std::optional<AssociationModel> assoc = load_assoc_file(o.assoc_path);

  FeatureExtractor extractor(cfg, res.liu ? &*res.liu : nullptr,
                             res.mpqa ? &*res.mpqa : nullptr,
                             res.afinn ? &*res.afinn : nullptr,
                             res.indicators ? &*res.indicators : nullptr,
                             res.ngrams ? &*res.ngrams : nullptr,
                             assoc ? &*assoc : nullptr);

  Dataset d = load_ds(o.data_path);
  std::vector<FeatureVector> rows;
  rows.reserve(d.size());
  for (const auto& inst : d.instances) rows.push_back(extractor.extract(inst));

  {
    auto f = open_out(fs::path(o.out));
    write_matrix_tsv(f, extractor.schema(), rows);
  }
  {
    auto f = open_out(fs::path(o.out + ".schema"));
    for (const auto& name : extractor.schema()) f << name << "\n";
  }
  std::cerr << "wrote " << rows.size() << " rows x " << extractor.schema().size()
            << " features\n";
  return 0;
}

int cmd_train(const Opts& o) {
  auto source = parse_train_source(o.scenario);
  if (!source) throw Error("unknown scenario '" + o.scenario + "'");
  auto clf = parse_classifier(o.classifier);
  if (!clf) throw Error("unknown classifier '" + o.classifier + "'");
  FeatureConfig cfg = parse_groups(o.groups);

  std::vector<Instance> train;
  auto append = [&train](const std::string& path) {
    Dataset d = load_ds(path);
    train.insert(train.end(), d.instances.begin(), d.instances.end());
  };
  switch (*source) {
    case TrainSource::TwitterOnly:
      require_flag(o.twitter_path, "--twitter");
      append(o.twitter_path);
      break;
    case TrainSource::AmazonOnly:
      require_flag(o.amazon_path, "--amazon");
      append(o.amazon_path);
      break;
    case TrainSource::Both:
    case TrainSource::EasyAdapt:
      require_flag(o.twitter_path, "--twitter");
      require_flag(o.amazon_path, "--amazon");
      append(o.twitter_path);
      append(o.amazon_path);
      break;
  }

  LoadedResources res = load_resources(o);
  std::optional<AssociationModel> fixed = load_assoc_file(o.assoc_path);
  Pipeline p = fit_pipeline(train, *source == TrainSource::EasyAdapt, *clf, cfg,
                            res.view(), {}, fixed ? &*fixed : nullptr);

  const std::string text = model_to_json_string(p, o.seed);
  if (o.out.empty()) {
    std::cout << text << "\n";
  } else {
    auto f = open_out(fs::path(o.out));
    f << text << "\n";
  }
  std::cerr << "trained " << to_string(p.classifier) << " on " << train.size()
            << " instances; feature_dim=" << p.feature_dim
            << " train_dim=" << p.train_dim << "\n";
  return 0;
}

int cmd_evaluate(const Opts& o) {
  require_flag(o.model_path, "--model");
  require_flag(o.data_path, "--data");
  Pipeline p = model_from_json_string(read_file(resolve(o.model_path)));
  LoadedResources res = load_resources(o);
  Dataset d = filter_domain(load_ds(o.data_path), o.test_domain);

  const auto preds = predict_pipeline(p, res.view(), d.instances);
  EvalReport r = score(preds, gold_labels(d.instances));
  r.scenario = "evaluate";
  r.config = p.feature_config.describe();
  r.seed = o.seed;
  r.feature_dim = p.feature_dim;
  r.train_dim = p.train_dim;

  write_report_rows(o, std::span<const EvalReport>(&r, 1));
  return 0;
}

int cmd_baseline(const Opts& o) {
  require_flag(o.data_path, "--data");
  const std::string kind = o.baseline.empty() ? "all" : o.baseline;
  Dataset d = filter_domain(load_ds(o.data_path), o.test_domain);

  EvalReport r;
  if (kind == "all") {
    r = baseline_all_sarcasm(d);
  } else if (kind == "random") {
    const double rate = o.rate >= 0.0 ? o.rate : positive_prior(d.instances);
    r = baseline_random(d, rate, o.seed);
  } else {
    throw Error("baseline must be 'all' or 'random'");
  }
  write_report_rows(o, std::span<const EvalReport>(&r, 1));
  return 0;
}

int cmd_experiment(const Opts& o) {
  require_flag(o.twitter_path, "--twitter");
  require_flag(o.amazon_path, "--amazon");
  require_flag(o.out, "--out");
  auto clf = parse_classifier(o.classifier);
  if (!clf) throw Error("unknown classifier '" + o.classifier + "'");
  if (!o.baseline.empty() && o.baseline != "all" && o.baseline != "random" &&
      o.baseline != "only") {
    throw Error("baseline must be 'all', 'random', or 'only'");
  }

  std::vector<FeatureConfig> configs;
  if (o.baseline.empty()) {
    std::vector<std::string> rows =
        o.group_rows.empty() ? std::vector<std::string>{o.groups} : o.group_rows;
    for (const auto& row : rows) configs.push_back(parse_groups(row));
  }

  Dataset twitter = split_dataset(load_ds(o.twitter_path), kTrainFraction, o.seed);
  Dataset amazon = split_dataset(load_ds(o.amazon_path), kTrainFraction, o.seed);
  std::cerr << "twitter: " << twitter.side(SplitSide::Train).size() << " train / "
            << twitter.side(SplitSide::Test).size() << " test\n";
  std::cerr << "amazon: " << amazon.side(SplitSide::Train).size() << " train / "
            << amazon.side(SplitSide::Test).size() << " test\n";

  LoadedResources res = load_resources(o);
  MatrixResult m = run_matrix(twitter, amazon, configs, *clf, res.view(), o.seed);

  std::vector<EvalReport> selected;
  std::string pretty;
  if (o.baseline.empty() || o.baseline == "only") {
    selected = m.flat();
    if (o.baseline == "only") {
      selected.resize(4);  // flat() puts the four baseline rows first
    }
    pretty = pretty_matrix(m);
  } else if (o.baseline == "all") {
    selected = {m.all_sarcasm_amazon, m.all_sarcasm_twitter};
  } else {
    selected = {m.random_amazon, m.random_twitter};
  }
  if (pretty.empty()) {
    std::ostringstream buf;
    for (const auto& r : selected) {
      char cell[64];
      std::snprintf(cell, sizeof(cell), "%.3f/%.3f/%.3f", r.precision, r.recall, r.f1);
      buf << r.scenario << "  " << cell << "\n";
    }
    pretty = buf.str();
  }

  fs::path out_dir(o.out);
  fs::create_directories(out_dir);
  {
    auto f = open_out(out_dir / "report.tsv");
    write_reports_tsv(f, selected);
  }
  {
    auto f = open_out(out_dir / "report.json");
    write_reports_json(f, selected);
  }
  {
    auto f = open_out(out_dir / "report.txt");
    f << pretty;
  }
  std::cout << pretty;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;

  // The config file seeds defaults before parsing, so explicit flags win.
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    if (!path.empty()) {
      try {
        apply_config(json::parse(read_file(resolve(path))), o);
      } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 1;
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }

  CLI::App app{"cross-domain sarcasm detection toolkit", "cds"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", o.config_path, "JSON config file; flags override it");
    c->add_option("--seed", o.seed, "random seed (default 13)");
  };
  auto add_resource_flags = [&](CLI::App* c) {
    c->add_option("--liu-pos", o.liu_pos, "positive word list");
    c->add_option("--liu-neg", o.liu_neg, "negative word list");
    c->add_option("--mpqa", o.mpqa, "subjectivity lexicon TSV");
    c->add_option("--afinn", o.afinn, "scored lexicon TSV");
    c->add_option("--indicators", o.indicators, "indicator list directory");
    c->add_option("--ngrams", o.ngrams, "ngram counts TSV");
    c->add_option("--stopwords", o.stopwords, "stopword list");
    c->add_flag("--strict-lexicons", o.strict_lexicons,
                "fail on conflicting polarity entries");
  };

  auto* ft = app.add_subcommand("filter-tweets",
                                "filter raw tweet lines into a labeled dataset");
  add_common(ft);
  ft->add_option("--in", o.in_path, "raw tweets, one per line");
  ft->add_option("--out", o.out, "output JSONL path (default stdout)");

  auto* fa = app.add_subcommand("fit-assoc", "fit bag-of-words vocabularies");
  add_common(fa);
  fa->add_option("--train", o.train_paths, "training dataset(s)");
  fa->add_option("--stopwords", o.stopwords, "stopword list");
  fa->add_option("--k", o.per_group_k, "words kept per group (default 50)");
  fa->add_option("--out", o.out, "output JSON path (default stdout)");

  auto* ex = app.add_subcommand("extract", "write a feature matrix");
  add_common(ex);
  ex->add_option("--data", o.data_path, "dataset to featurize");
  ex->add_option("--groups", o.groups, "feature groups (default all)");
  ex->add_option("--assoc", o.assoc_path, "fitted association JSON");
  ex->add_option("--out", o.out, "matrix TSV path; schema sidecar gets .schema");
  add_resource_flags(ex);

  auto* tr = app.add_subcommand("train", "train a classifier bundle");
  add_common(tr);
  tr->add_option("--twitter", o.twitter_path, "twitter training dataset");
  tr->add_option("--amazon", o.amazon_path, "amazon training dataset");
  tr->add_option("--scenario", o.scenario,
                 "training source: twitter|amazon|both|easyadapt (default both)");
  tr->add_option("--groups", o.groups, "feature groups (default all)");
  tr->add_option("--classifier", o.classifier, "nb|lr (default nb)");
  tr->add_option("--assoc", o.assoc_path, "reuse a fitted association JSON");
  tr->add_option("--out", o.out, "model bundle path (default stdout)");
  add_resource_flags(tr);

  auto* ev = app.add_subcommand("evaluate", "score a trained bundle on a dataset");
  add_common(ev);
  ev->add_option("--model", o.model_path, "model bundle JSON");
  ev->add_option("--data", o.data_path, "evaluation dataset");
  ev->add_option("--test-domain", o.test_domain, "score only twitter|amazon instances");
  ev->add_option("--out", o.out, "report TSV path (default stdout)");
  add_resource_flags(ev);

  auto* xp = app.add_subcommand("experiment", "run the full scenario matrix");
  add_common(xp);
  xp->add_option("--twitter", o.twitter_path, "twitter dataset (split 80/20)");
  xp->add_option("--amazon", o.amazon_path, "amazon dataset (split 80/20)");
  xp->add_option("--groups", o.group_rows,
                 "feature groups; repeat for multiple report rows");
  xp->add_option("--classifier", o.classifier, "nb|lr (default nb)");
  xp->add_option("--baseline", o.baseline,
                 "all|random|only: report just baseline rows");
  xp->add_option("--out", o.out, "output directory for report files");
  add_resource_flags(xp);

  auto* bl = app.add_subcommand("baseline", "score a trivial baseline");
  add_common(bl);
  bl->add_option("--data", o.data_path, "evaluation dataset");
  bl->add_option("--test-domain", o.test_domain, "score only twitter|amazon instances");
  bl->add_option("--baseline", o.baseline, "all|random (default all)");
  bl->add_option("--rate", o.rate, "random positive rate (default: dataset prior)");
  bl->add_option("--out", o.out, "report TSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (ft->parsed()) return cmd_filter_tweets(o);
    if (fa->parsed()) return cmd_fit_assoc(o);
    if (ex->parsed()) return cmd_extract(o);
    if (tr->parsed()) return cmd_train(o);
    if (ev->parsed()) return cmd_evaluate(o);
    if (xp->parsed()) return cmd_experiment(o);
    if (bl->parsed()) return cmd_baseline(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "cds/corpus.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "cds/errors.hpp"
#include "cds/util.hpp"

namespace cds {

using nlohmann::json;

const std::array<std::string_view, 7> kLabelHashtags = {
    "#sarcasm", "#happiness", "#sadness", "#anger",
    "#surprise", "#fear", "#disgust"};

std::string_view to_string(Domain d) {
  return d == Domain::Twitter ? "twitter" : "amazon";
}

std::string_view to_string(Label l) {
  return l == Label::Sarcastic ? "sarcastic" : "non_sarcastic";
}

Domain parse_domain(std::string_view s) {
  if (s == "twitter") return Domain::Twitter;
  if (s == "amazon") return Domain::Amazon;
  throw Error("unknown domain: " + std::string(s));
}

Label parse_label(std::string_view s) {
  if (s == "sarcastic") return Label::Sarcastic;
  if (s == "non_sarcastic") return Label::NonSarcastic;
  throw Error("unknown label: " + std::string(s));
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::EmptyText: return "empty_text";
    case RejectReason::Retweet: return "retweet";
    case RejectReason::Reply: return "reply";
    case RejectReason::ContainsLink: return "contains_link";
    case RejectReason::NoLabelHashtag: return "no_label_hashtag";
    case RejectReason::MultipleLabelHashtags: return "multiple_label_hashtags";
    case RejectReason::LabelHashtagNotTrailing: return "label_hashtag_not_trailing";
  }
  return "unknown";
}

std::vector<Instance> Dataset::side(SplitSide s) const {
  std::vector<Instance> out;
  if (!split) return out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if ((*split)[i] == s) out.push_back(instances[i]);
  }
  return out;
}

DatasetFormat format_from_path(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  if (ext == ".tsv") return DatasetFormat::Tsv;
  return DatasetFormat::Jsonl;
}

namespace {

void check_star_rating(const Instance& inst, std::size_t line_no) {
  if (!inst.star_rating) return;
  if (inst.domain != Domain::Amazon)
    throw ParseError(line_no, "star_rating on non-amazon instance");
  if (*inst.star_rating < 1 || *inst.star_rating > 5)
    throw ParseError(line_no, "star_rating outside 1..5");
}

Instance parse_jsonl_row(const std::string& line, std::size_t line_no) {
  json row;
  try {
    row = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(line_no, e.what());
  }
  if (!row.is_object()) throw ParseError(line_no, "row is not a JSON object");
  for (const char* key : {"id", "text", "domain", "label"}) {
    if (!row.contains(key))
      throw ParseError(line_no, std::string("missing field `") + key + "`");
  }
  Instance inst;
  try {
    inst.id = row.at("id").get<std::string>();
    inst.text = row.at("text").get<std::string>();
    inst.domain = parse_domain(row.at("domain").get<std::string>());
    inst.label = parse_label(row.at("label").get<std::string>());
    if (row.contains("star_rating") && !row.at("star_rating").is_null())
      inst.star_rating = row.at("star_rating").get<int>();
    if (row.contains("source_hashtag") && !row.at("source_hashtag").is_null())
      inst.source_hashtag = row.at("source_hashtag").get<std::string>();
  } catch (const Error&) {
    throw ParseError(line_no, "bad domain or label value");
  } catch (const json::exception& e) {
    throw ParseError(line_no, e.what());
  }
  if (inst.id.empty()) throw ParseError(line_no, "empty id");
  check_star_rating(inst, line_no);
  return inst;
}

std::string unescape_tsv_text(std::string_view raw, std::size_t line_no) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '\\') {
      out += raw[i];
      continue;
    }
    if (i + 1 >= raw.size()) throw ParseError(line_no, "dangling backslash in text");
    ++i;
    switch (raw[i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case '\\': out += '\\'; break;
      default:
        out += '\\';
        out += raw[i];
    }
  }
  return out;
}

Instance parse_tsv_row(std::string_view line, std::size_t line_no) {
  auto cols = split_char(line, '\t');
  if (cols.size() != 5)
    throw ParseError(line_no, "expected 5 tab-separated columns, got " +
                                  std::to_string(cols.size()));
  Instance inst;
  inst.id = std::string(cols[0]);
  if (inst.id.empty()) throw ParseError(line_no, "empty id");
  try {
    inst.domain = parse_domain(cols[1]);
    inst.label = parse_label(cols[2]);
  } catch (const Error&) {
    throw ParseError(line_no, "bad domain or label value");
  }
  if (!cols[3].empty()) {
    int stars = 0;
    auto [ptr, ec] = std::from_chars(cols[3].data(), cols[3].data() + cols[3].size(), stars);
    if (ec != std::errc() || ptr != cols[3].data() + cols[3].size())
      throw ParseError(line_no, "bad star_rating");
    inst.star_rating = stars;
  }
  inst.text = unescape_tsv_text(cols[4], line_no);
  check_star_rating(inst, line_no);
  return inst;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());
  Dataset d;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Instance inst = format == DatasetFormat::Jsonl ? parse_jsonl_row(line, line_no)
                                                   : parse_tsv_row(line, line_no);
    if (!seen_ids.insert(inst.id).second) throw DuplicateIdError(inst.id);
    d.instances.push_back(std::move(inst));
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  return d;
}

void write_dataset_jsonl(std::ostream& out, const Dataset& d) {
  for (const auto& inst : d.instances) {
    json row;
    row["id"] = inst.id;
    row["text"] = inst.text;
    row["domain"] = std::string(to_string(inst.domain));
    row["label"] = std::string(to_string(inst.label));
    if (inst.star_rating) row["star_rating"] = *inst.star_rating;
    if (inst.source_hashtag) row["source_hashtag"] = *inst.source_hashtag;
    out << row.dump() << '\n';
  }
}

Dataset split_dataset(const Dataset& d, double train_fraction, std::uint64_t seed) {
  if (d.empty()) throw EmptyDatasetError();
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train_fraction must lie in (0,1)");

  // Indices per label, in dataset order.
  std::array<std::vector<std::size_t>, 2> groups;
  for (std::size_t i = 0; i < d.size(); ++i) {
    groups[d.instances[i].label == Label::Sarcastic ? 0 : 1].push_back(i);
  }

  const std::size_t n = d.size();
  const auto total_train =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_fraction));

  // Largest-remainder allocation keeps each label's train share within one
  // instance of the global fraction while the totals add up exactly.
  std::array<std::size_t, 2> take{};
  std::array<double, 2> remainder{};
  std::size_t allocated = 0;
  for (int g = 0; g < 2; ++g) {
    double exact = static_cast<double>(groups[g].size()) * train_fraction;
    take[g] = static_cast<std::size_t>(exact);
    remainder[g] = exact - static_cast<double>(take[g]);
    allocated += take[g];
  }
  while (allocated < total_train) {
    int g = remainder[0] >= remainder[1] ? 0 : 1;
    if (take[g] >= groups[g].size()) g = 1 - g;
    ++take[g];
    remainder[g] = -1.0;
    ++allocated;
  }

  Rng rng(seed);
  std::vector<SplitSide> assignment(n, SplitSide::Test);
  for (int g = 0; g < 2; ++g) {
    auto idx = groups[g];
    rng.shuffle(idx);
    for (std::size_t i = 0; i < take[g] && i < idx.size(); ++i) {
      assignment[idx[i]] = SplitSide::Train;
    }
  }

  Dataset out = d;
  out.split = std::move(assignment);
  return out;
}

namespace {

bool is_hashtag_token(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != '#') return false;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (is_ascii_alnum(static_cast<unsigned char>(tok[i]))) return true;
  }
  return false;
}

// Matches a label hashtag allowing trailing punctuation ("#sarcasm." counts).
// Returns the canonical tag on a match.
std::optional<std::string_view> match_label_hashtag(std::string_view tok) {
  std::string low = to_lower(tok);
  std::string_view v = low;
  while (!v.empty() && is_ascii_punct(static_cast<unsigned char>(v.back())) && v.back() != '#')
    v.remove_suffix(1);
  for (auto tag : kLabelHashtags) {
    if (v == tag) return tag;
  }
  return std::nullopt;
}

std::size_t trailing_run_start(const std::vector<std::string>& tokens) {
  std::size_t start = tokens.size();
  while (start > 0 && is_hashtag_token(tokens[start - 1])) --start;
  return start;
}

}  // namespace

std::string strip_trailing_hashtag_run(std::string_view text) {
  auto tokens = split_whitespace(text);
  std::size_t run_start = trailing_run_start(tokens);
  tokens.resize(run_start);
  return join(tokens, " ");
}

FilterResult filter_tweet(std::string_view raw) {
  std::string_view body = trim(raw);
  if (body.empty()) return FilterResult::reject(RejectReason::EmptyText);
  if (body.substr(0, 3) == "RT ") return FilterResult::reject(RejectReason::Retweet);
  if (body.front() == '@') return FilterResult::reject(RejectReason::Reply);

  auto tokens = split_whitespace(body);
  for (const auto& tok : tokens) {
    std::string low = to_lower(tok);
    if (low.starts_with("http://") || low.starts_with("https://") || low.starts_with("www."))
      return FilterResult::reject(RejectReason::ContainsLink);
  }

  std::size_t run_start = trailing_run_start(tokens);
  std::size_t hits = 0;
  std::size_t hit_pos = 0;
  std::string_view hit_tag;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (auto tag = match_label_hashtag(tokens[i])) {
      ++hits;
      hit_pos = i;
      hit_tag = *tag;
    }
  }
  if (hits == 0) return FilterResult::reject(RejectReason::NoLabelHashtag);
  if (hits > 1) return FilterResult::reject(RejectReason::MultipleLabelHashtags);
  if (hit_pos < run_start) return FilterResult::reject(RejectReason::LabelHashtagNotTrailing);

  tokens.resize(run_start);
  Label label = hit_tag == "#sarcasm" ? Label::Sarcastic : Label::NonSarcastic;
  return FilterResult::accept(label, join(tokens, " "), std::string(hit_tag));
}

}  // namespace cds

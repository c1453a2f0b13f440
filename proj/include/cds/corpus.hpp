#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

enum class Domain { Twitter, Amazon };
enum class Label { Sarcastic, NonSarcastic };
enum class SplitSide { Train, Test };

std::string_view to_string(Domain d);
std::string_view to_string(Label l);
Domain parse_domain(std::string_view s);
Label parse_label(std::string_view s);

// Class index convention used throughout: 0 = Sarcastic, 1 = NonSarcastic.
constexpr std::size_t label_index(Label l) { return l == Label::Sarcastic ? 0 : 1; }
constexpr Label label_from_index(std::size_t i) {
  return i == 0 ? Label::Sarcastic : Label::NonSarcastic;
}

// One labeled short text. star_rating is Amazon-only metadata.
struct Instance {
  std::string id;
  std::string text;
  Domain domain = Domain::Twitter;
  Label label = Label::NonSarcastic;
  std::optional<int> star_rating;
  std::optional<std::string> source_hashtag;
};

struct Dataset {
  std::vector<Instance> instances;
  // Parallel to instances when present; every instance lands on exactly one side.
  std::optional<std::vector<SplitSide>> split;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
  std::vector<Instance> side(SplitSide s) const;
};

enum class DatasetFormat { Jsonl, Tsv };

DatasetFormat format_from_path(const std::filesystem::path& p);
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format);
void write_dataset_jsonl(std::ostream& out, const Dataset& d);

// Stratified by label; deterministic per seed. Train size is
// round(n * train_fraction), split across labels by largest remainder.
Dataset split_dataset(const Dataset& d, double train_fraction, std::uint64_t seed);

// The seven label-bearing hashtags; #sarcasm marks the positive class,
// the six emotion tags the negative class.
extern const std::array<std::string_view, 7> kLabelHashtags;

enum class RejectReason {
  EmptyText,
  Retweet,
  Reply,
  ContainsLink,
  NoLabelHashtag,
  MultipleLabelHashtags,
  LabelHashtagNotTrailing,
};

std::string_view to_string(RejectReason r);

struct FilterResult {
  std::optional<Label> label;  // set iff accepted
  std::string stripped_text;
  std::string source_hashtag;  // canonical lowercase tag, e.g. "#sarcasm"
  RejectReason reason = RejectReason::EmptyText;

  bool accepted() const { return label.has_value(); }

  static FilterResult accept(Label l, std::string text, std::string tag) {
    FilterResult r;
    r.label = l;
    r.stripped_text = std::move(text);
    r.source_hashtag = std::move(tag);
    return r;
  }
  static FilterResult reject(RejectReason why) {
    FilterResult r;
    r.reason = why;
    return r;
  }
};

// Total function: every raw line is either accepted (label + stripped text)
// or rejected with a machine-readable reason.
FilterResult filter_tweet(std::string_view raw);

// Removes the maximal all-hashtag token suffix. Idempotent.
std::string strip_trailing_hashtag_run(std::string_view text);

}  // namespace cds

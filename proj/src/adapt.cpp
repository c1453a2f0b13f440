#include "cds/adapt.hpp"

#include <stdexcept>

#include "cds/errors.hpp"

namespace cds {

namespace {

FeatureValue zero_like(const FeatureValue& v) {
  // Zero blocks are structural: a binary slot zeroes to Binary so column
  // types stay stable, everything else (Real or Missing) to Real 0.
  if (v.kind == FeatureValue::Kind::Binary) return FeatureValue::binary(false);
  return FeatureValue::real(0.0);
}

FeatureVector zero_vector(const FeatureVector& v) {
  FeatureVector out;
  out.names = v.names;
  out.values.reserve(v.values.size());
  for (const auto& val : v.values) out.values.push_back(zero_like(val));
  return out;
}

}  // namespace

AugmentedVector augment(const FeatureVector& v, Origin origin) {
  for (const auto& val : v.values) {
    if (val.kind == FeatureValue::Kind::Categorical)
      throw std::invalid_argument(
          "categorical features must be one-hot expanded before augmenting");
  }
  AugmentedVector out;
  out.general = v;
  if (origin == Origin::Source) {
    out.source_copy = v;
    out.target_copy = zero_vector(v);
  } else {
    out.source_copy = zero_vector(v);
    out.target_copy = v;
  }
  return out;
}

std::vector<std::string> augmented_schema(const std::vector<std::string>& schema) {
  std::vector<std::string> out;
  out.reserve(schema.size() * 3);
  for (const auto& n : schema) out.push_back("g:" + n);
  for (const auto& n : schema) out.push_back("s:" + n);
  for (const auto& n : schema) out.push_back("t:" + n);
  return out;
}

FeatureVector AugmentedVector::flat() const {
  FeatureVector out;
  out.names = augmented_schema(general.names);
  out.values.reserve(general.values.size() * 3);
  out.values.insert(out.values.end(), general.values.begin(), general.values.end());
  out.values.insert(out.values.end(), source_copy.values.begin(), source_copy.values.end());
  out.values.insert(out.values.end(), target_copy.values.begin(), target_copy.values.end());
  return out;
}

std::vector<AugmentedVector> augment_dataset(
    const std::vector<std::pair<FeatureVector, Origin>>& rows) {
  std::vector<AugmentedVector> out;
  out.reserve(rows.size());
  for (const auto& [v, origin] : rows) {
    if (!out.empty() && v.names != rows.front().first.names)
      throw SchemaMismatchError("augment_dataset inputs disagree on schema");
    out.push_back(augment(v, origin));
  }
  return out;
}

}  // namespace cds

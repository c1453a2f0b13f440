#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cds/features.hpp"

namespace cds {

enum class Origin { Source, Target };

// Feature-space augmentation: a general copy plus one active domain copy,
// the other domain block zeroed. Total width 3F.
struct AugmentedVector {
  FeatureVector general;
  FeatureVector source_copy;
  FeatureVector target_copy;

  // Single 3F vector with block-prefixed names (g:, s:, t:).
  FeatureVector flat() const;
};

// Source -> <v, v, 0>; Target -> <v, 0, v>. Missing values stay Missing in
// the copied blocks; zero blocks hold literal zeros. Categorical values must
// be one-hot expanded before augmenting (throws std::invalid_argument).
AugmentedVector augment(const FeatureVector& v, Origin origin);

std::vector<std::string> augmented_schema(const std::vector<std::string>& schema);

// Order-preserving; throws SchemaMismatchError when inputs disagree on schema.
std::vector<AugmentedVector> augment_dataset(
    const std::vector<std::pair<FeatureVector, Origin>>& rows);

}  // namespace cds

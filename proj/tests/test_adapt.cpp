#include <doctest.h>

#include "cds/adapt.hpp"
#include "cds/errors.hpp"

using namespace cds;

namespace {

FeatureVector fv2(FeatureValue a, FeatureValue b) {
  FeatureVector v;
  v.names = {"x", "y"};
  v.values = {std::move(a), std::move(b)};
  return v;
}

}  // namespace

TEST_CASE("source augmentation copies into the source block") {
  auto v = fv2(FeatureValue::real(1), FeatureValue::real(2));
  auto a = augment(v, Origin::Source);
  CHECK(a.general == v);
  CHECK(a.source_copy.values == v.values);
  CHECK(a.target_copy.values ==
        std::vector<FeatureValue>{FeatureValue::real(0), FeatureValue::real(0)});

  auto flat = a.flat();
  CHECK(flat.names == std::vector<std::string>{"g:x", "g:y", "s:x", "s:y", "t:x", "t:y"});
  CHECK(flat.values == std::vector<FeatureValue>{
                           FeatureValue::real(1), FeatureValue::real(2),
                           FeatureValue::real(1), FeatureValue::real(2),
                           FeatureValue::real(0), FeatureValue::real(0)});
}

TEST_CASE("target augmentation copies into the target block") {
  auto v = fv2(FeatureValue::real(1), FeatureValue::real(2));
  auto a = augment(v, Origin::Target);
  CHECK(a.general == v);
  CHECK(a.target_copy.values == v.values);
  CHECK(a.source_copy.values ==
        std::vector<FeatureValue>{FeatureValue::real(0), FeatureValue::real(0)});
  CHECK(a.flat().values == std::vector<FeatureValue>{
                               FeatureValue::real(1), FeatureValue::real(2),
                               FeatureValue::real(0), FeatureValue::real(0),
                               FeatureValue::real(1), FeatureValue::real(2)});
}

TEST_CASE("missing values stay missing in copies and zero out in dead blocks") {
  auto v = fv2(FeatureValue::missing(), FeatureValue::real(3));
  auto a = augment(v, Origin::Source);
  CHECK(a.general.values[0].is_missing());
  CHECK(a.source_copy.values[0].is_missing());
  CHECK(a.source_copy.values[1] == FeatureValue::real(3));
  CHECK(a.target_copy.values[0] == FeatureValue::real(0));
  CHECK(a.target_copy.values[1] == FeatureValue::real(0));
}

TEST_CASE("binary columns keep their kind in zero blocks") {
  auto v = fv2(FeatureValue::binary(true), FeatureValue::binary(false));
  auto a = augment(v, Origin::Target);
  CHECK(a.source_copy.values ==
        std::vector<FeatureValue>{FeatureValue::binary(false), FeatureValue::binary(false)});
  CHECK(a.target_copy.values == v.values);
}

TEST_CASE("categorical values must be expanded before augmenting") {
  auto v = fv2(FeatureValue::categorical("tok"), FeatureValue::real(1));
  CHECK_THROWS_AS(augment(v, Origin::Source), std::invalid_argument);
}

TEST_CASE("augmented schema is three prefixed blocks") {
  auto s = augmented_schema({"x", "y"});
  CHECK(s == std::vector<std::string>{"g:x", "g:y", "s:x", "s:y", "t:x", "t:y"});
}

TEST_CASE("augment_dataset maps in order and checks schemas") {
  auto a = fv2(FeatureValue::real(1), FeatureValue::real(2));
  auto b = fv2(FeatureValue::real(3), FeatureValue::real(4));
  auto c = fv2(FeatureValue::real(5), FeatureValue::real(6));

  auto out = augment_dataset({{a, Origin::Source}, {b, Origin::Source}, {c, Origin::Target}});
  REQUIRE(out.size() == 3);
  CHECK(out[0].general == a);
  CHECK(out[1].general == b);
  CHECK(out[2].general == c);
  CHECK(out[2].target_copy.values == c.values);
  for (const auto& av : out) CHECK(av.flat().size() == 6);

  CHECK(augment_dataset({}).empty());

  FeatureVector other;
  other.names = {"x", "z"};
  other.values = {FeatureValue::real(1), FeatureValue::real(2)};
  CHECK_THROWS_AS(augment_dataset({{a, Origin::Source}, {other, Origin::Target}}),
                  SchemaMismatchError);
}

TEST_CASE("general block recovers the input exactly") {
  for (auto origin : {Origin::Source, Origin::Target}) {
    auto v = fv2(FeatureValue::real(-2.5), FeatureValue::missing());
    auto flat = augment(v, origin).flat();
    FeatureVector general;
    general.names = {"x", "y"};
    general.values = {flat.values[0], flat.values[1]};
    CHECK(general == v);
  }
}

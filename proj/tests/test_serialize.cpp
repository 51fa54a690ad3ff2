#include <gtest/gtest.h>

#include "osg/serialize.hpp"
#include "table_cache.hpp"

using osg::DeformationMode;
using osg::DeformationSpec;
using osg::FormatError;
using osg::json;
using osg::PartitionIndex;
using osg::make_rational;
using testing_support::table;

class TableRoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(TableRoundTrip, BitIdentical) {
  const auto& t = table(GetParam());
  const json doc = osg::table_to_json(t);
  const std::string text = doc.dump(1);
  const auto loaded = osg::table_from_json(json::parse(text), true);
  EXPECT_TRUE(loaded == t);
  EXPECT_EQ(osg::table_to_json(loaded).dump(1), text);
}

INSTANTIATE_TEST_SUITE_P(Ranks, TableRoundTrip, ::testing::Values(3, 4));

TEST(TableLoad, RejectsTamperedCoefficient) {
  json doc = osg::table_to_json(table(3));
  // (1,0)*(1,0) = tau[2,0] + tau[1,1]; bump one coefficient.
  for (auto& entry : doc["products"]) {
    if (entry["lambda"] == json::array({1, 0}) && entry["mu"] == json::array({1, 0})) entry["terms"][0]["coeff"] = "2";
  }
  EXPECT_NO_THROW(osg::table_from_json(doc, false));
  EXPECT_THROW(osg::table_from_json(doc, true), osg::TableInvariantError);
}

TEST(TableLoad, RejectsDeepTamper) {
  json doc = osg::table_to_json(table(3));
  auto& last = doc["products"].back();  // top * top
  last["terms"].push_back({{"nu", {0, 0}}, {"d", 0}, {"coeff", "1"}});
  EXPECT_THROW(osg::table_from_json(doc, true), osg::TableInvariantError);
}

TEST(TableLoad, RejectsMalformed) {
  const json good = osg::table_to_json(table(3));
  json doc = good;
  doc["version"] = 99;
  EXPECT_THROW(osg::table_from_json(doc), FormatError);
  doc = good;
  doc["basis"][0] = {1, 0};
  EXPECT_THROW(osg::table_from_json(doc), FormatError);
  doc = good;
  doc["products"].erase(doc["products"].begin());
  EXPECT_THROW(osg::table_from_json(doc), FormatError);
  doc = good;
  doc["products"][0]["terms"][0]["coeff"] = "1/2";
  EXPECT_THROW(osg::table_from_json(doc), FormatError);
  doc = good;
  doc["products"][0]["terms"][0]["coeff"] = 1;
  EXPECT_THROW(osg::table_from_json(doc), FormatError);
  doc = good;
  doc.erase("generators");
  EXPECT_THROW(osg::table_from_json(doc), FormatError);
}

TEST(SpecJson, PerPairRoundTrip) {
  DeformationSpec spec(3, DeformationMode::kPerPair);
  spec.set({5, 1}, {0, 0}, make_rational(-1, 2));
  spec.set({5, 2}, {1, 0}, 2);
  const auto back = osg::spec_from_json(osg::spec_to_json(spec));
  EXPECT_TRUE(back == spec);
  EXPECT_EQ(osg::spec_to_json(spec)["entries"][0]["a"], "-1/2");
}

TEST(SpecJson, PerMuRoundTrip) {
  DeformationSpec spec(4, DeformationMode::kPerMu);
  spec.set_shared({1, 0}, 3);
  EXPECT_TRUE(osg::spec_from_json(osg::spec_to_json(spec)) == spec);
}

TEST(SpecJson, Rejections) {
  EXPECT_THROW(osg::spec_from_json(json::parse(R"({"n":3,"mode":"per-pair","entries":[{"lambda":[5,1],"mu":[0,0],"a":"1/0"}]})")),
               FormatError);
  EXPECT_THROW(osg::spec_from_json(json::parse(R"({"n":3,"mode":"per-pair","entries":[{"lambda":[5,1],"mu":[0,0],"a":0.5}]})")),
               FormatError);
  EXPECT_THROW(osg::spec_from_json(json::parse(
                   R"({"n":3,"entries":[{"lambda":[5,1],"mu":[0,0],"a":"1"},{"lambda":[5,1],"mu":[0,0],"a":"2"}]})")),
               FormatError);
  EXPECT_THROW(osg::spec_from_json(json::parse(R"({"n":3,"entries":[{"lambda":[5,1],"mu":[0,0],"a":"1","j":2}]})")),
               osg::MalformedDeformation);
  EXPECT_THROW(osg::spec_from_json(json::parse(R"({"n":3,"entries":[{"lambda":[5,1],"mu":[1,0],"a":"1"}]})")),
               osg::MalformedDeformation);
  EXPECT_THROW(osg::spec_from_json(json::parse(R"({"n":3,"mode":"sideways","entries":[]})")), std::invalid_argument);
}

TEST(CertificateJson, RoundTripVerifies) {
  for (auto mode : {DeformationMode::kPerPair, DeformationMode::kPerMu}) {
    const auto sys = osg::build_constraints(table(3), mode);
    const auto cert = osg::certify_uniqueness(sys);
    const json doc = osg::certificate_to_json(sys, cert);
    auto [sys2, cert2] = osg::certificate_from_json(json::parse(doc.dump()));
    EXPECT_EQ(sys2.constraints, sys.constraints);
    EXPECT_EQ(sys2.unknowns.size(), sys.unknowns.size());
    EXPECT_TRUE(osg::verify_certificate(sys2, cert2));
    EXPECT_EQ(doc["conclusion"], "UniqueZero");
  }
}

TEST(CertificateJson, TamperedWeightFails) {
  const auto sys = osg::build_constraints(table(3), DeformationMode::kPerPair);
  json doc = osg::certificate_to_json(sys, osg::certify_uniqueness(sys));
  doc["bounds"][0]["weights"][0]["weight"] = "7";
  auto [sys2, cert2] = osg::certificate_from_json(doc);
  EXPECT_FALSE(osg::verify_certificate(sys2, cert2));
}

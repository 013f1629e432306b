#include "sensfeat/data_model.h"

#include <sstream>

#include <gtest/gtest.h>

#include "helpers.h"
#include "sensfeat/error.h"

namespace sensfeat {
namespace {

using testing::dataset_from;

constexpr const char* kToySchema = R"({
  "columns": [
    {"name": "gender", "kind": "categorical", "categories": ["male", "female"]},
    {"name": "ncrimes", "kind": "numeric"},
    {"name": "age", "kind": "categorical", "categories": ["<30", "30-60", ">60"]}
  ],
  "label": {"name": "y", "positive": "1", "negative": "-1"}
})";

constexpr const char* kToyCsv =
    "gender,ncrimes,age,y\n"
    "male,2,30-60,1\n"
    "female,0,<30,-1\n"
    "female,1,>60,1\n";

TEST(DataModel, ToyDatasetLoads) {
  const Dataset ds = dataset_from(kToyCsv, kToySchema);
  EXPECT_EQ(ds.rows(), 3u);
  EXPECT_EQ(ds.features(), 3u);
  EXPECT_EQ(ds.labels, (std::vector<int>{1, -1, 1}));
  EXPECT_EQ(ds.dropped_rows, 0u);
}

TEST(DataModel, ToyEncodesToExtendedMatrix) {
  const EncodedDataset e = encode(dataset_from(kToyCsv, kToySchema));
  Eigen::MatrixXd expected(3, 6);
  expected << 1, 0, 2, 0, 1, 0,  //
      0, 1, 0, 1, 0, 0,          //
      0, 1, 1, 0, 0, 1;
  EXPECT_EQ(e.x, expected);
  std::vector<std::string> names;
  for (const auto& s : e.subfeatures) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"gender_male", "gender_female", "ncrimes", "age_<30",
                                             "age_30-60", "age_>60"}));
  ASSERT_EQ(e.parents.size(), 3u);
  EXPECT_EQ(e.parents[2].columns, (std::vector<std::size_t>{3, 4, 5}));
  EXPECT_FALSE(e.subfeatures[2].category.has_value());
  EXPECT_EQ(e.subfeatures[4].category, 1u);
}

TEST(DataModel, MissingCellDropsRow) {
  const std::string csv = std::string(kToyCsv) + "male,,<30,1\nfemale,3,<30,-1\n";
  const Dataset ds = dataset_from(csv, kToySchema);
  EXPECT_EQ(ds.rows(), 4u);
  EXPECT_EQ(ds.dropped_rows, 1u);
}

TEST(DataModel, CustomMissingTokens) {
  const std::string schema = R"({"columns": [{"name": "a", "kind": "numeric"}],
    "label": {"name": "y", "positive": "1"}, "missing_values": ["NULL"]})";
  const Dataset ds = dataset_from("a,y\n1,1\nNULL,0\n2,0\n", schema);
  EXPECT_EQ(ds.rows(), 2u);
  EXPECT_EQ(ds.dropped_rows, 1u);
}

TEST(DataModel, Errors) {
  // unknown column
  EXPECT_THROW(dataset_from("gender,ncrimes,y\nmale,1,1\nfemale,2,-1\n", kToySchema), ConfigError);
  // undeclared category
  EXPECT_THROW(dataset_from("gender,ncrimes,age,y\nmale,1,<30,1\nother,2,<30,-1\n", kToySchema),
               DataError);
  // label not mappable
  EXPECT_THROW(dataset_from("gender,ncrimes,age,y\nmale,1,<30,1\nmale,2,<30,0\n", kToySchema),
               DataError);
  // fewer than two surviving rows
  EXPECT_THROW(dataset_from("gender,ncrimes,age,y\nmale,1,<30,1\nmale,,<30,-1\n", kToySchema),
               DataError);
  // not a number
  EXPECT_THROW(dataset_from("gender,ncrimes,age,y\nmale,x,<30,1\nmale,1,<30,-1\n", kToySchema),
               DataError);
}

TEST(DataModel, DegenerateLabels) {
  try {
    dataset_from("gender,ncrimes,age,y\nmale,1,<30,1\nfemale,2,<30,1\n", kToySchema);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate labels"), std::string::npos);
  }
}

TEST(DataModel, LabelWithoutDeclaredNegative) {
  const std::string schema = R"({"columns": [{"name": "a", "kind": "numeric"}],
    "label": {"name": "y", "positive": "yes"}})";
  EXPECT_EQ(dataset_from("a,y\n1,yes\n2,no\n", schema).labels, (std::vector<int>{1, -1}));
  EXPECT_THROW(dataset_from("a,y\n1,yes\n2,no\n3,maybe\n", schema), DataError);
}

TEST(DataModel, SchemaValidation) {
  EXPECT_THROW(parse_schema("not json"), ConfigError);
  EXPECT_THROW(parse_schema(R"({"columns": []})"), ConfigError);
  EXPECT_THROW(parse_schema(R"({"columns": [{"name": "a", "kind": "numeric"},
      {"name": "a", "kind": "numeric"}], "label": {"name": "y", "positive": "1"}})"),
               ConfigError);
  EXPECT_THROW(parse_schema(R"({"columns": [{"name": "a", "kind": "categorical",
      "categories": ["x"]}], "label": {"name": "y", "positive": "1"}})"),
               ConfigError);
  EXPECT_THROW(parse_schema(R"({"columns": [{"name": "a", "kind": "text"}],
      "label": {"name": "y", "positive": "1"}})"),
               ConfigError);
  EXPECT_THROW(parse_schema(R"({"columns": [{"name": "y", "kind": "numeric"}],
      "label": {"name": "y", "positive": "1"}})"),
               ConfigError);
  EXPECT_THROW(load_schema("/nonexistent/schema.json"), ConfigError);
}

TEST(DataModel, SchemaJsonRoundTrip) {
  const Schema s = parse_schema(kToySchema);
  const Schema t = parse_schema(schema_to_json(s));
  ASSERT_EQ(t.columns.size(), 3u);
  EXPECT_EQ(t.columns[2].categories, s.columns[2].categories);
  EXPECT_EQ(t.label.negative, s.label.negative);
}

TEST(DataModel, CandidacyDefaultsAndOverride) {
  const Schema s = parse_schema(R"({"columns": [
      {"name": "n", "kind": "numeric"},
      {"name": "b", "kind": "binary"},
      {"name": "c", "kind": "categorical", "categories": ["u", "v", "w"]},
      {"name": "m", "kind": "numeric", "candidate_sensitive": true},
      {"name": "k", "kind": "categorical", "categories": ["u", "v"], "candidate_sensitive": false}],
      "label": {"name": "y", "positive": "1"}})");
  EXPECT_FALSE(is_candidate(s.columns[0]));
  EXPECT_TRUE(is_candidate(s.columns[1]));
  EXPECT_TRUE(is_candidate(s.columns[2]));
  EXPECT_TRUE(is_candidate(s.columns[3]));
  EXPECT_FALSE(is_candidate(s.columns[4]));
}

TEST(DataModel, BinaryCoding) {
  const std::string undeclared = R"({"columns": [{"name": "sex", "kind": "binary"}],
    "label": {"name": "y", "positive": "1"}})";
  const std::string declared = R"({"columns": [{"name": "sex", "kind": "binary",
    "categories": ["male", "female"]}], "label": {"name": "y", "positive": "1"}})";
  const std::string csv = "sex,y\nmale,1\nfemale,0\nfemale,1\n";
  // Undeclared: sorted observed values, the larger one is 1.
  const EncodedDataset a = encode(dataset_from(csv, undeclared));
  EXPECT_EQ(a.subfeatures[0].name, "sex_male");
  EXPECT_EQ(a.x.col(0), Eigen::Vector3d(1, 0, 0));
  // Declared [negative, positive].
  const EncodedDataset b = encode(dataset_from(csv, declared));
  EXPECT_EQ(b.subfeatures[0].name, "sex_female");
  EXPECT_EQ(b.x.col(0), Eigen::Vector3d(0, 1, 1));
  // The two codings are complements.
  EXPECT_EQ(a.x.col(0) + b.x.col(0), Eigen::Vector3d::Ones());
  EXPECT_THROW(dataset_from("sex,y\nmale,1\nmale,0\n", undeclared), DataError);
  EXPECT_THROW(dataset_from("sex,y\nmale,1\nfemale,0\nother,1\n", undeclared), DataError);
}

TEST(DataModel, NumericOnlyIsIdentity) {
  const std::string schema = R"({"columns": [{"name": "a", "kind": "numeric"},
    {"name": "b", "kind": "numeric"}], "label": {"name": "y", "positive": "1"}})";
  const std::string csv = "a,b,y\n1.5,-2,1\n0.1,3e2,0\n7,0.000,1\n";
  const Dataset ds = dataset_from(csv, schema);
  const EncodedDataset e = encode(ds);
  Eigen::MatrixXd expected(3, 2);
  expected << 1.5, -2, 0.1, 300, 7, 0;
  EXPECT_EQ(e.x, expected);

  std::ostringstream out;
  write_encoded_csv(out, ds, e, {});
  EXPECT_EQ(out.str(), csv);  // cells copied byte for byte
  // Encoding the encoded output again with the same schema is the identity.
  const Dataset again = dataset_from(out.str(), schema);
  EXPECT_EQ(encode(again).x, e.x);
}

TEST(DataModel, OneHotRowsSumToOneAndRoundTrip) {
  const Dataset ds = dataset_from(
      "c,y\nu,1\nw,0\nv,1\nw,1\nu,0\n",
      R"({"columns": [{"name": "c", "kind": "categorical", "categories": ["u", "v", "w"]}],
          "label": {"name": "y", "positive": "1"}})");
  const EncodedDataset e = encode(ds);
  const auto& codes = std::get<CategoricalColumn>(ds.columns[0]).codes;
  for (Eigen::Index i = 0; i < e.x.rows(); ++i) {
    EXPECT_EQ(e.x.row(i).sum(), 1.0);
    Eigen::Index k;
    e.x.row(i).maxCoeff(&k);
    EXPECT_EQ(static_cast<std::uint32_t>(k), codes[static_cast<std::size_t>(i)]);
  }
  // Declared-but-unobserved categories still get a (constant) column.
  const Dataset partial = dataset_from(
      "c,y\nu,1\nu,0\nv,1\n",
      R"({"columns": [{"name": "c", "kind": "categorical", "categories": ["u", "v", "w"]}],
          "label": {"name": "y", "positive": "1"}})");
  EXPECT_EQ(encode(partial).x.col(2).sum(), 0.0);
}

TEST(DataModel, EncodeIsDeterministic) {
  const Dataset ds = dataset_from(kToyCsv, kToySchema);
  EXPECT_EQ(encode(ds).x, encode(ds).x);
}

TEST(DataModel, Standardize) {
  const std::string schema = R"({"columns": [{"name": "a", "kind": "numeric"},
    {"name": "k", "kind": "numeric"}], "label": {"name": "y", "positive": "1"}})";
  const Dataset ds = dataset_from("a,k,y\n1,5,1\n2,5,0\n3,5,1\n", schema);
  const EncodedDataset e = encode(ds, {.standardize = true});
  EXPECT_NEAR(e.x.col(0).mean(), 0.0, 1e-15);
  EXPECT_NEAR(e.x.col(0).squaredNorm() / 3.0, 1.0, 1e-12);
  EXPECT_EQ(e.x.col(1), Eigen::Vector3d::Zero());
}

TEST(DataModel, SelectRowsAndWriteDataset) {
  const Dataset ds = dataset_from(kToyCsv, kToySchema);
  const std::vector<std::size_t> rows{2, 0};
  const Dataset sub = ds.select_rows(rows);
  EXPECT_EQ(sub.labels, (std::vector<int>{1, 1}));
  std::ostringstream out;
  write_dataset_csv(out, ds);
  EXPECT_EQ(out.str(), kToyCsv);
}

TEST(DataModel, FormatNumberRoundTrips) {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1e-300, 123456.789, 0.6065306597126334}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(1.0), "1");
}

}  // namespace
}  // namespace sensfeat

#pragma once

// Tabular ingestion and one-hot encoding.
//
// A Schema declares every feature column (numeric, binary or categorical)
// and the label column. load_dataset() validates a CSV table against it,
// drops rows with missing cells and maps the label onto {-1, +1}. encode()
// then expands the dataset into the extended numeric matrix used by the
// dependence and validation modules: numeric columns pass through, binary
// columns become one 0/1 column, and a categorical column with q declared
// categories becomes q indicator columns.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "sensfeat/csv.h"

namespace sensfeat {

enum class ColumnKind { kNumeric, kBinary, kCategorical };

std::string_view to_string(ColumnKind kind);
ColumnKind parse_column_kind(std::string_view text);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  // Categorical: required, q >= 2, in encoding order.
  // Binary: optional [negative, positive]; the indicator is 1 for the second
  // entry. When omitted, the two observed values are sorted and the larger
  // one is coded 1 (so "0"/"1" columns keep their meaning).
  std::vector<std::string> categories;
  // Unset means the detector default: binary and categorical columns are
  // candidates, numeric columns are not.
  std::optional<bool> candidate_sensitive;
};

struct LabelSpec {
  std::string name;
  std::string positive;
  // When set, every label value must be `positive` or `negative`. Otherwise
  // the column must hold exactly two distinct values.
  std::optional<std::string> negative;
};

struct Schema {
  std::vector<ColumnSpec> columns;
  LabelSpec label;
  std::vector<std::string> missing_tokens = {"", "?", "NA"};

  // Throws ConfigError on duplicate names, a label that is also a feature,
  // categorical columns with fewer than two categories, and so on.
  void validate() const;
  const ColumnSpec* find(std::string_view name) const;
};

bool default_candidacy(ColumnKind kind);
bool is_candidate(const ColumnSpec& spec);

Schema parse_schema(std::string_view json_text);
Schema load_schema(const std::filesystem::path& path);
std::string schema_to_json(const Schema& schema);

struct NumericColumn {
  std::vector<double> values;
  std::vector<std::string> text;  // cells as read, for lossless re-export
};

struct CategoricalColumn {
  std::vector<std::string> categories;  // resolved order (binary: size 2)
  std::vector<std::uint32_t> codes;     // index into categories
};

using ColumnData = std::variant<NumericColumn, CategoricalColumn>;

struct Dataset {
  Schema schema;  // binary columns carry their resolved category pair
  std::vector<ColumnData> columns;  // parallel to schema.columns
  std::vector<int> labels;          // +1 / -1
  std::vector<std::string> label_text;
  std::size_t dropped_rows = 0;

  std::size_t rows() const { return labels.size(); }
  std::size_t features() const { return columns.size(); }

  // Rows in the given order; dropped_rows is carried over.
  Dataset select_rows(std::span<const std::size_t> rows) const;
};

// Errors: ConfigError for a schema column absent from the header; DataError
// for undeclared categories, unparsable numbers, unmappable or single-class
// labels, binary columns without exactly two observed values, and fewer than
// two surviving rows.
Dataset load_dataset(const CsvTable& table, const Schema& schema);
Dataset load_dataset(const std::filesystem::path& csv_path, const Schema& schema);

struct Subfeature {
  std::size_t parent = 0;
  std::optional<std::size_t> category;  // unset for numeric parents
  std::string name;                     // "race_Black", or the parent name
};

struct ParentFeature {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  bool candidate = false;
  std::vector<std::size_t> columns;  // indices into EncodedDataset::x
};

struct EncodedDataset {
  Eigen::MatrixXd x;  // n x m~, column-major
  std::vector<Subfeature> subfeatures;
  std::vector<ParentFeature> parents;

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }

  // True when every entry of the column is 0 or 1.
  bool is_indicator(std::size_t column) const;
  std::optional<std::size_t> find_subfeature(std::string_view name) const;
};

struct EncodeOptions {
  // Z-score numeric columns (population standard deviation). Constant
  // columns are left centred at zero.
  bool standardize = false;
};

EncodedDataset encode(const Dataset& dataset, const EncodeOptions& options = {});

// Label vector as doubles in {-1, +1}.
Eigen::VectorXd label_vector(std::span<const int> labels);

// Writes the extended matrix as CSV with subfeature headers followed by the
// label column. Numeric cells are copied verbatim unless standardized.
void write_encoded_csv(std::ostream& out, const Dataset& dataset,
                       const EncodedDataset& encoded, const EncodeOptions& options);

// Writes the dataset in its original cell form (features, then label).
void write_dataset_csv(std::ostream& out, const Dataset& dataset);

// Shortest decimal that round-trips the double.
std::string format_number(double value);

}  // namespace sensfeat

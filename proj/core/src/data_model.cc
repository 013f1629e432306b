#include "sensfeat/data_model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "sensfeat/error.h"

namespace sensfeat {
namespace {

using nlohmann::json;

std::string quote_name(std::string_view s) { return "'" + std::string(s) + "'"; }

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

}  // namespace

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric:
      return "numeric";
    case ColumnKind::kBinary:
      return "binary";
    case ColumnKind::kCategorical:
      return "categorical";
  }
  return "numeric";
}

ColumnKind parse_column_kind(std::string_view text) {
  if (text == "numeric") return ColumnKind::kNumeric;
  if (text == "binary") return ColumnKind::kBinary;
  if (text == "categorical") return ColumnKind::kCategorical;
  throw ConfigError("unknown column kind " + quote_name(text) +
                    " (expected numeric, binary or categorical)");
}

bool default_candidacy(ColumnKind kind) { return kind != ColumnKind::kNumeric; }

bool is_candidate(const ColumnSpec& spec) {
  return spec.candidate_sensitive.value_or(default_candidacy(spec.kind));
}

void Schema::validate() const {
  if (columns.empty()) throw ConfigError("schema declares no feature columns");
  if (label.name.empty()) throw ConfigError("schema label has no name");
  std::unordered_set<std::string> seen;
  for (const auto& col : columns) {
    if (col.name.empty()) throw ConfigError("schema column with empty name");
    if (!seen.insert(col.name).second) {
      throw ConfigError("duplicate column name " + quote_name(col.name));
    }
    if (col.name == label.name) {
      throw ConfigError("column " + quote_name(col.name) + " is both a feature and the label");
    }
    const std::set<std::string> distinct(col.categories.begin(), col.categories.end());
    if (distinct.size() != col.categories.size()) {
      throw ConfigError("column " + quote_name(col.name) + " declares a category twice");
    }
    switch (col.kind) {
      case ColumnKind::kCategorical:
        if (col.categories.size() < 2) {
          throw ConfigError("categorical column " + quote_name(col.name) +
                            " must declare at least 2 categories");
        }
        break;
      case ColumnKind::kBinary:
        if (!col.categories.empty() && col.categories.size() != 2) {
          throw ConfigError("binary column " + quote_name(col.name) +
                            " must declare exactly 2 categories");
        }
        break;
      case ColumnKind::kNumeric:
        if (!col.categories.empty()) {
          throw ConfigError("numeric column " + quote_name(col.name) + " cannot declare categories");
        }
        break;
    }
  }
  if (label.negative && *label.negative == label.positive) {
    throw ConfigError("label positive and negative values coincide");
  }
}

const ColumnSpec* Schema::find(std::string_view name) const {
  for (const auto& col : columns) {
    if (col.name == name) return &col;
  }
  return nullptr;
}

Schema parse_schema(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
  }
  Schema schema;
  try {
    for (const auto& c : doc.at("columns")) {
      ColumnSpec spec;
      spec.name = c.at("name").get<std::string>();
      spec.kind = parse_column_kind(c.at("kind").get<std::string>());
      if (c.contains("categories")) {
        spec.categories = c.at("categories").get<std::vector<std::string>>();
      }
      if (c.contains("candidate_sensitive")) {
        spec.candidate_sensitive = c.at("candidate_sensitive").get<bool>();
      }
      schema.columns.push_back(std::move(spec));
    }
    const auto& label = doc.at("label");
    schema.label.name = label.at("name").get<std::string>();
    schema.label.positive = label.at("positive").get<std::string>();
    if (label.contains("negative")) schema.label.negative = label.at("negative").get<std::string>();
    if (doc.contains("missing_values")) {
      schema.missing_tokens = doc.at("missing_values").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed schema: ") + e.what());
  }
  schema.validate();
  return schema;
}

Schema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schema file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_schema(buffer.str());
}

std::string schema_to_json(const Schema& schema) {
  json doc;
  doc["columns"] = json::array();
  for (const auto& col : schema.columns) {
    json c = {{"name", col.name}, {"kind", std::string(to_string(col.kind))}};
    if (!col.categories.empty()) c["categories"] = col.categories;
    if (col.candidate_sensitive) c["candidate_sensitive"] = *col.candidate_sensitive;
    doc["columns"].push_back(std::move(c));
  }
  doc["label"] = {{"name", schema.label.name}, {"positive", schema.label.positive}};
  if (schema.label.negative) doc["label"]["negative"] = *schema.label.negative;
  doc["missing_values"] = schema.missing_tokens;
  return doc.dump(2) + "\n";
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Dataset out;
  out.schema = schema;
  out.dropped_rows = dropped_rows;
  out.columns.reserve(columns.size());
  for (const auto& column : columns) {
    std::visit(
        [&](const auto& col) {
          using T = std::decay_t<decltype(col)>;
          T picked;
          if constexpr (std::is_same_v<T, NumericColumn>) {
            for (std::size_t r : rows) {
              picked.values.push_back(col.values[r]);
              picked.text.push_back(col.text[r]);
            }
          } else {
            picked.categories = col.categories;
            for (std::size_t r : rows) picked.codes.push_back(col.codes[r]);
          }
          out.columns.emplace_back(std::move(picked));
        },
        column);
  }
  for (std::size_t r : rows) {
    out.labels.push_back(labels[r]);
    out.label_text.push_back(label_text[r]);
  }
  return out;
}

Dataset load_dataset(const CsvTable& table, const Schema& schema) {
  schema.validate();
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < table.header.size(); ++i) position.emplace(table.header[i], i);

  auto column_index = [&](const std::string& name) {
    const auto it = position.find(name);
    if (it == position.end()) {
      throw ConfigError("unknown column " + quote_name(name) + ": not present in the CSV header");
    }
    return it->second;
  };
  std::vector<std::size_t> feature_pos;
  for (const auto& col : schema.columns) feature_pos.push_back(column_index(col.name));
  const std::size_t label_pos = column_index(schema.label.name);

  const std::unordered_set<std::string> missing(schema.missing_tokens.begin(),
                                                schema.missing_tokens.end());
  auto is_missing = [&](const std::string& cell) { return missing.contains(cell); };

  std::vector<const std::vector<std::string>*> kept;
  std::size_t dropped = 0;
  for (const auto& row : table.rows) {
    bool any_missing = is_missing(row[label_pos]);
    for (std::size_t p : feature_pos) any_missing = any_missing || is_missing(row[p]);
    if (any_missing) {
      ++dropped;
    } else {
      kept.push_back(&row);
    }
  }
  if (kept.size() < 2) {
    throw DataError("only " + std::to_string(kept.size()) +
                    " rows remain after dropping rows with missing values; need at least 2");
  }

  Dataset ds;
  ds.schema = schema;
  ds.dropped_rows = dropped;

  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    ColumnSpec& spec = ds.schema.columns[c];
    const std::size_t p = feature_pos[c];
    if (spec.kind == ColumnKind::kNumeric) {
      NumericColumn col;
      for (const auto* row : kept) {
        const std::string& cell = (*row)[p];
        double v = 0;
        if (!parse_double(cell, v)) {
          throw DataError("column " + quote_name(spec.name) + ": value " + quote_name(cell) +
                          " is not a finite number");
        }
        col.values.push_back(v);
        col.text.push_back(cell);
      }
      ds.columns.emplace_back(std::move(col));
      continue;
    }

    std::vector<std::string> categories = spec.categories;
    if (spec.kind == ColumnKind::kBinary) {
      std::set<std::string> observed;
      for (const auto* row : kept) observed.insert((*row)[p]);
      if (observed.size() != 2) {
        throw DataError("binary column " + quote_name(spec.name) + " has " +
                        std::to_string(observed.size()) +
                        " distinct observed values; expected exactly 2");
      }
      if (categories.empty()) {
        categories.assign(observed.begin(), observed.end());
        spec.categories = categories;
      }
    }
    std::unordered_map<std::string, std::uint32_t> code_of;
    for (std::size_t k = 0; k < categories.size(); ++k) {
      code_of.emplace(categories[k], static_cast<std::uint32_t>(k));
    }
    CategoricalColumn col;
    col.categories = categories;
    for (const auto* row : kept) {
      const std::string& cell = (*row)[p];
      const auto it = code_of.find(cell);
      if (it == code_of.end()) {
        throw DataError("column " + quote_name(spec.name) + ": undeclared category value " +
                        quote_name(cell));
      }
      col.codes.push_back(it->second);
    }
    ds.columns.emplace_back(std::move(col));
  }

  std::set<std::string> label_values;
  for (const auto* row : kept) label_values.insert((*row)[label_pos]);
  const LabelSpec& label = schema.label;
  for (const auto& v : label_values) {
    if (v == label.positive) continue;
    if (label.negative ? v != *label.negative : label_values.size() > 2) {
      throw DataError("label column " + quote_name(label.name) + ": value " + quote_name(v) +
                      " cannot be mapped onto the positive/negative classes");
    }
  }
  for (const auto* row : kept) {
    const std::string& v = (*row)[label_pos];
    ds.label_text.push_back(v);
    ds.labels.push_back(v == label.positive ? 1 : -1);
  }
  const auto positives = std::count(ds.labels.begin(), ds.labels.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(ds.labels.size())) {
    throw DataError("degenerate labels: label column " + quote_name(label.name) +
                    " holds a single class after ingestion");
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& csv_path, const Schema& schema) {
  return load_dataset(read_csv_file(csv_path), schema);
}

bool EncodedDataset::is_indicator(std::size_t column) const {
  const auto col = x.col(static_cast<Eigen::Index>(column));
  return (col.array() == 0.0 || col.array() == 1.0).all();
}

std::optional<std::size_t> EncodedDataset::find_subfeature(std::string_view name) const {
  for (std::size_t i = 0; i < subfeatures.size(); ++i) {
    if (subfeatures[i].name == name) return i;
  }
  return std::nullopt;
}

EncodedDataset encode(const Dataset& dataset, const EncodeOptions& options) {
  const auto n = static_cast<Eigen::Index>(dataset.rows());
  EncodedDataset out;

  std::size_t total = 0;
  for (std::size_t j = 0; j < dataset.features(); ++j) {
    const auto& spec = dataset.schema.columns[j];
    total += spec.kind == ColumnKind::kCategorical ? spec.categories.size() : 1;
  }
  out.x.resize(n, static_cast<Eigen::Index>(total));

  Eigen::Index next = 0;
  for (std::size_t j = 0; j < dataset.features(); ++j) {
    const auto& spec = dataset.schema.columns[j];
    ParentFeature parent{spec.name, spec.kind, is_candidate(spec), {}};
    auto add_column = [&](std::optional<std::size_t> category, std::string name) {
      parent.columns.push_back(static_cast<std::size_t>(next));
      out.subfeatures.push_back({j, category, std::move(name)});
      return out.x.col(next++);
    };

    if (const auto* num = std::get_if<NumericColumn>(&dataset.columns[j])) {
      auto col = add_column(std::nullopt, spec.name);
      col = Eigen::Map<const Eigen::VectorXd>(num->values.data(), n);
      if (options.standardize) {
        const double mean = col.mean();
        col.array() -= mean;
        const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(n));
        if (sd > 0) col /= sd;
      }
    } else {
      const auto& cat = std::get<CategoricalColumn>(dataset.columns[j]);
      if (spec.kind == ColumnKind::kBinary) {
        auto col = add_column(1, spec.name + "_" + cat.categories[1]);
        for (Eigen::Index i = 0; i < n; ++i) col[i] = cat.codes[i] == 1 ? 1.0 : 0.0;
      } else {
        for (std::size_t k = 0; k < cat.categories.size(); ++k) {
          auto col = add_column(k, spec.name + "_" + cat.categories[k]);
          for (Eigen::Index i = 0; i < n; ++i) col[i] = cat.codes[i] == k ? 1.0 : 0.0;
        }
      }
    }
    out.parents.push_back(std::move(parent));
  }
  return out;
}

Eigen::VectorXd label_vector(std::span<const int> labels) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];
  return y;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_encoded_csv(std::ostream& out, const Dataset& dataset,
                       const EncodedDataset& encoded, const EncodeOptions& options) {
  std::vector<std::string> fields;
  for (const auto& sub : encoded.subfeatures) fields.push_back(sub.name);
  fields.push_back(dataset.schema.label.name);
  write_csv_row(out, fields);

  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    fields.clear();
    for (std::size_t c = 0; c < encoded.cols(); ++c) {
      const auto& sub = encoded.subfeatures[c];
      const auto* num = std::get_if<NumericColumn>(&dataset.columns[sub.parent]);
      if (num && !options.standardize) {
        fields.push_back(num->text[i]);
      } else {
        fields.push_back(format_number(encoded.x(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(c))));
      }
    }
    fields.push_back(dataset.label_text[i]);
    write_csv_row(out, fields);
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
  std::vector<std::string> fields;
  for (const auto& spec : dataset.schema.columns) fields.push_back(spec.name);
  fields.push_back(dataset.schema.label.name);
  write_csv_row(out, fields);

  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    fields.clear();
    for (const auto& column : dataset.columns) {
      if (const auto* num = std::get_if<NumericColumn>(&column)) {
        fields.push_back(num->text[i]);
      } else {
        const auto& cat = std::get<CategoricalColumn>(column);
        fields.push_back(cat.categories[cat.codes[i]]);
      }
    }
    fields.push_back(dataset.label_text[i]);
    write_csv_row(out, fields);
  }
}

}  // namespace sensfeat

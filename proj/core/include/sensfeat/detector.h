#pragma once

// Sensitive-feature detection from per-feature dependence scores.
//
// Every column of the extended matrix is scored against the label vector
// with NOCCO. A numeric or binary feature has a single score. A categorical
// feature scores each of its indicator columns and keeps the largest; with
// only two categories the indicators are complements and share one score,
// so it is computed once. The threshold t defaults to the median of all
// feature scores; candidate features with d >= t are reported as sensitive,
// together with the indicator column that attained their score.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensfeat/data_model.h"
#include "sensfeat/dependence.h"

namespace sensfeat {

struct ThresholdRule {
  enum class Mode { kMedian, kFixed };
  Mode mode = Mode::kMedian;
  double value = 0.0;  // used by kFixed

  static ThresholdRule median() { return {}; }
  static ThresholdRule fixed(double t) { return {Mode::kFixed, t}; }
  // "median" or a decimal number.
  static ThresholdRule parse(std::string_view text);
  std::string to_string() const;
};

struct DetectorConfig {
  DependenceConfig dependence;
  ThresholdRule threshold;
  std::size_t max_n = 2000;  // 0 disables subsampling
  std::uint64_t seed = 42;
  std::size_t threads = 0;  // 0 = all cores
  bool standardize = false;
};

struct SubfeatureScore {
  std::string name;
  std::size_t column = 0;  // index into EncodedDataset::x
  double d = 0.0;
};

struct FeatureScore {
  std::size_t feature = 0;
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  bool candidate = false;
  std::vector<SubfeatureScore> subfeatures;
  double d = 0.0;            // max over subfeatures
  std::size_t argmax = 0;    // index into subfeatures; lowest index on ties
  bool sensitive = false;    // filled by detect()
};

struct DependenceReport {
  std::vector<FeatureScore> scores;
  double threshold = 0.0;
  std::vector<std::string> sensitive_features;
  std::vector<std::string> sensitive_groups;  // one per sensitive feature
  DetectorConfig config;
  std::size_t rows_used = 0;
  std::size_t rows_total = 0;

  const FeatureScore* find(std::string_view feature) const;
  // Score of a named subfeature, or of a numeric feature by its own name.
  std::optional<double> subfeature_score(std::string_view name) const;
};

// Scores every parent feature of `encoded`. The label operator is built once
// and shared; columns are processed on `threads` workers. Kernel and solve
// failures are rethrown with the offending column named.
std::vector<FeatureScore> score_features(const EncodedDataset& encoded,
                                         std::span<const int> labels,
                                         const DependenceConfig& config,
                                         std::size_t threads = 0);

// Median of a non-empty list; the mean of the two middle values when even.
double median(std::vector<double> values);

// Applies the threshold rule over all features and selects sensitive
// candidates (d >= t, inclusive).
DependenceReport detect(std::vector<FeatureScore> scores,
                        const ThresholdRule& rule = ThresholdRule::median());

// Label-stratified uniform subsample without replacement, rows kept in their
// original order. Identity when rows() <= max_n or max_n == 0.
Dataset subsample(const Dataset& dataset, std::size_t max_n, std::uint64_t seed);

// subsample -> encode -> score_features -> detect, with the effective
// configuration and row counts recorded in the report.
DependenceReport run_detector(const Dataset& dataset, const DetectorConfig& config);

}  // namespace sensfeat

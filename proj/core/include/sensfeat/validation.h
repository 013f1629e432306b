#pragma once

// Cross-validated check of dependence scores against group fairness.
//
// A random forest is trained under label-stratified k-fold cross-validation;
// on every held-out fold each indicator subfeature is evaluated one-vs-all
// with the four fairness disparities. Fold values are averaged (undefined
// fold values excluded and counted) and the averages are rank-correlated
// with the subfeatures' NOCCO scores.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensfeat/data_model.h"
#include "sensfeat/detector.h"
#include "sensfeat/fairness.h"
#include "sensfeat/forest.h"

namespace sensfeat {

// Partition of [0, n) into k label-stratified test folds. Each class is
// shuffled and dealt round-robin, so fold sizes and per-fold class counts
// differ by at most one. Throws DataError when a class has fewer than k
// rows (some fold would then hold a single class) or n < k.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels,
                                                       std::size_t folds, std::uint64_t seed);

struct CrossValidation {
  std::vector<std::vector<std::size_t>> test_rows;   // per fold, ascending
  std::vector<std::vector<int>> predictions;         // parallel to test_rows
  std::vector<double> accuracy;                      // per fold
};

// Trains one forest per fold on the other folds. Columns listed in
// `excluded_columns` are hidden from the classifier.
CrossValidation cross_validate(const EncodedDataset& encoded, std::span<const int> labels,
                               std::size_t folds, const ForestConfig& forest,
                               std::span<const std::size_t> excluded_columns = {});

// Spearman rank correlation with average ranks for ties. Undefined for fewer
// than two points or when either side is constant.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

struct ValidationConfig {
  std::size_t folds = 10;
  ForestConfig forest;
  // Hide the columns of detected sensitive features from the classifier.
  bool exclude_sensitive = false;
};

enum class Measure { kPe, kEp, kEo, kOae };
inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::kPe, Measure::kEp,
                                                        Measure::kEo, Measure::kOae};
std::string_view to_string(Measure m);
std::optional<double> get(const FairnessMeasures& f, Measure m);

struct MeasureSummary {
  std::optional<double> mean;  // over folds where the measure is defined
  std::size_t undefined = 0;   // folds where it is not
};

struct SubfeatureValidation {
  std::string name;
  std::string parent;
  std::size_t column = 0;
  double nocco = 0.0;
  std::vector<FairnessMeasures> folds;
  std::array<MeasureSummary, 4> summary;  // indexed like kAllMeasures

  const MeasureSummary& operator[](Measure m) const {
    return summary[static_cast<std::size_t>(m)];
  }
};

struct ValidationReport {
  std::vector<SubfeatureValidation> records;
  std::vector<double> fold_accuracy;
  std::array<std::optional<double>, 4> spearman;  // NOCCO vs mean measure
  // All subfeature scores below the noise level observed for independent
  // data; correlations are then not meaningful.
  bool low_signal = false;
  ValidationConfig config;
  DependenceConfig dependence;
  std::vector<std::string> excluded_features;

  double mean_accuracy() const;
  const SubfeatureValidation* find(std::string_view name) const;
};

// NOCCO below this for every subfeature flags a report as low-signal.
inline constexpr double kLowSignalNocco = 0.05;

// Every indicator column of `encoded` gets one record, paired with its score
// in `report` (matched by subfeature name; the report may come from a row
// subsample of the same schema).
ValidationReport validate(const EncodedDataset& encoded, std::span<const int> labels,
                          const DependenceReport& report, const ValidationConfig& config);

struct GroupFlip {
  std::string feature;
  std::string group_a;
  std::string group_b;
  double relative_gap_a = 0.0;  // |d(group_a) - d(group_b)| / max, in report a
  double relative_gap_b = 0.0;  // same, in report b
};

struct KernelComparison {
  std::optional<double> spearman;  // of feature scores d_j
  std::vector<std::string> only_in_a;
  std::vector<std::string> only_in_b;
  std::vector<GroupFlip> group_flips;

  // True when S agrees and every argmax flip is within `tolerance` relative
  // gap in both reports.
  bool consistent(double tolerance = 0.05) const;
};

// Compares two reports over the same features (e.g. RBF vs linear kernel).
KernelComparison compare_reports(const DependenceReport& a, const DependenceReport& b);

// Runs the detector with both kernels on `dataset` and compares the reports.
KernelComparison kernel_consistency(const Dataset& dataset, const DetectorConfig& config,
                                    DependenceReport* rbf = nullptr,
                                    DependenceReport* linear = nullptr);

}  // namespace sensfeat

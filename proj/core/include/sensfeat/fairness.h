#pragma once

// Group fairness disparities under one-vs-all conditioning.
//
// For a group G (rows whose indicator is 1) and its complement -G:
//   f_PE  = |FPR(G) - FPR(-G)|           predictive equality
//   f_EP  = |TPR(G) - TPR(-G)|           equal opportunity
//   f_EO  = f_EP + f_PE                  equalized odds
//   f_OAE = |ACC(G) - ACC(-G)|           overall accuracy equality
// with FPR = FP/(FP+TN), TPR = TP/(TP+FN), ACC = (TP+TN)/size. A measure
// whose denominator vanishes on either side is left undefined.

#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "sensfeat/data_model.h"

namespace sensfeat {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

struct GroupConfusion {
  ConfusionCounts group;
  ConfusionCounts complement;

  std::size_t group_size() const { return group.total(); }
  std::size_t complement_size() const { return complement.total(); }
  // Either side is empty.
  bool degenerate() const { return group_size() == 0 || complement_size() == 0; }
};

struct FairnessMeasures {
  std::optional<double> pe;
  std::optional<double> ep;
  std::optional<double> eo;
  std::optional<double> oae;
};

// Predictions and labels in {-1, +1}; group indicator in {0, 1}.
// Throws DataError on length mismatch or out-of-domain entries.
GroupConfusion group_confusion(std::span<const int> predictions, std::span<const int> labels,
                               std::span<const double> group);

FairnessMeasures fairness_measures(const GroupConfusion& gc);

// Group = rows whose `column` indicator is 1. `rows` selects the evaluated
// rows of `encoded` (e.g. a test fold) and is parallel to predictions and
// labels; an empty `rows` means every row.
FairnessMeasures one_vs_all_measures(std::span<const int> predictions, std::span<const int> labels,
                                     const EncodedDataset& encoded, std::size_t column,
                                     std::span<const std::size_t> rows = {});

}  // namespace sensfeat

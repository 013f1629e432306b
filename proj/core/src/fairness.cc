#include "sensfeat/fairness.h"

#include <cmath>
#include <string>
#include <vector>

#include "sensfeat/error.h"

namespace sensfeat {
namespace {

std::optional<double> rate(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> gap(std::optional<double> a, std::optional<double> b) {
  if (!a || !b) return std::nullopt;
  return std::abs(*a - *b);
}

void require_sign(int v, const char* what) {
  if (v != 1 && v != -1) throw DataError(std::string(what) + " must be -1 or +1");
}

}  // namespace

GroupConfusion group_confusion(std::span<const int> predictions, std::span<const int> labels,
                               std::span<const double> group) {
  if (predictions.size() != labels.size() || labels.size() != group.size()) {
    throw DataError("group_confusion: predictions, labels and group differ in length");
  }
  GroupConfusion gc;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require_sign(predictions[i], "predictions");
    require_sign(labels[i], "labels");
    if (group[i] != 0.0 && group[i] != 1.0) {
      throw DataError("group indicator must hold only 0 and 1");
    }
    ConfusionCounts& c = group[i] == 1.0 ? gc.group : gc.complement;
    const bool predicted_positive = predictions[i] == 1;
    const bool positive = labels[i] == 1;
    if (predicted_positive) {
      ++(positive ? c.tp : c.fp);
    } else {
      ++(positive ? c.fn : c.tn);
    }
  }
  return gc;
}

FairnessMeasures fairness_measures(const GroupConfusion& gc) {
  const auto& g = gc.group;
  const auto& h = gc.complement;
  FairnessMeasures m;
  m.pe = gap(rate(g.fp, g.fp + g.tn), rate(h.fp, h.fp + h.tn));
  m.ep = gap(rate(g.tp, g.tp + g.fn), rate(h.tp, h.tp + h.fn));
  if (m.pe && m.ep) m.eo = *m.ep + *m.pe;
  m.oae = gap(rate(g.tp + g.tn, g.total()), rate(h.tp + h.tn, h.total()));
  return m;
}

FairnessMeasures one_vs_all_measures(std::span<const int> predictions, std::span<const int> labels,
                                     const EncodedDataset& encoded, std::size_t column,
                                     std::span<const std::size_t> rows) {
  if (column >= encoded.cols()) throw DataError("subfeature index out of range");
  const auto values = encoded.x.col(static_cast<Eigen::Index>(column));
  std::vector<double> group;
  if (rows.empty()) {
    group.assign(values.data(), values.data() + values.size());
  } else {
    group.reserve(rows.size());
    for (std::size_t r : rows) group.push_back(values[static_cast<Eigen::Index>(r)]);
  }
  try {
    return fairness_measures(group_confusion(predictions, labels, group));
  } catch (const DataError& e) {
    throw DataError("subfeature '" + encoded.subfeatures[column].name + "': " + e.what());
  }
}

}  // namespace sensfeat

#include "sensfeat/validation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sensfeat/error.h"
#include "sensfeat/random.h"

namespace sensfeat {
namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels,
                                                       std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("need at least 2 folds");
  if (labels.size() < folds) {
    throw DataError("cannot split " + std::to_string(labels.size()) + " rows into " +
                    std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == 1 ? positives : negatives).push_back(i);
  }
  const std::size_t smallest = std::min(positives.size(), negatives.size());
  if (smallest < folds) {
    throw DataError("the minority class has " + std::to_string(smallest) + " rows, fewer than " +
                    std::to_string(folds) +
                    " folds, so a fold would contain a single class; use at most " +
                    std::to_string(smallest) + " folds");
  }

  Rng rng(derive_seed(seed, 3));
  rng.shuffle(std::span<std::size_t>(positives));
  rng.shuffle(std::span<std::size_t>(negatives));
  std::vector<std::size_t> dealt = std::move(positives);
  dealt.insert(dealt.end(), negatives.begin(), negatives.end());

  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t i = 0; i < dealt.size(); ++i) out[i % folds].push_back(dealt[i]);
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

CrossValidation cross_validate(const EncodedDataset& encoded, std::span<const int> labels,
                               std::size_t folds, const ForestConfig& forest,
                               std::span<const std::size_t> excluded_columns) {
  if (labels.size() != encoded.rows()) {
    throw DataError("label vector length does not match the encoded dataset");
  }
  forest.validate();

  std::vector<std::size_t> features;
  for (std::size_t c = 0; c < encoded.cols(); ++c) {
    if (std::find(excluded_columns.begin(), excluded_columns.end(), c) == excluded_columns.end()) {
      features.push_back(c);
    }
  }
  if (features.empty()) throw ConfigError("every feature column is excluded from training");

  CrossValidation cv;
  cv.test_rows = stratified_folds(labels, folds, forest.seed);
  std::vector<char> in_test(labels.size());
  for (std::size_t f = 0; f < folds; ++f) {
    const auto& test = cv.test_rows[f];
    std::fill(in_test.begin(), in_test.end(), 0);
    for (std::size_t r : test) in_test[r] = 1;
    std::vector<std::size_t> train;
    train.reserve(labels.size() - test.size());
    for (std::size_t r = 0; r < labels.size(); ++r) {
      if (!in_test[r]) train.push_back(r);
    }

    ForestConfig fold_config = forest;
    fold_config.seed = derive_seed(forest.seed, 100 + f);
    const RandomForest model = RandomForest::train(encoded.x, labels, train, fold_config, features);
    std::vector<int> predicted = model.predict(encoded.x, test);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) correct += predicted[i] == labels[test[i]];
    cv.accuracy.push_back(static_cast<double>(correct) / static_cast<double>(test.size()));
    cv.predictions.push_back(std::move(predicted));
  }
  return cv;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("spearman: length mismatch");
  if (a.size() < 2) return std::nullopt;
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0 || sbb == 0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::kPe: return "f_pe";
    case Measure::kEp: return "f_ep";
    case Measure::kEo: return "f_eo";
    case Measure::kOae: return "f_oae";
  }
  return "?";
}

std::optional<double> get(const FairnessMeasures& f, Measure m) {
  switch (m) {
    case Measure::kPe: return f.pe;
    case Measure::kEp: return f.ep;
    case Measure::kEo: return f.eo;
    case Measure::kOae: return f.oae;
  }
  return std::nullopt;
}

double ValidationReport::mean_accuracy() const {
  if (fold_accuracy.empty()) return 0.0;
  return std::accumulate(fold_accuracy.begin(), fold_accuracy.end(), 0.0) /
         static_cast<double>(fold_accuracy.size());
}

const SubfeatureValidation* ValidationReport::find(std::string_view name) const {
  for (const auto& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

ValidationReport validate(const EncodedDataset& encoded, std::span<const int> labels,
                          const DependenceReport& report, const ValidationConfig& config) {
  ValidationReport out;
  out.config = config;
  out.dependence = report.config.dependence;

  std::vector<std::size_t> excluded;
  if (config.exclude_sensitive) {
    for (const auto& name : report.sensitive_features) {
      for (const auto& parent : encoded.parents) {
        if (parent.name != name) continue;
        excluded.insert(excluded.end(), parent.columns.begin(), parent.columns.end());
        out.excluded_features.push_back(name);
      }
    }
  }

  for (std::size_t c = 0; c < encoded.cols(); ++c) {
    if (!encoded.is_indicator(c)) continue;
    const auto& sub = encoded.subfeatures[c];
    const auto d = report.subfeature_score(sub.name);
    if (!d) {
      throw DataError("subfeature '" + sub.name + "' has no score in the dependence report");
    }
    SubfeatureValidation rec;
    rec.name = sub.name;
    rec.parent = encoded.parents[sub.parent].name;
    rec.column = c;
    rec.nocco = *d;
    out.records.push_back(std::move(rec));
  }

  const CrossValidation cv =
      cross_validate(encoded, labels, config.folds, config.forest, excluded);
  out.fold_accuracy = cv.accuracy;

  std::vector<int> fold_labels;
  for (std::size_t f = 0; f < cv.test_rows.size(); ++f) {
    const auto& rows = cv.test_rows[f];
    fold_labels.clear();
    for (std::size_t r : rows) fold_labels.push_back(labels[r]);
    for (auto& rec : out.records) {
      rec.folds.push_back(
          one_vs_all_measures(cv.predictions[f], fold_labels, encoded, rec.column, rows));
    }
  }

  for (auto& rec : out.records) {
    for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
      double sum = 0;
      std::size_t defined = 0;
      for (const auto& fold : rec.folds) {
        if (const auto v = get(fold, kAllMeasures[m])) {
          sum += *v;
          ++defined;
        }
      }
      rec.summary[m].undefined = rec.folds.size() - defined;
      if (defined > 0) rec.summary[m].mean = sum / static_cast<double>(defined);
    }
  }

  for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
    std::vector<double> d, f;
    for (const auto& rec : out.records) {
      if (!rec.summary[m].mean) continue;
      d.push_back(rec.nocco);
      f.push_back(*rec.summary[m].mean);
    }
    out.spearman[m] = spearman(d, f);
  }

  out.low_signal = std::all_of(out.records.begin(), out.records.end(),
                               [](const auto& r) { return r.nocco < kLowSignalNocco; });
  return out;
}

bool KernelComparison::consistent(double tolerance) const {
  if (!only_in_a.empty() || !only_in_b.empty()) return false;
  return std::all_of(group_flips.begin(), group_flips.end(), [&](const GroupFlip& f) {
    return f.relative_gap_a < tolerance && f.relative_gap_b < tolerance;
  });
}

KernelComparison compare_reports(const DependenceReport& a, const DependenceReport& b) {
  KernelComparison out;
  std::vector<double> da, db;
  for (const auto& fa : a.scores) {
    const FeatureScore* fb = b.find(fa.name);
    if (!fb) throw DataError("feature '" + fa.name + "' is missing from the second report");
    da.push_back(fa.d);
    db.push_back(fb->d);
  }
  if (a.scores.size() != b.scores.size()) {
    throw DataError("reports cover different feature sets");
  }
  out.spearman = spearman(da, db);

  const std::set<std::string> sa(a.sensitive_features.begin(), a.sensitive_features.end());
  const std::set<std::string> sb(b.sensitive_features.begin(), b.sensitive_features.end());
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                      std::back_inserter(out.only_in_a));
  std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(),
                      std::back_inserter(out.only_in_b));

  auto relative_gap = [](const FeatureScore& f, std::size_t i, std::size_t j) {
    const double x = f.subfeatures[i].d;
    const double y = f.subfeatures[j].d;
    const double top = std::max(x, y);
    return top > 0 ? std::abs(x - y) / top : 0.0;
  };
  for (const auto& fa : a.scores) {
    const FeatureScore& fb = *b.find(fa.name);
    if (fa.subfeatures.size() != fb.subfeatures.size()) {
      throw DataError("feature '" + fa.name + "' has different subfeatures in the two reports");
    }
    // Only flips that change S^g matter.
    const bool in_both = sa.contains(fa.name) && sb.contains(fa.name);
    if (!in_both || fa.argmax == fb.argmax) continue;
    out.group_flips.push_back({fa.name, fa.subfeatures[fa.argmax].name,
                               fb.subfeatures[fb.argmax].name,
                               relative_gap(fa, fa.argmax, fb.argmax),
                               relative_gap(fb, fa.argmax, fb.argmax)});
  }
  return out;
}

KernelComparison kernel_consistency(const Dataset& dataset, const DetectorConfig& config,
                                    DependenceReport* rbf, DependenceReport* linear) {
  DetectorConfig rc = config;
  rc.dependence.kernel = KernelKind::kRbf;
  DetectorConfig lc = config;
  lc.dependence.kernel = KernelKind::kLinear;
  DependenceReport r = run_detector(dataset, rc);
  DependenceReport l = run_detector(dataset, lc);
  KernelComparison out = compare_reports(r, l);
  if (rbf) *rbf = std::move(r);
  if (linear) *linear = std::move(l);
  return out;
}

}  // namespace sensfeat

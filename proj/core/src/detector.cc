#include "sensfeat/detector.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include "sensfeat/error.h"
#include "sensfeat/parallel.h"
#include "sensfeat/random.h"

namespace sensfeat {

ThresholdRule ThresholdRule::parse(std::string_view text) {
  if (text == "median") return median();
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("threshold must be 'median' or a number, got '" + std::string(text) + "'");
  }
  return fixed(value);
}

std::string ThresholdRule::to_string() const {
  return mode == Mode::kMedian ? "median" : format_number(value);
}

const FeatureScore* DependenceReport::find(std::string_view feature) const {
  for (const auto& s : scores) {
    if (s.name == feature) return &s;
  }
  return nullptr;
}

std::optional<double> DependenceReport::subfeature_score(std::string_view name) const {
  for (const auto& s : scores) {
    for (const auto& sub : s.subfeatures) {
      if (sub.name == name) return sub.d;
    }
  }
  return std::nullopt;
}

std::vector<FeatureScore> score_features(const EncodedDataset& encoded,
                                         std::span<const int> labels,
                                         const DependenceConfig& config, std::size_t threads) {
  config.validate();
  if (labels.size() != encoded.rows()) {
    throw DataError("label vector length does not match the encoded dataset");
  }
  if (encoded.rows() < 2) throw DataError("need at least 2 rows to score features");

  // Columns that need their own NOCCO evaluation; the second indicator of a
  // two-category feature is the complement of the first and is skipped.
  std::vector<std::size_t> jobs;
  for (const auto& parent : encoded.parents) {
    if (parent.kind == ColumnKind::kCategorical && parent.columns.size() == 2) {
      jobs.push_back(parent.columns.front());
    } else {
      jobs.insert(jobs.end(), parent.columns.begin(), parent.columns.end());
    }
  }

  const RegularizedOperator label_operator = regularized_operator(label_vector(labels), config);
  std::vector<double> column_score(encoded.cols(), 0.0);
  parallel_for(jobs.size(), threads, [&](std::size_t job) {
    const std::size_t column = jobs[job];
    try {
      const auto values = encoded.x.col(static_cast<Eigen::Index>(column));
      column_score[column] = nocco(regularized_operator(values, config), label_operator);
    } catch (const NumericalError& e) {
      throw NumericalError("column '" + encoded.subfeatures[column].name + "': " + e.what());
    } catch (const DataError& e) {
      throw DataError("column '" + encoded.subfeatures[column].name + "': " + e.what());
    }
  });

  std::vector<FeatureScore> scores;
  for (std::size_t j = 0; j < encoded.parents.size(); ++j) {
    const auto& parent = encoded.parents[j];
    FeatureScore fs;
    fs.feature = j;
    fs.name = parent.name;
    fs.kind = parent.kind;
    fs.candidate = parent.candidate;
    const bool complement_pair =
        parent.kind == ColumnKind::kCategorical && parent.columns.size() == 2;
    for (std::size_t c : parent.columns) {
      const double d = complement_pair ? column_score[parent.columns.front()] : column_score[c];
      fs.subfeatures.push_back({encoded.subfeatures[c].name, c, d});
    }
    for (std::size_t k = 1; k < fs.subfeatures.size(); ++k) {
      if (fs.subfeatures[k].d > fs.subfeatures[fs.argmax].d) fs.argmax = k;
    }
    fs.d = fs.subfeatures[fs.argmax].d;
    scores.push_back(std::move(fs));
  }
  return scores;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DataError("median of an empty list");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

DependenceReport detect(std::vector<FeatureScore> scores, const ThresholdRule& rule) {
  if (scores.empty()) throw DataError("detect needs at least one feature score");
  DependenceReport report;
  if (rule.mode == ThresholdRule::Mode::kMedian) {
    std::vector<double> d;
    for (const auto& s : scores) d.push_back(s.d);
    report.threshold = median(std::move(d));
  } else {
    report.threshold = rule.value;
  }
  for (auto& s : scores) {
    s.sensitive = s.candidate && s.d >= report.threshold;
    if (s.sensitive) {
      report.sensitive_features.push_back(s.name);
      report.sensitive_groups.push_back(s.subfeatures[s.argmax].name);
    }
  }
  report.scores = std::move(scores);
  report.config.threshold = rule;
  return report;
}

Dataset subsample(const Dataset& dataset, std::size_t max_n, std::uint64_t seed) {
  if (max_n == 1) throw ConfigError("subsample size must be at least 2");
  const std::size_t n = dataset.rows();
  if (max_n == 0 || n <= max_n) return dataset;

  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < n; ++i) {
    (dataset.labels[i] == 1 ? positives : negatives).push_back(i);
  }
  auto take_pos = static_cast<std::size_t>(
      std::llround(static_cast<double>(max_n) * static_cast<double>(positives.size()) /
                   static_cast<double>(n)));
  // Keep both classes whenever the cap allows it.
  take_pos = std::clamp<std::size_t>(take_pos, 1, max_n - 1);
  take_pos = std::min(take_pos, positives.size());
  const std::size_t take_neg = std::min(max_n - take_pos, negatives.size());

  Rng rng(derive_seed(seed, 0));
  rng.shuffle(std::span<std::size_t>(positives));
  rng.shuffle(std::span<std::size_t>(negatives));
  std::vector<std::size_t> rows(positives.begin(),
                                positives.begin() + static_cast<std::ptrdiff_t>(take_pos));
  rows.insert(rows.end(), negatives.begin(),
              negatives.begin() + static_cast<std::ptrdiff_t>(take_neg));
  std::sort(rows.begin(), rows.end());
  return dataset.select_rows(rows);
}

DependenceReport run_detector(const Dataset& dataset, const DetectorConfig& config) {
  const Dataset sample = subsample(dataset, config.max_n, config.seed);
  const EncodedDataset encoded = encode(sample, EncodeOptions{config.standardize});
  DependenceReport report =
      detect(score_features(encoded, sample.labels, config.dependence, config.threads),
             config.threshold);
  report.config = config;
  report.rows_used = sample.rows();
  report.rows_total = dataset.rows();
  return report;
}

}  // namespace sensfeat

#include "sensfeat/forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "sensfeat/error.h"
#include "sensfeat/parallel.h"
#include "sensfeat/random.h"

namespace sensfeat {
namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = -1.0;  // sum over children of (pos^2 + neg^2) / size
};

// Best Gini split of rows[begin, end) on one feature; score < 0 if the
// feature is constant on these rows.
Split best_split_on(const Eigen::MatrixXd& x, std::span<const int> labels,
                    std::span<const std::size_t> rows, std::size_t feature,
                    std::vector<std::pair<double, int>>& scratch) {
  scratch.clear();
  const auto col = x.col(static_cast<Eigen::Index>(feature));
  std::size_t total_pos = 0;
  for (std::size_t r : rows) {
    const int positive = labels[r] == 1 ? 1 : 0;
    scratch.emplace_back(col[static_cast<Eigen::Index>(r)], positive);
    total_pos += static_cast<std::size_t>(positive);
  }
  std::sort(scratch.begin(), scratch.end());

  Split best;
  const double n = static_cast<double>(scratch.size());
  double left_pos = 0;
  for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
    left_pos += scratch[i].second;
    if (scratch[i].first == scratch[i + 1].first) continue;
    const double nl = static_cast<double>(i + 1);
    const double nr = n - nl;
    const double right_pos = static_cast<double>(total_pos) - left_pos;
    const double score = (left_pos * left_pos + (nl - left_pos) * (nl - left_pos)) / nl +
                         (right_pos * right_pos + (nr - right_pos) * (nr - right_pos)) / nr;
    if (score > best.score) {
      best.score = score;
      best.feature = static_cast<int>(feature);
      double mid = 0.5 * (scratch[i].first + scratch[i + 1].first);
      if (mid >= scratch[i + 1].first) mid = scratch[i].first;
      best.threshold = mid;
    }
  }
  return best;
}

}  // namespace

void ForestConfig::validate() const {
  if (trees < 1) throw ConfigError("forest needs at least one tree");
  if (max_depth && *max_depth < 1) throw ConfigError("max_depth must be at least 1");
  if (features_per_split && *features_per_split < 1) {
    throw ConfigError("features_per_split must be at least 1");
  }
}

std::size_t ForestConfig::resolved_features_per_split(std::size_t features) const {
  const std::size_t k = features_per_split.value_or(
      static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(features)))));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(features, 1));
}

DecisionTree DecisionTree::fit(const Eigen::MatrixXd& x, std::span<const int> labels,
                               std::span<const std::size_t> rows,
                               std::span<const std::size_t> features,
                               std::size_t features_per_split,
                               std::optional<std::size_t> max_depth, std::uint64_t seed) {
  DecisionTree tree;
  Rng rng(seed);
  std::vector<std::size_t> work(rows.begin(), rows.end());
  std::vector<std::size_t> order(features.begin(), features.end());
  std::vector<std::pair<double, int>> scratch;

  struct Pending {
    int node;
    std::size_t begin;
    std::size_t end;
    std::size_t depth;
  };
  std::vector<Pending> stack;
  tree.nodes_.emplace_back();
  stack.push_back({0, 0, work.size(), 0});

  while (!stack.empty()) {
    const Pending job = stack.back();
    stack.pop_back();
    const std::span<std::size_t> here(work.data() + job.begin, job.end - job.begin);

    std::size_t positives = 0;
    for (std::size_t r : here) positives += labels[r] == 1 ? 1 : 0;
    tree.nodes_[job.node].positive_fraction =
        static_cast<double>(positives) / static_cast<double>(here.size());

    const bool pure = positives == 0 || positives == here.size();
    const bool depth_capped = max_depth && job.depth >= *max_depth;
    if (pure || depth_capped || here.size() < 2) continue;

    // Try features in random order; keep going past features_per_split until
    // at least one feature admits a split.
    rng.shuffle(std::span<std::size_t>(order));
    Split best;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i >= features_per_split && best.feature >= 0) break;
      const Split s = best_split_on(x, labels, here, order[i], scratch);
      if (s.score > best.score) best = s;
    }
    if (best.feature < 0) continue;

    const auto col = x.col(best.feature);
    const auto mid = std::partition(here.begin(), here.end(), [&](std::size_t r) {
      return col[static_cast<Eigen::Index>(r)] <= best.threshold;
    });
    const std::size_t split_at = job.begin + static_cast<std::size_t>(mid - here.begin());

    const int left = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    const int right = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    Node& node = tree.nodes_[job.node];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left;
    node.right = right;
    stack.push_back({right, split_at, job.end, job.depth + 1});
    stack.push_back({left, job.begin, split_at, job.depth + 1});
  }
  return tree;
}

int DecisionTree::predict(const Eigen::MatrixXd& x, Eigen::Index row) const {
  int at = 0;
  while (nodes_[at].feature >= 0) {
    const Node& node = nodes_[at];
    at = x(row, node.feature) <= node.threshold ? node.left : node.right;
  }
  return nodes_[at].positive_fraction > 0.5 ? 1 : -1;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    if (node.feature < 0) continue;
    level[node.left] = level[node.right] = level[i] + 1;
    deepest = std::max(deepest, level[i] + 1);
  }
  return deepest;
}

RandomForest RandomForest::train(const Eigen::MatrixXd& x, std::span<const int> labels,
                                 std::span<const std::size_t> rows, const ForestConfig& config,
                                 std::span<const std::size_t> features) {
  config.validate();
  if (rows.empty()) throw DataError("cannot train a forest on an empty training split");
  std::size_t positives = 0;
  for (std::size_t r : rows) positives += labels[r] == 1 ? 1 : 0;
  if (positives == 0 || positives == rows.size()) {
    throw DataError("training split holds a single class; cannot train a classifier");
  }

  std::vector<std::size_t> feature_list(features.begin(), features.end());
  if (feature_list.empty()) {
    feature_list.resize(static_cast<std::size_t>(x.cols()));
    std::iota(feature_list.begin(), feature_list.end(), std::size_t{0});
  }
  const std::size_t per_split = config.resolved_features_per_split(feature_list.size());

  RandomForest forest;
  forest.tie_class_ = 2 * positives >= rows.size() ? 1 : -1;
  forest.trees_.resize(config.trees);
  parallel_for(config.trees, config.threads, [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(config.seed, t);
    std::vector<std::size_t> sample;
    if (config.bootstrap) {
      Rng rng(derive_seed(tree_seed, 1));
      sample.resize(rows.size());
      for (auto& s : sample) s = rows[rng.below(rows.size())];
    } else {
      sample.assign(rows.begin(), rows.end());
    }
    forest.trees_[t] = DecisionTree::fit(x, labels, sample, feature_list, per_split,
                                         config.max_depth, derive_seed(tree_seed, 2));
  });
  return forest;
}

std::vector<int> RandomForest::predict(const Eigen::MatrixXd& x,
                                       std::span<const std::size_t> rows) const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    long votes = 0;
    for (const auto& tree : trees_) votes += tree.predict(x, static_cast<Eigen::Index>(r));
    out.push_back(votes > 0 ? 1 : votes < 0 ? -1 : tie_class_);
  }
  return out;
}

}  // namespace sensfeat

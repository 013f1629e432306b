#pragma once

// Random forest for {-1, +1} labels: CART trees grown on bootstrap samples
// with Gini impurity and a random feature subset tried at every split.
// Each tree draws from its own seed derived from the forest seed and its
// index, so results do not depend on the number of worker threads.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace sensfeat {

struct ForestConfig {
  std::size_t trees = 100;
  std::optional<std::size_t> max_depth;           // unset: grow until pure
  std::optional<std::size_t> features_per_split;  // unset: floor(sqrt(features))
  bool bootstrap = true;
  std::uint64_t seed = 42;
  std::size_t threads = 0;

  void validate() const;
  std::size_t resolved_features_per_split(std::size_t features) const;
};

class DecisionTree {
 public:
  struct Node {
    // Leaf when feature < 0.
    int feature = -1;
    double threshold = 0.0;  // go left when x <= threshold
    int left = -1;
    int right = -1;
    double positive_fraction = 0.0;
  };

  // Grows a tree on x(rows, features); rows may repeat (bootstrap).
  static DecisionTree fit(const Eigen::MatrixXd& x, std::span<const int> labels,
                          std::span<const std::size_t> rows,
                          std::span<const std::size_t> features, std::size_t features_per_split,
                          std::optional<std::size_t> max_depth, std::uint64_t seed);

  // +1 or -1 for one row of x.
  int predict(const Eigen::MatrixXd& x, Eigen::Index row) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t depth() const;

 private:
  std::vector<Node> nodes_;
};

class RandomForest {
 public:
  // Throws DataError when `rows` is empty or single-class.
  static RandomForest train(const Eigen::MatrixXd& x, std::span<const int> labels,
                            std::span<const std::size_t> rows, const ForestConfig& config,
                            std::span<const std::size_t> features = {});

  // Majority vote of the trees; ties go to the majority class of training.
  std::vector<int> predict(const Eigen::MatrixXd& x, std::span<const std::size_t> rows) const;
  std::size_t tree_count() const { return trees_.size(); }

 private:
  std::vector<DecisionTree> trees_;
  int tie_class_ = 1;
};

}  // namespace sensfeat

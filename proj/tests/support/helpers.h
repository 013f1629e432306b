#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "sensfeat/csv.h"
#include "sensfeat/data_model.h"
#include "sensfeat/random.h"

namespace sensfeat::testing {

inline Dataset dataset_from(std::string_view csv, std::string_view schema_json) {
  return load_dataset(parse_csv(csv), parse_schema(schema_json));
}

inline Eigen::VectorXd uniform_vector(Rng& rng, Eigen::Index n, double lo = 0.0,
                                      double hi = 1.0) {
  Eigen::VectorXd v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

inline Eigen::VectorXd sign_vector(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (auto& x : v) x = rng.bernoulli(0.5) ? 1.0 : -1.0;
  return v;
}

inline Eigen::VectorXd bit_vector(Rng& rng, Eigen::Index n, double p = 0.5) {
  Eigen::VectorXd v(n);
  for (auto& x : v) x = rng.bernoulli(p) ? 1.0 : 0.0;
  return v;
}

// Balanced +-1 vector in shuffled order.
inline Eigen::VectorXd balanced_signs(Rng& rng, Eigen::Index n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i % 2 ? 1.0 : -1.0;
  rng.shuffle(std::span<double>(v));
  return Eigen::Map<Eigen::VectorXd>(v.data(), n);
}

inline std::vector<int> to_labels(const Eigen::VectorXd& v) {
  std::vector<int> out;
  for (double x : v) out.push_back(x > 0 ? 1 : -1);
  return out;
}

}  // namespace sensfeat::testing

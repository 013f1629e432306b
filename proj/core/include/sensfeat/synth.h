#pragma once

// Synthetic binary-classification data with planted feature/label dependence.
//
// Labels are drawn with P(y = +1) = label_balance. A planted indicator copies
// the label's 0/1 indicator and is then corrupted row by row: it disagrees
// with the label with probability p overall. By default both classes are
// flipped with probability p. When a group fraction f is requested the two
// classes get different flip rates, chosen so that P(indicator = 1) = f while
// the overall disagreement stays p. Noise features are uniform on [0, 1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sensfeat/data_model.h"

namespace sensfeat {

struct PlantedSpec {
  double p = 0.0;                        // corruption probability in [0, 0.5]
  std::optional<double> group_fraction;  // P(indicator = 1), in (0, 1)
};

struct SynthSpec {
  std::size_t n = 500;
  std::size_t noise_features = 0;
  std::vector<PlantedSpec> planted;
  double label_balance = 0.5;  // P(y = +1), in (0, 1)
  std::uint64_t seed = 42;

  // Throws ConfigError when out of range, including group fractions that
  // cannot be reached with corruption p.
  void validate() const;
};

struct PlantedTruth {
  std::string name;
  double p = 0.0;
  double flip_positive = 0.0;  // P(indicator = 0 | y = +1)
  double flip_negative = 0.0;  // P(indicator = 1 | y = -1)
  double observed_disagreement = 0.0;
};

struct SynthResult {
  Dataset dataset;
  std::vector<PlantedTruth> planted;
  std::vector<std::string> noise;
};

// Columns: planted_0.. (binary, categories "0","1"), then noise_0..
// (numeric); label column "label" with values "1" (positive) and "0".
// Deterministic under spec.seed. Throws DataError in the unlikely case that
// the draw yields a single class or a constant planted column.
SynthResult generate(const SynthSpec& spec);

// Schema matching the columns written by generate().
Schema synth_schema(const SynthSpec& spec);

// The planted-signal suite used for the hypothesis and kernel checks:
// label balance 0.3, planted p in {0.1, 0.2, 0.3, 0.4, 0.5}, two noise
// features.
SynthSpec planted_suite(std::size_t n, std::uint64_t seed);

}  // namespace sensfeat

#include "sensfeat/synth.h"

#include <cmath>

#include "sensfeat/error.h"
#include "sensfeat/random.h"

namespace sensfeat {
namespace {

struct FlipRates {
  double positive;
  double negative;
};

FlipRates flip_rates(const PlantedSpec& planted, double balance) {
  if (!planted.group_fraction) return {planted.p, planted.p};
  const double f = *planted.group_fraction;
  const double b = balance;
  return {(b - f + planted.p) / (2 * b), (planted.p + f - b) / (2 * (1 - b))};
}

}  // namespace

void SynthSpec::validate() const {
  if (n < 10) throw ConfigError("synthetic datasets need n >= 10");
  if (!(label_balance > 0 && label_balance < 1)) {
    throw ConfigError("label balance must lie strictly between 0 and 1");
  }
  for (const auto& planted : this->planted) {
    if (!(planted.p >= 0 && planted.p <= 0.5)) {
      throw ConfigError("corruption probability must lie in [0, 0.5]");
    }
    if (planted.group_fraction) {
      const double f = *planted.group_fraction;
      if (!(f > 0 && f < 1)) throw ConfigError("group fraction must lie strictly between 0 and 1");
      const FlipRates r = flip_rates(planted, label_balance);
      if (r.positive < 0 || r.positive > 1 || r.negative < 0 || r.negative > 1) {
        throw ConfigError("group fraction " + format_number(f) +
                          " is unreachable with corruption " + format_number(planted.p) +
                          " and label balance " + format_number(label_balance));
      }
    }
  }
}

Schema synth_schema(const SynthSpec& spec) {
  Schema schema;
  for (std::size_t i = 0; i < spec.planted.size(); ++i) {
    schema.columns.push_back({"planted_" + std::to_string(i), ColumnKind::kBinary, {"0", "1"}, {}});
  }
  for (std::size_t i = 0; i < spec.noise_features; ++i) {
    schema.columns.push_back({"noise_" + std::to_string(i), ColumnKind::kNumeric, {}, {}});
  }
  schema.label = {"label", "1", "0"};
  return schema;
}

SynthResult generate(const SynthSpec& spec) {
  spec.validate();
  SynthResult out;
  Dataset& ds = out.dataset;
  ds.schema = synth_schema(spec);

  Rng label_rng(derive_seed(spec.seed, 0));
  ds.labels.resize(spec.n);
  ds.label_text.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const bool positive = label_rng.bernoulli(spec.label_balance);
    ds.labels[i] = positive ? 1 : -1;
    ds.label_text[i] = positive ? "1" : "0";
  }

  for (std::size_t k = 0; k < spec.planted.size(); ++k) {
    const FlipRates rates = flip_rates(spec.planted[k], spec.label_balance);
    Rng rng(derive_seed(spec.seed, 1000 + k));
    CategoricalColumn col;
    col.categories = {"0", "1"};
    col.codes.resize(spec.n);
    std::size_t disagree = 0;
    for (std::size_t i = 0; i < spec.n; ++i) {
      const bool positive = ds.labels[i] == 1;
      const bool flip = rng.bernoulli(positive ? rates.positive : rates.negative);
      const bool indicator = positive != flip;
      col.codes[i] = indicator ? 1 : 0;
      disagree += flip ? 1 : 0;
    }
    out.planted.push_back({ds.schema.columns[k].name, spec.planted[k].p, rates.positive,
                           rates.negative,
                           static_cast<double>(disagree) / static_cast<double>(spec.n)});
    ds.columns.emplace_back(std::move(col));
  }

  for (std::size_t k = 0; k < spec.noise_features; ++k) {
    Rng rng(derive_seed(spec.seed, 2000 + k));
    NumericColumn col;
    col.values.resize(spec.n);
    col.text.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      col.values[i] = rng.uniform();
      col.text[i] = format_number(col.values[i]);
    }
    out.noise.push_back(ds.schema.columns[spec.planted.size() + k].name);
    ds.columns.emplace_back(std::move(col));
  }

  std::size_t positives = 0;
  for (int y : ds.labels) positives += y == 1;
  if (positives == 0 || positives == spec.n) {
    throw DataError("synthetic draw produced a single label class; change the seed or n");
  }
  for (std::size_t k = 0; k < spec.planted.size(); ++k) {
    const auto& codes = std::get<CategoricalColumn>(ds.columns[k]).codes;
    std::size_t ones = 0;
    for (auto c : codes) ones += c;
    if (ones == 0 || ones == spec.n) {
      throw DataError("synthetic draw produced a constant column '" + out.planted[k].name + "'");
    }
  }
  return out;
}

SynthSpec planted_suite(std::size_t n, std::uint64_t seed) {
  SynthSpec spec;
  spec.n = n;
  spec.noise_features = 2;
  spec.label_balance = 0.3;
  spec.seed = seed;
  for (double p : {0.1, 0.2, 0.3, 0.4, 0.5}) spec.planted.push_back({p, std::nullopt});
  return spec;
}

}  // namespace sensfeat

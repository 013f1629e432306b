#include "sensfeat/report_io.h"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sensfeat/error.h"

namespace sensfeat {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json detector_json(const DetectorConfig& c) {
  json j;
  j["kernel"] = std::string(to_string(c.dependence.kernel));
  j["epsilon"] = c.dependence.epsilon;
  if (c.threshold.mode == ThresholdRule::Mode::kMedian) {
    j["threshold"] = "median";
  } else {
    j["threshold"] = c.threshold.value;
  }
  j["max_n"] = c.max_n;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["standardize"] = c.standardize;
  return j;
}

DetectorConfig parse_detector(const json& j) {
  DetectorConfig c;
  c.dependence.kernel = parse_kernel(j.at("kernel").get<std::string>());
  c.dependence.epsilon = j.at("epsilon").get<double>();
  const json& t = j.at("threshold");
  c.threshold = t.is_string() ? ThresholdRule::parse(t.get<std::string>())
                              : ThresholdRule::fixed(t.get<double>());
  c.max_n = j.value("max_n", c.max_n);
  c.seed = j.value("seed", c.seed);
  c.threads = j.value("threads", c.threads);
  c.standardize = j.value("standardize", c.standardize);
  return c;
}

json forest_json(const ForestConfig& c) {
  json j;
  j["trees"] = c.trees;
  j["max_depth"] = c.max_depth ? json(*c.max_depth) : json(nullptr);
  j["features_per_split"] = c.features_per_split ? json(*c.features_per_split) : json("sqrt");
  j["bootstrap"] = c.bootstrap;
  j["criterion"] = "gini";
  j["seed"] = c.seed;
  return j;
}

json measures_json(const FairnessMeasures& f) {
  json j;
  for (Measure m : kAllMeasures) j[std::string(to_string(m))] = optional_number(get(f, m));
  return j;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fixed(const std::optional<double>& v, int digits = 4) {
  return v ? fixed(*v, digits) : "-";
}

}  // namespace

std::string detector_config_to_json(const DetectorConfig& config) {
  return detector_json(config).dump(2);
}

std::string forest_config_to_json(const ForestConfig& config) {
  return forest_json(config).dump(2);
}

std::string report_to_json(const DependenceReport& report) {
  json j;
  j["config"] = detector_json(report.config);
  j["rows_used"] = report.rows_used;
  j["rows_total"] = report.rows_total;
  json scores = json::array();
  for (const auto& s : report.scores) {
    json e;
    e["feature"] = s.name;
    e["kind"] = std::string(to_string(s.kind));
    e["candidate"] = s.candidate;
    json subs = json::array();
    for (const auto& sub : s.subfeatures) subs.push_back({{"name", sub.name}, {"d", sub.d}});
    e["subfeatures"] = std::move(subs);
    e["d"] = s.d;
    e["argmax"] = s.subfeatures[s.argmax].name;
    e["sensitive"] = s.sensitive;
    scores.push_back(std::move(e));
  }
  j["scores"] = std::move(scores);
  j["threshold"] = report.threshold;
  j["sensitive_features"] = report.sensitive_features;
  j["sensitive_groups"] = report.sensitive_groups;
  return j.dump(2) + "\n";
}

DependenceReport parse_report(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    DependenceReport r;
    r.config = parse_detector(j.at("config"));
    r.rows_used = j.value("rows_used", std::size_t{0});
    r.rows_total = j.value("rows_total", std::size_t{0});
    r.threshold = j.at("threshold").get<double>();
    r.sensitive_features = j.at("sensitive_features").get<std::vector<std::string>>();
    r.sensitive_groups = j.at("sensitive_groups").get<std::vector<std::string>>();
    std::size_t column = 0;
    for (const auto& e : j.at("scores")) {
      FeatureScore s;
      s.feature = r.scores.size();
      s.name = e.at("feature").get<std::string>();
      s.kind = parse_column_kind(e.value("kind", std::string("numeric")));
      s.candidate = e.value("candidate", false);
      s.d = e.at("d").get<double>();
      s.sensitive = e.value("sensitive", false);
      const std::string argmax = e.at("argmax").get<std::string>();
      bool found = false;
      for (const auto& sub : e.at("subfeatures")) {
        const std::string name = sub.at("name").get<std::string>();
        if (name == argmax && !found) {
          s.argmax = s.subfeatures.size();
          found = true;
        }
        s.subfeatures.push_back({name, column++, sub.at("d").get<double>()});
      }
      if (s.subfeatures.empty() || !found) {
        throw DataError("feature '" + s.name + "' has no subfeature named by argmax");
      }
      r.scores.push_back(std::move(s));
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

DependenceReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open report '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

std::string validation_to_json(const ValidationReport& report) {
  json j;
  j["config"] = {{"folds", report.config.folds},
                 {"forest", forest_json(report.config.forest)},
                 {"exclude_sensitive", report.config.exclude_sensitive},
                 {"kernel", std::string(to_string(report.dependence.kernel))},
                 {"epsilon", report.dependence.epsilon}};
  j["excluded_features"] = report.excluded_features;
  j["fold_accuracy"] = report.fold_accuracy;
  j["mean_accuracy"] = report.mean_accuracy();
  json sp;
  for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
    sp[std::string(to_string(kAllMeasures[m]))] = optional_number(report.spearman[m]);
  }
  j["spearman"] = std::move(sp);
  j["low_signal"] = report.low_signal;
  json records = json::array();
  for (const auto& rec : report.records) {
    json e;
    e["subfeature"] = rec.name;
    e["feature"] = rec.parent;
    e["nocco"] = rec.nocco;
    json means, undefined;
    for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
      const std::string key(to_string(kAllMeasures[m]));
      means[key] = optional_number(rec.summary[m].mean);
      undefined[key] = rec.summary[m].undefined;
    }
    e["mean"] = std::move(means);
    e["undefined_folds"] = std::move(undefined);
    json folds = json::array();
    for (const auto& f : rec.folds) folds.push_back(measures_json(f));
    e["folds"] = std::move(folds);
    records.push_back(std::move(e));
  }
  j["subfeatures"] = std::move(records);
  return j.dump(2) + "\n";
}

std::string comparison_to_json(const KernelComparison& c) {
  json j;
  j["spearman"] = optional_number(c.spearman);
  j["only_in_first"] = c.only_in_a;
  j["only_in_second"] = c.only_in_b;
  json flips = json::array();
  for (const auto& f : c.group_flips) {
    flips.push_back({{"feature", f.feature},
                     {"group_first", f.group_a},
                     {"group_second", f.group_b},
                     {"relative_gap_first", f.relative_gap_a},
                     {"relative_gap_second", f.relative_gap_b}});
  }
  j["group_flips"] = std::move(flips);
  j["consistent"] = c.consistent();
  return j.dump(2) + "\n";
}

std::string synth_truth_to_json(const SynthSpec& spec, const SynthResult& result) {
  json j;
  j["n"] = spec.n;
  j["noise_features"] = spec.noise_features;
  j["label_balance"] = spec.label_balance;
  j["seed"] = spec.seed;
  json planted = json::array();
  for (std::size_t k = 0; k < result.planted.size(); ++k) {
    const auto& t = result.planted[k];
    json e{{"name", t.name},
           {"p", t.p},
           {"flip_positive", t.flip_positive},
           {"flip_negative", t.flip_negative},
           {"observed_disagreement", t.observed_disagreement}};
    e["group_fraction"] = optional_number(spec.planted[k].group_fraction);
    planted.push_back(std::move(e));
  }
  j["planted"] = std::move(planted);
  j["noise"] = result.noise;
  return j.dump(2) + "\n";
}

void write_scatter_csv(std::ostream& out, const ValidationReport& report) {
  out << "subfeature,kernel,nocco,f_pe,f_ep,f_eo,f_oae,accuracy\n";
  const std::string kernel(to_string(report.dependence.kernel));
  const std::string accuracy = format_number(report.mean_accuracy());
  for (const auto& rec : report.records) {
    std::vector<std::string> fields{rec.name, kernel, format_number(rec.nocco)};
    for (const auto& s : rec.summary) fields.push_back(s.mean ? format_number(*s.mean) : "");
    fields.push_back(accuracy);
    write_csv_row(out, fields);
  }
}

void write_report_table(std::ostream& out, const DependenceReport& report) {
  std::size_t width = 10;
  for (const auto& s : report.scores) {
    for (const auto& sub : s.subfeatures) width = std::max(width, sub.name.size() + 2);
    width = std::max(width, s.name.size());
  }
  out << "kernel " << to_string(report.config.dependence.kernel) << ", epsilon "
      << format_number(report.config.dependence.epsilon) << ", rows " << report.rows_used << " of "
      << report.rows_total << ", seed " << report.config.seed << "\n";
  out << pad("feature", width) << "  " << pad("d", 10) << "  candidate  sensitive\n";
  for (const auto& s : report.scores) {
    out << pad(s.name, width) << "  " << pad(fixed(s.d, 6), 10) << "  "
        << pad(s.candidate ? "yes" : "no", 9) << "  " << (s.sensitive ? "YES" : "no") << "\n";
    if (s.subfeatures.size() > 1 || s.subfeatures.front().name != s.name) {
      for (std::size_t k = 0; k < s.subfeatures.size(); ++k) {
        out << pad("  " + s.subfeatures[k].name, width) << "  "
            << pad(fixed(s.subfeatures[k].d, 6), 10) << (k == s.argmax ? "  (max)" : "") << "\n";
      }
    }
  }
  out << "threshold t = " << fixed(report.threshold, 6) << " ("
      << report.config.threshold.to_string() << ")\n";
  out << "sensitive features:";
  if (report.sensitive_features.empty()) out << " none";
  for (std::size_t i = 0; i < report.sensitive_features.size(); ++i) {
    out << (i ? ", " : " ") << report.sensitive_features[i] << " [" << report.sensitive_groups[i]
        << "]";
  }
  out << "\n";
}

void write_validation_table(std::ostream& out, const ValidationReport& report) {
  std::size_t width = 10;
  for (const auto& r : report.records) width = std::max(width, r.name.size());
  out << report.config.folds << "-fold cross-validation, " << report.config.forest.trees
      << " trees, mean accuracy " << fixed(report.mean_accuracy()) << "\n";
  out << pad("subfeature", width) << "  " << pad("nocco", 8);
  for (Measure m : kAllMeasures) out << "  " << pad(std::string(to_string(m)), 7);
  out << "\n";
  for (const auto& r : report.records) {
    out << pad(r.name, width) << "  " << pad(fixed(r.nocco), 8);
    for (const auto& s : r.summary) out << "  " << pad(fixed(s.mean), 7);
    out << "\n";
  }
  out << "spearman(nocco, measure):";
  for (std::size_t m = 0; m < kAllMeasures.size(); ++m) {
    out << " " << to_string(kAllMeasures[m]) << "=" << fixed(report.spearman[m], 3);
  }
  out << "\n";
  if (report.low_signal) {
    out << "low signal: every nocco is below " << format_number(kLowSignalNocco)
        << "; the correlations are not meaningful\n";
  }
}

void write_comparison_table(std::ostream& out, const KernelComparison& c) {
  out << "spearman of feature scores: " << fixed(c.spearman, 4) << "\n";
  auto list = [&](const char* label, const std::vector<std::string>& v) {
    out << label;
    if (v.empty()) out << " none";
    for (const auto& s : v) out << " " << s;
    out << "\n";
  };
  list("sensitive only in first:", c.only_in_a);
  list("sensitive only in second:", c.only_in_b);
  for (const auto& f : c.group_flips) {
    out << "group flip in " << f.feature << ": " << f.group_a << " -> " << f.group_b
        << " (relative gap " << fixed(f.relative_gap_a) << " / " << fixed(f.relative_gap_b)
        << ")\n";
  }
  out << (c.consistent() ? "consistent\n" : "inconsistent\n");
}

}  // namespace sensfeat

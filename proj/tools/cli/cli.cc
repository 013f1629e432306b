#include "cli.h"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sensfeat/data_model.h"
#include "sensfeat/detector.h"
#include "sensfeat/error.h"
#include "sensfeat/report_io.h"
#include "sensfeat/synth.h"
#include "sensfeat/validation.h"

namespace sensfeat::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string data;
  std::string schema;
  std::string kernel = "rbf";
  double epsilon = 1e-6;
  std::string threshold = "median";
  std::size_t max_n = 2000;
  std::uint64_t seed = 42;
  std::size_t threads = 0;
  std::string out;
  bool standardize = false;

  // validate
  std::size_t folds = 10;
  std::size_t trees = 100;
  std::size_t max_depth = 0;
  bool exclude_sensitive = false;

  // synth
  std::size_t n = 500;
  std::size_t noise = 3;
  std::vector<double> planted = {0.0, 0.1, 0.25, 0.5};
  std::vector<double> group_fraction;
  double label_balance = 0.5;

  // compare
  std::string first;
  std::string second;
};

using Files = std::vector<std::pair<std::string, std::string>>;

void write_files(const std::string& dir, const Files& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& [name, content] : files) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  }
}

DetectorConfig detector_config(const Options& o) {
  DetectorConfig c;
  c.dependence.kernel = parse_kernel(o.kernel);
  c.dependence.epsilon = o.epsilon;
  c.dependence.validate();
  c.threshold = ThresholdRule::parse(o.threshold);
  if (o.max_n == 1) throw ConfigError("--max-n must be 0 (no cap) or at least 2");
  c.max_n = o.max_n;
  c.seed = o.seed;
  c.threads = o.threads;
  c.standardize = o.standardize;
  return c;
}

ValidationConfig validation_config(const Options& o) {
  ValidationConfig c;
  if (o.folds < 2) throw ConfigError("--folds must be at least 2");
  c.folds = o.folds;
  c.forest.trees = o.trees;
  if (o.max_depth > 0) c.forest.max_depth = o.max_depth;
  c.forest.seed = o.seed;
  c.forest.threads = o.threads;
  c.forest.validate();
  c.exclude_sensitive = o.exclude_sensitive;
  return c;
}

json run_config(const std::string& command, const Options& o) {
  json j;
  j["command"] = command;
  j["version"] = "0.1.0";
  if (!o.data.empty()) j["data"] = o.data;
  if (!o.schema.empty()) j["schema"] = o.schema;
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  j["out"] = o.out;
  return j;
}

Dataset load_inputs(const Options& o, std::ostream& out) {
  const Schema schema = load_schema(o.schema);
  Dataset ds = load_dataset(fs::path(o.data), schema);
  out << "loaded " << ds.rows() << " rows";
  if (ds.dropped_rows > 0) out << " (" << ds.dropped_rows << " dropped for missing values)";
  out << "\n";
  return ds;
}

int audit(const Options& o, std::ostream& out) {
  const DetectorConfig config = detector_config(o);
  const Dataset ds = load_inputs(o, out);
  const DependenceReport report = run_detector(ds, config);

  std::ostringstream table;
  write_report_table(table, report);
  out << table.str();

  json rc = run_config("audit", o);
  rc["detector"] = json::parse(detector_config_to_json(config));
  write_files(o.out, {{"report.json", report_to_json(report)},
                      {"report.txt", table.str()},
                      {"run_config.json", rc.dump(2) + "\n"}});
  return kExitOk;
}

int validate_cmd(const Options& o, std::ostream& out) {
  const DetectorConfig dconfig = detector_config(o);
  const ValidationConfig vconfig = validation_config(o);
  const Dataset ds = load_inputs(o, out);
  const DependenceReport report = run_detector(ds, dconfig);
  const EncodedDataset encoded = encode(ds, EncodeOptions{dconfig.standardize});
  const ValidationReport vr = validate(encoded, ds.labels, report, vconfig);

  std::ostringstream table;
  write_report_table(table, report);
  table << "\n";
  write_validation_table(table, vr);
  out << table.str();

  std::ostringstream scatter;
  write_scatter_csv(scatter, vr);
  json rc = run_config("validate", o);
  rc["detector"] = json::parse(detector_config_to_json(dconfig));
  rc["folds"] = vconfig.folds;
  rc["forest"] = json::parse(forest_config_to_json(vconfig.forest));
  rc["exclude_sensitive_from_training"] = vconfig.exclude_sensitive;
  write_files(o.out, {{"report.json", report_to_json(report)},
                      {"validation.json", validation_to_json(vr)},
                      {"scatter.csv", scatter.str()},
                      {"report.txt", table.str()},
                      {"run_config.json", rc.dump(2) + "\n"}});
  return kExitOk;
}

int encode_cmd(const Options& o, std::ostream& out) {
  const Dataset ds = load_inputs(o, out);
  const EncodeOptions options{o.standardize};
  const EncodedDataset encoded = encode(ds, options);
  std::ostringstream csv;
  write_encoded_csv(csv, ds, encoded, options);
  out << "encoded " << ds.features() << " features into " << encoded.cols() << " columns\n";

  json rc = run_config("encode", o);
  rc["standardize"] = o.standardize;
  write_files(o.out, {{"encoded.csv", csv.str()}, {"run_config.json", rc.dump(2) + "\n"}});
  return kExitOk;
}

int synth_cmd(const Options& o, std::ostream& out) {
  SynthSpec spec;
  spec.n = o.n;
  spec.noise_features = o.noise;
  spec.label_balance = o.label_balance;
  spec.seed = o.seed;
  if (!o.group_fraction.empty() && o.group_fraction.size() != 1 &&
      o.group_fraction.size() != o.planted.size()) {
    throw ConfigError("--group-fraction takes one value or one per planted feature");
  }
  for (std::size_t k = 0; k < o.planted.size(); ++k) {
    PlantedSpec p{o.planted[k], std::nullopt};
    if (!o.group_fraction.empty()) {
      p.group_fraction = o.group_fraction[o.group_fraction.size() == 1 ? 0 : k];
    }
    spec.planted.push_back(p);
  }
  const SynthResult result = generate(spec);
  std::ostringstream csv;
  write_dataset_csv(csv, result.dataset);
  out << "generated " << spec.n << " rows with " << spec.planted.size() << " planted and "
      << spec.noise_features << " noise features\n";

  json rc = run_config("synth", o);
  rc["synth"] = json::parse(synth_truth_to_json(spec, result));
  write_files(o.out, {{"data.csv", csv.str()},
                      {"schema.json", schema_to_json(result.dataset.schema)},
                      {"truth.json", synth_truth_to_json(spec, result)},
                      {"run_config.json", rc.dump(2) + "\n"}});
  return kExitOk;
}

int compare_cmd(const Options& o, std::ostream& out) {
  const DependenceReport a = load_report(o.first);
  const DependenceReport b = load_report(o.second);
  const KernelComparison c = compare_reports(a, b);
  write_comparison_table(out, c);
  if (!o.out.empty()) {
    json rc = run_config("compare", o);
    rc["first"] = o.first;
    rc["second"] = o.second;
    write_files(o.out,
                {{"comparison.json", comparison_to_json(c)}, {"run_config.json", rc.dump(2) + "\n"}});
  }
  return kExitOk;
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "CSV file with a header row")->required();
  cmd->add_option("--schema", o.schema, "JSON schema describing the columns")->required();
}

void add_detector_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--kernel", o.kernel, "rbf or linear")
      ->check(CLI::IsMember({"rbf", "linear"}))
      ->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "regularization of the NOCCO operator")
      ->capture_default_str();
  cmd->add_option("--threshold", o.threshold, "'median' or a fixed value")->capture_default_str();
  cmd->add_option("--max-n", o.max_n, "row cap for dependence scoring (0: no cap)")
      ->capture_default_str();
  cmd->add_flag("--standardize", o.standardize, "z-score numeric columns");
}

void add_common_options(CLI::App* cmd, Options& o, bool out_required = true) {
  cmd->add_option("--seed", o.seed, "root seed for all randomness")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
  auto* opt = cmd->add_option("--out", o.out, "output directory");
  if (out_required) opt->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Detect sensitive features with kernel dependence and check them against "
               "group fairness"};
  app.name("sensfeat");
  app.require_subcommand(1);

  auto* audit_cmd = app.add_subcommand("audit", "score features and select sensitive ones");
  add_input_options(audit_cmd, o);
  add_detector_options(audit_cmd, o);
  add_common_options(audit_cmd, o);

  auto* validate = app.add_subcommand(
      "validate", "audit, then cross-validate a random forest and measure group fairness");
  add_input_options(validate, o);
  add_detector_options(validate, o);
  add_common_options(validate, o);
  validate->add_option("--folds", o.folds, "cross-validation folds")->capture_default_str();
  validate->add_option("--trees", o.trees, "trees per forest")->capture_default_str();
  validate->add_option("--max-depth", o.max_depth, "tree depth cap (0: unlimited)")
      ->capture_default_str();
  validate->add_flag("--exclude-sensitive-from-training", o.exclude_sensitive,
                     "hide detected sensitive features from the classifier");

  auto* encode = app.add_subcommand("encode", "write the one-hot encoded matrix");
  add_input_options(encode, o);
  encode->add_flag("--standardize", o.standardize, "z-score numeric columns");
  add_common_options(encode, o);

  auto* synth = app.add_subcommand("synth", "generate a dataset with planted dependence");
  synth->add_option("--n", o.n, "rows")->capture_default_str();
  synth->add_option("--noise", o.noise, "uniform noise features")->capture_default_str();
  synth->add_option("--planted", o.planted, "corruption probability of each planted feature")
      ->delimiter(',')
      ->capture_default_str();
  synth->add_option("--group-fraction", o.group_fraction,
                    "share of rows in each planted group (one value or one per feature)")
      ->delimiter(',');
  synth->add_option("--label-balance", o.label_balance, "share of positive labels")
      ->capture_default_str();
  add_common_options(synth, o);

  auto* compare = app.add_subcommand("compare", "compare two report.json files");
  compare->add_option("first", o.first, "first report.json")->required();
  compare->add_option("second", o.second, "second report.json")->required();
  compare->add_option("--out", o.out, "output directory for comparison.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*audit_cmd) return audit(o, out);
    if (*validate) return validate_cmd(o, out);
    if (*encode) return encode_cmd(o, out);
    if (*synth) return synth_cmd(o, out);
    if (*compare) return compare_cmd(o, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace sensfeat::cli

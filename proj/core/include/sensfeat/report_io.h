#pragma once

// Serialization of detector and validation results: JSON documents for
// machines, plot-ready CSV and aligned text tables for people.

#include <iosfwd>
#include <string>
#include <string_view>

#include "sensfeat/detector.h"
#include "sensfeat/synth.h"
#include "sensfeat/validation.h"

namespace sensfeat {

// {config, scores: [{feature, kind, candidate, subfeatures: [{name, d}], d,
//  argmax, sensitive}], threshold, sensitive_features, sensitive_groups,
//  rows_used, rows_total}; argmax is the name of the attaining subfeature.
std::string report_to_json(const DependenceReport& report);
// Inverse of report_to_json. Throws DataError on malformed documents.
DependenceReport parse_report(std::string_view json_text);
DependenceReport load_report(const std::filesystem::path& path);

std::string detector_config_to_json(const DetectorConfig& config);
std::string forest_config_to_json(const ForestConfig& config);
std::string validation_to_json(const ValidationReport& report);
std::string comparison_to_json(const KernelComparison& comparison);
std::string synth_truth_to_json(const SynthSpec& spec, const SynthResult& result);

// Header: subfeature,kernel,nocco,f_pe,f_ep,f_eo,f_oae,accuracy. Measures are
// cross-fold means; a measure undefined on every fold is an empty field.
// accuracy is the mean held-out accuracy of the classifier.
void write_scatter_csv(std::ostream& out, const ValidationReport& report);

void write_report_table(std::ostream& out, const DependenceReport& report);
void write_validation_table(std::ostream& out, const ValidationReport& report);
void write_comparison_table(std::ostream& out, const KernelComparison& comparison);

}  // namespace sensfeat

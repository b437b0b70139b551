#pragma once

#include "otl/common.hpp"
#include "otl/labeling.hpp"
#include "otl/losses.hpp"
#include "otl/prepare.hpp"
#include "otl/solve_report.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace otl {

// Sample files: CSV, optional `score,label` header, one sample per row.
// Lines starting with '#' and blank lines are ignored.
std::vector<Sample<double>> read_samples(std::istream& in);
std::vector<Sample<double>> read_samples(const std::filesystem::path& path);
void write_samples(std::ostream& out, const std::vector<Sample<double>>& samples,
                   std::string_view comment = {});

/// Scores for labeling: the first column of a CSV with optional `score`
/// header (extra columns, such as a label, are ignored).
std::vector<double> read_scores(std::istream& in);

/// K rows by K columns, row k = prediction k, column l = truth l, no header.
LossSpec<double> read_loss_csv(std::istream& in);
LossSpec<double> read_loss_csv(const std::filesystem::path& path);

/// "-inf" / "inf" for infinities, shortest round-trip text otherwise.
std::string format_threshold(double value);
double parse_threshold(std::string_view token);

/// Either a solve JSON object (its "thresholds" member) or comma/newline
/// separated threshold tokens.
ThresholdVector<double> read_thresholds(std::istream& in);
void write_thresholds_csv(std::ostream& out, const ThresholdVector<double>& t);

nlohmann::json threshold_json(const ThresholdVector<double>& t);
ThresholdVector<double> thresholds_from_json(const nlohmann::json& array);

nlohmann::json solve_output_json(const SolveReport<double>& report,
                                 const PreparedProblem<double>& prep);

std::string format_number(double value);

}  // namespace otl

#pragma once
// JSON and CSV serialization of reports and logs. Field order is fixed so
// identical inputs produce byte-identical documents.

#include <span>
#include <string>

#include "simpute/distance.hpp"
#include "simpute/simulate.hpp"
#include "simpute/tune.hpp"

namespace simpute {

std::string warnings_json(const WarningLog& warnings);

std::string donor_log_json(std::span<const RowLog> donor_log,
                           std::span<const ImputedCell> imputed_cells);
inline std::string donor_log_json(const ImputationResult& result) {
  return donor_log_json(result.donor_log, result.imputed_cells);
}

std::string tuning_report_json(const TuningReport& report);
std::string pattern_reports_json(std::span<const PatternReport> reports,
                                 const CvSettings& settings);
// Flat (alpha, k, mean_score) rows.
std::string tuning_scores_csv(const TuningReport& report);

std::string benchmark_report_json(const BenchmarkReport& report,
                                  const BenchmarkSettings& settings);
std::string evaluation_records_csv(std::span<const EvaluationRecord> records);

std::string contour_csv(std::span<const ContourPoint> grid);

// One row per alpha: alpha followed by the mean's parts.
std::string trajectory_csv(std::span<const double> alpha_grid,
                           std::span<const std::vector<double>> means,
                           std::span<const std::string> column_names);

std::string truth_cells_csv(std::span<const TruthCell> cells);

}  // namespace simpute

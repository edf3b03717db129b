#pragma once
// Repeated leave-N-out cross-validation over the (alpha, k) grid, globally
// or per missingness pattern.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simpute/impute.hpp"

namespace simpute {

enum class Metric { aitchison, jsd };

const char* metric_name(Metric metric) noexcept;

// -1..1 in 0.1 steps, or 0..1 when zeros are present.
std::vector<double> default_alpha_grid(bool zeros_present);
std::vector<int> default_k_grid();

struct CvSettings {
  std::vector<int> k_grid = default_k_grid();
  std::vector<double> alpha_grid;        // empty = choose by zero presence
  int repetitions = 50;
  std::optional<Metric> metric;          // unset = jsd iff zeros present
  std::uint64_t seed = 0;
  bool keep_per_repetition = false;
  bool record_masks = false;
};

struct PairScore {
  double alpha;
  int k;
  double mean_score;
};

struct MaskDraw {
  std::size_t table_row;                    // complete row that was masked
  std::vector<std::size_t> missing_columns; // pattern applied to it
};

struct TuningReport {
  std::vector<PairScore> scores;  // alpha-major grid order
  double best_alpha = 1.0;
  int best_k = 2;
  Metric metric_used = Metric::aitchison;
  std::vector<double> alpha_grid;
  std::vector<int> k_grid;
  int repetitions = 0;
  std::uint64_t seed = 0;
  // Filled when the corresponding CvSettings flags are set.
  std::vector<std::vector<double>> per_repetition;  // [pair][rep]
  std::vector<std::vector<MaskDraw>> masks;         // [rep]
  WarningLog warnings;
};

// Draws N complete rows per repetition (N = number of observed patterns
// passed in, i.e. of incomplete rows), masks them following the observed
// patterns, imputes over the grid and scores each pair against the held-out
// truth. Deterministic given the seed. The best pair minimizes the mean
// score; ties break on smaller k, then alpha closest to 1.
TuningReport tune(const CompositionalTable& table,
                  std::span<const std::size_t> complete_rows,
                  std::span<const MissingnessPattern> observed_patterns,
                  const CvSettings& settings);

// Partition-deriving convenience.
TuningReport tune(const CompositionalTable& table, const CvSettings& settings);

struct PatternReport {
  MissingnessPattern pattern;
  std::size_t count = 0;
  std::optional<TuningReport> report;  // nullopt = infeasible
  std::string infeasible_reason;
};

// One report per observed pattern, each with that pattern's own N and an
// independent mask stream. Infeasible patterns are marked, not fatal.
std::vector<PatternReport> tune_per_pattern(
    const CompositionalTable& table,
    std::span<const std::size_t> complete_rows,
    std::span<const MissingnessPattern> observed_patterns,
    const CvSettings& settings);

}  // namespace simpute

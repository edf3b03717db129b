#pragma once
// k-NN imputation on the simplex: JSD distances with Frechet-mean
// aggregation, a pattern-adaptive variant, and the Aitchison-distance
// baseline used for benchmarking.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "simpute/frechet.hpp"
#include "simpute/table.hpp"

namespace simpute {

struct CvSettings;  // tune.hpp

struct ImputerConfig {
  int k = 2;
  double alpha = 1.0;
  bool adaptive = false;
  // Per-pattern (alpha, k) overrides; patterns not present fall back to the
  // global pair above.
  std::map<MissingnessPattern, std::pair<double, int>> per_pattern_params;
};

struct DonorRecord {
  std::size_t donor_row;  // original table row index
  double distance;
};

struct RowLog {
  std::size_t row;
  std::vector<std::size_t> missing_columns;
  double alpha = 1.0;
  int k = 0;
  std::vector<DonorRecord> donors;
};

struct ImputedCell {
  std::size_t row;
  std::size_t column;
  double value;
};

struct ImputationResult {
  CompositionalTable completed;
  std::vector<ImputedCell> imputed_cells;
  std::vector<RowLog> donor_log;
  WarningLog warnings;
};

// Imputes every incomplete row from its k nearest complete rows. Observed
// cells are preserved bit-exactly; the imputed parts of a row sum to that
// row's missing mass. Donor ties break on the original row index.
ImputationResult impute(const CompositionalTable& table,
                        const ImputerConfig& config);

// Groups incomplete rows by missingness pattern, tunes (alpha, k) per
// pattern via cross-validation, and imputes each group with its own pair.
// Patterns that cannot be tuned fall back to a globally tuned pair, and
// failing that to `fallback`, with a warning either way.
ImputationResult impute_adaptive(const CompositionalTable& table,
                                 const CvSettings& settings,
                                 const ImputerConfig& fallback = {});

enum class BaselineAggregation { mean, median };

// Comparator pipeline: Aitchison distances on the normalized observed
// blocks (strictly positive parts required), plain mean/median aggregation
// of the donor rows, then the same scale-by-missing-mass step. Rows whose
// observed block contains a zero raise zero_in_log_ratio, or are skipped
// (left incomplete) when `skip_rows_with_zeros` is set.
ImputationResult impute_baseline_aitchison(const CompositionalTable& table,
                                           int k, BaselineAggregation aggregation,
                                           bool skip_rows_with_zeros = false);

}  // namespace simpute

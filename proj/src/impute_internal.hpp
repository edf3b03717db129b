#pragma once
// Per-row machinery shared by the imputers and the CV tuner. The tuner
// prepares a row once (decomposition + donor distances) and re-aggregates
// across the (alpha, k) grid, so the two paths must stay identical.

#include <cstddef>
#include <span>
#include <vector>

#include "simpute/distance.hpp"
#include "simpute/impute.hpp"
#include "simpute/table.hpp"

namespace simpute::detail {

struct PreparedRow {
  std::size_t row_index = 0;
  DecomposeResult decomp;
  std::vector<double> distances;   // aligned with decomp.donor_rows
  std::vector<std::size_t> order;  // donor positions by (distance, row index)
};

// Decomposes the row and ranks the usable donors under `kind`. For the
// Aitchison kernel, donors with a zero part in the observed block are
// excluded (with a warning); a zero in the target's own observed block
// raises zero_in_log_ratio.
PreparedRow prepare_row(const CompositionalTable& table, std::size_t row_index,
                        std::span<const std::size_t> complete_rows,
                        DistanceKind kind, WarningLog* warnings);

enum class Aggregator { frechet, coordinate_mean, coordinate_median };

struct RowImputation {
  std::vector<double> values;       // aligned with decomp.row.missing_columns
  std::vector<DonorRecord> donors;  // the k donors used, nearest first
};

// Aggregates the k nearest full donor rows, restricts the aggregate to the
// missing block, re-closes it and scales by the missing mass.
RowImputation impute_prepared(const CompositionalTable& table,
                              const PreparedRow& prepared, int k,
                              Aggregator aggregator, double alpha,
                              WarningLog* warnings);

}  // namespace simpute::detail

#pragma once
// Compositional tables with a missingness mask, partitioning into complete
// and incomplete rows, and the per-row decomposition into observed/missing
// blocks used by the k-NN pipeline.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simpute/composition.hpp"
#include "simpute/warning.hpp"

namespace simpute {

// Complete rows are re-closed at ingestion; a raw sum further than this from
// one produces a warning record. Incomplete rows may not exceed 1 by more.
inline constexpr double kRowSumTol = 1e-6;

class MissingnessPattern {
 public:
  // `missing_columns` need not be sorted; duplicates are rejected.
  MissingnessPattern(std::vector<std::size_t> missing_columns,
                     std::size_t dimension);

  const std::vector<std::size_t>& missing_columns() const noexcept {
    return columns_;
  }
  std::size_t size() const noexcept { return columns_.size(); }
  bool contains(std::size_t column) const;

  friend bool operator==(const MissingnessPattern& a,
                         const MissingnessPattern& b) {
    return a.columns_ == b.columns_;
  }
  friend bool operator<(const MissingnessPattern& a,
                        const MissingnessPattern& b) {
    return a.columns_ < b.columns_;
  }

 private:
  std::vector<std::size_t> columns_;  // sorted, strictly increasing
};

class CompositionalTable {
 public:
  // Builds a table from row-major values and an aligned mask (1 = observed).
  // Ingestion policy: observed cells must be non-negative; complete rows are
  // re-closed (warning when the raw sum is off by more than kRowSumTol);
  // an incomplete row whose observed parts exceed 1 + kRowSumTol is rejected
  // (inconsistent_row). Masked cells are stored as zero.
  static CompositionalTable make(std::vector<double> values,
                                 std::vector<std::uint8_t> mask,
                                 std::size_t rows, std::size_t cols,
                                 std::vector<std::string> column_names = {},
                                 WarningLog* warnings = nullptr);

  // All-observed convenience used by generators.
  static CompositionalTable make_complete(std::vector<double> values,
                                          std::size_t rows, std::size_t cols,
                                          std::vector<std::string> names = {},
                                          WarningLog* warnings = nullptr);

  // Wraps already-validated data without touching it. Internal: used where
  // cells must be preserved bit-exactly (imputation results, injected
  // masks); callers guarantee the ingestion invariants hold.
  static CompositionalTable adopt(std::vector<double> values,
                                  std::vector<std::uint8_t> mask,
                                  std::size_t rows, std::size_t cols,
                                  std::vector<std::string> names);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const std::uint8_t> row_mask(std::size_t i) const {
    return {mask_.data() + i * cols_, cols_};
  }
  double value(std::size_t i, std::size_t j) const {
    return values_[i * cols_ + j];
  }
  bool observed(std::size_t i, std::size_t j) const {
    return mask_[i * cols_ + j] != 0;
  }
  bool row_complete(std::size_t i) const;
  bool complete() const;
  bool has_zero_observed_part() const;

  const std::vector<std::string>& column_names() const noexcept {
    return names_;
  }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }

  // Missing-column set of an incomplete row; missing_set_empty on a
  // complete one.
  MissingnessPattern pattern_of(std::size_t row) const;

 private:
  CompositionalTable(std::vector<double> values, std::vector<std::uint8_t> mask,
                     std::size_t rows, std::size_t cols,
                     std::vector<std::string> names)
      : values_(std::move(values)),
        mask_(std::move(mask)),
        rows_(rows),
        cols_(cols),
        names_(std::move(names)) {}

  std::vector<double> values_;
  std::vector<std::uint8_t> mask_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::string> names_;
};

struct Partition {
  std::vector<std::size_t> complete_rows;
  std::vector<std::size_t> incomplete_rows;
};

// Splits row indices by completeness; either side may be empty.
Partition partition(const CompositionalTable& table);

struct RowDecomposition {
  std::vector<double> observed_sub;  // observed parts, normalized to sum 1
  double missing_total = 0.0;        // mass left for the missing parts
  std::vector<std::size_t> observed_columns;
  std::vector<std::size_t> missing_columns;
};

struct DecomposeResult {
  RowDecomposition row;
  // Usable donors: original row indices plus their observed-block
  // sub-vectors, normalized. Donors whose observed block sums to zero are
  // excluded and listed separately.
  std::vector<std::size_t> donor_rows;
  std::vector<std::vector<double>> donor_sub;
  std::vector<std::size_t> excluded_donor_rows;
};

// Normalizes the observed block of `row_index` against the complete rows.
// Errors: missing_set_empty (row is complete), degenerate_row (observed
// parts all zero), inconsistent_row (observed sum > 1 + kRowSumTol),
// no_donors (no complete row usable).
DecomposeResult decompose_row(const CompositionalTable& table,
                              std::size_t row_index,
                              std::span<const std::size_t> complete_rows,
                              WarningLog* warnings = nullptr);

}  // namespace simpute

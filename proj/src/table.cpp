#include "simpute/table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace simpute {

MissingnessPattern::MissingnessPattern(std::vector<std::size_t> missing_columns,
                                       std::size_t dimension)
    : columns_(std::move(missing_columns)) {
  if (columns_.empty())
    fail(errc::missing_set_empty, "missingness pattern has no columns");
  std::sort(columns_.begin(), columns_.end());
  if (std::adjacent_find(columns_.begin(), columns_.end()) != columns_.end())
    fail(errc::invalid_argument, "duplicate column in missingness pattern");
  if (columns_.back() >= dimension)
    fail(errc::invalid_argument,
         "missingness pattern column out of range (dimension " +
             std::to_string(dimension) + ")");
}

bool MissingnessPattern::contains(std::size_t column) const {
  return std::binary_search(columns_.begin(), columns_.end(), column);
}

CompositionalTable CompositionalTable::make(std::vector<double> values,
                                            std::vector<std::uint8_t> mask,
                                            std::size_t rows, std::size_t cols,
                                            std::vector<std::string> names,
                                            WarningLog* warnings) {
  if (rows * cols != values.size() || values.size() != mask.size())
    fail(errc::dimension_mismatch, "values/mask shape mismatch");
  if (cols == 0) fail(errc::degenerate_input, "table with zero columns");
  if (names.empty()) {
    names.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j)
      names.push_back("c" + std::to_string(j + 1));
  } else if (names.size() != cols) {
    fail(errc::dimension_mismatch, "column name count does not match shape");
  }

  for (std::size_t i = 0; i < rows; ++i) {
    double observed_sum = 0.0;
    std::size_t observed_count = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t at = i * cols + j;
      if (!mask[at]) {
        values[at] = 0.0;  // masked cells carry no information
        continue;
      }
      const double v = values[at];
      if (std::isnan(v))
        fail(errc::invalid_argument,
             "NaN observed value at row " + std::to_string(i), i);
      if (v < 0.0)
        fail(errc::negative_value,
             "negative value at row " + std::to_string(i) + ", column " +
                 std::to_string(j),
             i);
      observed_sum += v;
      ++observed_count;
    }
    if (observed_count == cols) {
      if (!(observed_sum > 0.0))
        fail(errc::degenerate_input,
             "complete row " + std::to_string(i) + " is all zero", i);
      if (std::abs(observed_sum - 1.0) > kRowSumTol)
        warn(warnings, "row_reclosed",
             "row " + std::to_string(i) + " raw sum " +
                 std::to_string(observed_sum) + " re-closed to 1",
             i);
      for (std::size_t j = 0; j < cols; ++j) values[i * cols + j] /= observed_sum;
    } else if (observed_sum > 1.0 + kRowSumTol) {
      fail(errc::inconsistent_row,
           "observed parts of incomplete row " + std::to_string(i) +
               " sum to " + std::to_string(observed_sum) + " > 1",
           i);
    }
  }
  return CompositionalTable(std::move(values), std::move(mask), rows, cols,
                            std::move(names));
}

CompositionalTable CompositionalTable::make_complete(
    std::vector<double> values, std::size_t rows, std::size_t cols,
    std::vector<std::string> names, WarningLog* warnings) {
  return make(std::move(values), std::vector<std::uint8_t>(rows * cols, 1),
              rows, cols, std::move(names), warnings);
}

CompositionalTable CompositionalTable::adopt(std::vector<double> values,
                                             std::vector<std::uint8_t> mask,
                                             std::size_t rows, std::size_t cols,
                                             std::vector<std::string> names) {
  if (rows * cols != values.size() || values.size() != mask.size())
    fail(errc::dimension_mismatch, "values/mask shape mismatch");
  if (names.empty()) {
    names.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j)
      names.push_back("c" + std::to_string(j + 1));
  }
  return CompositionalTable(std::move(values), std::move(mask), rows, cols,
                            std::move(names));
}

bool CompositionalTable::row_complete(std::size_t i) const {
  const auto m = row_mask(i);
  return std::all_of(m.begin(), m.end(), [](std::uint8_t b) { return b != 0; });
}

bool CompositionalTable::complete() const {
  return std::all_of(mask_.begin(), mask_.end(),
                     [](std::uint8_t b) { return b != 0; });
}

bool CompositionalTable::has_zero_observed_part() const {
  for (std::size_t at = 0; at < values_.size(); ++at)
    if (mask_[at] && values_[at] == 0.0) return true;
  return false;
}

MissingnessPattern CompositionalTable::pattern_of(std::size_t row) const {
  std::vector<std::size_t> missing;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!observed(row, j)) missing.push_back(j);
  if (missing.empty())
    fail(errc::missing_set_empty,
         "row " + std::to_string(row) + " has no missing cells", row);
  return MissingnessPattern(std::move(missing), cols_);
}

Partition partition(const CompositionalTable& table) {
  Partition p;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    if (table.row_complete(i))
      p.complete_rows.push_back(i);
    else
      p.incomplete_rows.push_back(i);
  }
  return p;
}

DecomposeResult decompose_row(const CompositionalTable& table,
                              std::size_t row_index,
                              std::span<const std::size_t> complete_rows,
                              WarningLog* warnings) {
  const auto row = table.row(row_index);
  const auto mask = table.row_mask(row_index);

  DecomposeResult out;
  auto& d = out.row;
  double observed_sum = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (mask[j]) {
      d.observed_columns.push_back(j);
      observed_sum += row[j];
    } else {
      d.missing_columns.push_back(j);
    }
  }
  if (d.missing_columns.empty())
    fail(errc::missing_set_empty,
         "row " + std::to_string(row_index) + " has no missing cells",
         row_index);
  if (d.observed_columns.empty() || !(observed_sum > 0.0))
    fail(errc::degenerate_row,
         "row " + std::to_string(row_index) +
             " has no positive observed part to match donors on",
         row_index);
  if (observed_sum > 1.0 + kRowSumTol)
    fail(errc::inconsistent_row,
         "observed parts of row " + std::to_string(row_index) + " sum to " +
             std::to_string(observed_sum) + " > 1",
         row_index);

  d.missing_total = std::clamp(1.0 - observed_sum, 0.0, 1.0);
  d.observed_sub.resize(d.observed_columns.size());
  for (std::size_t t = 0; t < d.observed_columns.size(); ++t)
    d.observed_sub[t] = row[d.observed_columns[t]] / observed_sum;

  for (std::size_t donor : complete_rows) {
    const auto donor_row = table.row(donor);
    double sub_sum = 0.0;
    for (std::size_t col : d.observed_columns) sub_sum += donor_row[col];
    if (!(sub_sum > 0.0)) {
      // Normalization of an all-zero block is undefined; the donor cannot
      // be ranked for this row.
      out.excluded_donor_rows.push_back(donor);
      warn(warnings, "donor_excluded",
           "donor row " + std::to_string(donor) +
               " has an all-zero observed block for row " +
               std::to_string(row_index),
           donor);
      continue;
    }
    std::vector<double> sub(d.observed_columns.size());
    for (std::size_t t = 0; t < d.observed_columns.size(); ++t)
      sub[t] = donor_row[d.observed_columns[t]] / sub_sum;
    out.donor_rows.push_back(donor);
    out.donor_sub.push_back(std::move(sub));
  }
  if (out.donor_rows.empty())
    fail(errc::no_donors,
         "no usable complete rows for row " + std::to_string(row_index),
         row_index);
  return out;
}

}  // namespace simpute

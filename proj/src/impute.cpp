#include "simpute/impute.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "impute_internal.hpp"
#include "simpute/distance.hpp"
#include "simpute/tune.hpp"

namespace simpute {

namespace detail {

PreparedRow prepare_row(const CompositionalTable& table, std::size_t row_index,
                        std::span<const std::size_t> complete_rows,
                        DistanceKind kind, WarningLog* warnings) {
  PreparedRow out;
  out.row_index = row_index;
  out.decomp = decompose_row(table, row_index, complete_rows, warnings);

  if (kind == DistanceKind::aitchison) {
    for (double v : out.decomp.row.observed_sub)
      if (!(v > 0.0))
        fail(errc::zero_in_log_ratio,
             "row " + std::to_string(row_index) +
                 " has a zero observed part; the log-ratio baseline cannot "
                 "rank donors for it",
             row_index);
    // Donors with zero parts in the observed block cannot be log-ratio
    // compared either.
    std::vector<std::size_t> keep_rows;
    std::vector<std::vector<double>> keep_sub;
    for (std::size_t i = 0; i < out.decomp.donor_rows.size(); ++i) {
      const auto& sub = out.decomp.donor_sub[i];
      if (std::any_of(sub.begin(), sub.end(),
                      [](double v) { return !(v > 0.0); })) {
        out.decomp.excluded_donor_rows.push_back(out.decomp.donor_rows[i]);
        warn(warnings, "donor_excluded",
             "donor row " + std::to_string(out.decomp.donor_rows[i]) +
                 " has a zero part in the observed block of row " +
                 std::to_string(row_index),
             out.decomp.donor_rows[i]);
        continue;
      }
      keep_rows.push_back(out.decomp.donor_rows[i]);
      keep_sub.push_back(sub);
    }
    out.decomp.donor_rows = std::move(keep_rows);
    out.decomp.donor_sub = std::move(keep_sub);
    if (out.decomp.donor_rows.empty())
      fail(errc::no_donors,
           "no strictly positive donors for row " + std::to_string(row_index),
           row_index);
  }

  out.distances =
      distances_to_set(out.decomp.row.observed_sub, out.decomp.donor_sub, kind);
  out.order.resize(out.decomp.donor_rows.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::sort(out.order.begin(), out.order.end(),
            [&](std::size_t a, std::size_t b) {
              if (out.distances[a] != out.distances[b])
                return out.distances[a] < out.distances[b];
              return out.decomp.donor_rows[a] < out.decomp.donor_rows[b];
            });
  return out;
}

RowImputation impute_prepared(const CompositionalTable& table,
                              const PreparedRow& prepared, int k,
                              Aggregator aggregator, double alpha,
                              WarningLog* warnings) {
  const auto& decomp = prepared.decomp;
  const std::size_t row_index = prepared.row_index;
  if (k < 1) fail(errc::invalid_argument, "k must be at least 1");
  if (prepared.order.size() < static_cast<std::size_t>(k))
    fail(errc::insufficient_donors,
         "row " + std::to_string(row_index) + " has " +
             std::to_string(prepared.order.size()) + " usable donors, need " +
             std::to_string(k),
         row_index);

  RowImputation out;
  out.donors.reserve(static_cast<std::size_t>(k));
  std::vector<std::vector<double>> donor_full;
  donor_full.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::size_t pos = prepared.order[static_cast<std::size_t>(i)];
    const std::size_t donor = decomp.donor_rows[pos];
    out.donors.push_back({donor, prepared.distances[pos]});
    const auto full = table.row(donor);
    donor_full.emplace_back(full.begin(), full.end());
  }

  const std::size_t d = table.cols();
  std::vector<double> aggregate;
  switch (aggregator) {
    case Aggregator::frechet:
      aggregate = frechet_mean(donor_full, Alpha(alpha), warnings);
      break;
    case Aggregator::coordinate_mean: {
      aggregate.assign(d, 0.0);
      for (const auto& row : donor_full)
        for (std::size_t j = 0; j < d; ++j)
          aggregate[j] += row[j] / static_cast<double>(k);
      break;
    }
    case Aggregator::coordinate_median: {
      aggregate.assign(d, 0.0);
      std::vector<double> column(static_cast<std::size_t>(k));
      for (std::size_t j = 0; j < d; ++j) {
        for (int i = 0; i < k; ++i)
          column[static_cast<std::size_t>(i)] =
              donor_full[static_cast<std::size_t>(i)][j];
        std::sort(column.begin(), column.end());
        const std::size_t mid = column.size() / 2;
        aggregate[j] = column.size() % 2 == 1
                           ? column[mid]
                           : 0.5 * (column[mid - 1] + column[mid]);
      }
      break;
    }
  }

  const auto& missing = decomp.row.missing_columns;
  const double t = decomp.row.missing_total;
  out.values.resize(missing.size());
  double block_sum = 0.0;
  for (std::size_t col : missing) block_sum += aggregate[col];
  if (t == 0.0) {
    // Observed parts already account for the whole row.
    std::fill(out.values.begin(), out.values.end(), 0.0);
    warn(warnings, "zero_missing_mass",
         "row " + std::to_string(row_index) +
             " has no mass left for its missing parts; imputed zeros",
         row_index);
  } else if (!(block_sum > 0.0)) {
    // Every donor is zero across the whole missing block; the block cannot
    // be re-closed, so the mass is split evenly to keep the row's total.
    std::fill(out.values.begin(), out.values.end(),
              t / static_cast<double>(missing.size()));
    warn(warnings, "degenerate_donor_block",
         "donors are all zero on the missing block of row " +
             std::to_string(row_index) + "; its mass was split evenly",
         row_index);
  } else {
    for (std::size_t m = 0; m < missing.size(); ++m)
      out.values[m] = aggregate[missing[m]] / block_sum * t;
  }
  return out;
}

}  // namespace detail

namespace {

struct ResultBuilder {
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  std::vector<ImputedCell> cells;
  std::vector<RowLog> donor_log;
  WarningLog warnings;

  explicit ResultBuilder(const CompositionalTable& table)
      : values(table.values()), mask(table.mask()) {}

  void apply(const CompositionalTable& table, const detail::PreparedRow& row,
             const detail::RowImputation& imputation, double alpha, int k) {
    const auto& missing = row.decomp.row.missing_columns;
    RowLog log;
    log.row = row.row_index;
    log.missing_columns = missing;
    log.alpha = alpha;
    log.k = k;
    log.donors = imputation.donors;
    for (std::size_t m = 0; m < missing.size(); ++m) {
      const std::size_t at = row.row_index * table.cols() + missing[m];
      values[at] = imputation.values[m];
      mask[at] = 1;
      cells.push_back({row.row_index, missing[m], imputation.values[m]});
    }
    donor_log.push_back(std::move(log));
  }

  ImputationResult finish(const CompositionalTable& table) {
    return ImputationResult{
        CompositionalTable::adopt(std::move(values), std::move(mask),
                                  table.rows(), table.cols(),
                                  table.column_names()),
        std::move(cells), std::move(donor_log), std::move(warnings)};
  }
};

std::pair<double, int> params_for_row(const CompositionalTable& table,
                                      std::size_t row,
                                      const ImputerConfig& config) {
  if (config.adaptive && !config.per_pattern_params.empty()) {
    const auto it = config.per_pattern_params.find(table.pattern_of(row));
    if (it != config.per_pattern_params.end()) return it->second;
  }
  return {config.alpha, config.k};
}

}  // namespace

ImputationResult impute(const CompositionalTable& table,
                        const ImputerConfig& config) {
  if (config.k < 1) fail(errc::invalid_argument, "k must be at least 1");
  Alpha(config.alpha);  // range check

  const Partition part = partition(table);
  ResultBuilder builder(table);
  for (std::size_t row : part.incomplete_rows) {
    const auto [alpha, k] = params_for_row(table, row, config);
    const auto prepared = detail::prepare_row(
        table, row, part.complete_rows, DistanceKind::jsd, &builder.warnings);
    const auto imputation = detail::impute_prepared(
        table, prepared, k, detail::Aggregator::frechet, alpha,
        &builder.warnings);
    builder.apply(table, prepared, imputation, alpha, k);
  }
  return builder.finish(table);
}

ImputationResult impute_adaptive(const CompositionalTable& table,
                                 const CvSettings& settings,
                                 const ImputerConfig& fallback) {
  const Partition part = partition(table);
  if (part.incomplete_rows.empty()) return impute(table, fallback);

  std::vector<MissingnessPattern> patterns;
  patterns.reserve(part.incomplete_rows.size());
  for (std::size_t row : part.incomplete_rows)
    patterns.push_back(table.pattern_of(row));

  ImputerConfig config = fallback;
  config.adaptive = true;
  WarningLog tuning_warnings;

  const auto reports =
      tune_per_pattern(table, part.complete_rows, patterns, settings);

  // A globally tuned pair backs the patterns that cannot be tuned alone;
  // if even that is infeasible the provided fallback config stands.
  bool global_resolved = false;
  auto resolve_global = [&]() {
    if (global_resolved) return;
    global_resolved = true;
    try {
      const TuningReport global =
          tune(table, part.complete_rows, patterns, settings);
      config.alpha = global.best_alpha;
      config.k = global.best_k;
    } catch (const Error& e) {
      warn(&tuning_warnings, "global_tuning_infeasible",
           std::string("global tuning failed (") + e.what() +
               "); using fallback alpha=" + std::to_string(config.alpha) +
               ", k=" + std::to_string(config.k));
    }
  };

  for (const auto& report : reports) {
    if (report.report) {
      config.per_pattern_params[report.pattern] = {report.report->best_alpha,
                                                   report.report->best_k};
    } else {
      resolve_global();
      warn(&tuning_warnings, "pattern_fallback",
           "pattern could not be tuned (" + report.infeasible_reason +
               "); global parameters used for its rows");
    }
  }

  ImputationResult result = impute(table, config);
  result.warnings.insert(result.warnings.begin(), tuning_warnings.begin(),
                         tuning_warnings.end());
  return result;
}

ImputationResult impute_baseline_aitchison(const CompositionalTable& table,
                                           int k,
                                           BaselineAggregation aggregation,
                                           bool skip_rows_with_zeros) {
  if (k < 1) fail(errc::invalid_argument, "k must be at least 1");
  const Partition part = partition(table);
  ResultBuilder builder(table);
  const auto aggregator = aggregation == BaselineAggregation::mean
                              ? detail::Aggregator::coordinate_mean
                              : detail::Aggregator::coordinate_median;
  for (std::size_t row : part.incomplete_rows) {
    try {
      const auto prepared =
          detail::prepare_row(table, row, part.complete_rows,
                              DistanceKind::aitchison, &builder.warnings);
      const auto imputation = detail::impute_prepared(
          table, prepared, k, aggregator, 1.0, &builder.warnings);
      builder.apply(table, prepared, imputation, 1.0, k);
    } catch (const Error& e) {
      if (e.code() == errc::zero_in_log_ratio && skip_rows_with_zeros) {
        warn(&builder.warnings, "baseline_row_skipped", e.what(), row);
        continue;  // row stays incomplete
      }
      throw;
    }
  }
  return builder.finish(table);
}

}  // namespace simpute

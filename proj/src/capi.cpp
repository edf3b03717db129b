// extern-C surface over the core library. Exceptions are mapped to status
// codes; the message of the last failure is kept per thread.

#include "simpute.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "simpute/csv.hpp"
#include "simpute/distance.hpp"
#include "simpute/frechet.hpp"
#include "simpute/impute.hpp"
#include "simpute/reports.hpp"
#include "simpute/simulate.hpp"
#include "simpute/table.hpp"
#include "simpute/tune.hpp"

struct simpute_table {
  simpute::CompositionalTable t;
};

struct simpute_result {
  simpute_table completed;
  std::vector<simpute::ImputedCell> cells;
  std::vector<simpute::RowLog> donor_log;
  simpute::WarningLog warnings;

  explicit simpute_result(simpute::ImputationResult r)
      : completed{std::move(r.completed)},
        cells(std::move(r.imputed_cells)),
        donor_log(std::move(r.donor_log)),
        warnings(std::move(r.warnings)) {}
};

namespace {

thread_local std::string g_last_error;

simpute_status map_code(simpute::errc code) {
  using simpute::errc;
  switch (code) {
    case errc::ok: return SIMPUTE_OK;
    case errc::invalid_argument: return SIMPUTE_ERR_INVALID_ARGUMENT;
    case errc::degenerate_input: return SIMPUTE_ERR_DEGENERATE_INPUT;
    case errc::negative_value: return SIMPUTE_ERR_NEGATIVE_VALUE;
    case errc::dimension_mismatch: return SIMPUTE_ERR_DIMENSION_MISMATCH;
    case errc::zero_in_log_ratio: return SIMPUTE_ERR_ZERO_IN_LOG_RATIO;
    case errc::insufficient_donors: return SIMPUTE_ERR_INSUFFICIENT_DONORS;
    case errc::no_donors: return SIMPUTE_ERR_NO_DONORS;
    case errc::degenerate_row: return SIMPUTE_ERR_DEGENERATE_ROW;
    case errc::missing_set_empty: return SIMPUTE_ERR_MISSING_SET_EMPTY;
    case errc::inconsistent_row: return SIMPUTE_ERR_INCONSISTENT_ROW;
    case errc::alpha_zero_conflict: return SIMPUTE_ERR_ALPHA_ZERO_CONFLICT;
    case errc::empty_input: return SIMPUTE_ERR_EMPTY_INPUT;
    case errc::cv_infeasible: return SIMPUTE_ERR_CV_INFEASIBLE;
    case errc::metric_zero_conflict: return SIMPUTE_ERR_METRIC_ZERO_CONFLICT;
    case errc::parse_error: return SIMPUTE_ERR_PARSE;
    case errc::io_error: return SIMPUTE_ERR_IO;
    case errc::invalid_resolution: return SIMPUTE_ERR_INVALID_RESOLUTION;
    case errc::too_few_rows: return SIMPUTE_ERR_TOO_FEW_ROWS;
    case errc::degenerate_spec: return SIMPUTE_ERR_DEGENERATE_SPEC;
    case errc::internal: return SIMPUTE_ERR_INTERNAL;
  }
  return SIMPUTE_ERR_INTERNAL;
}

template <typename Fn>
simpute_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SIMPUTE_OK;
  } catch (const simpute::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SIMPUTE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SIMPUTE_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

simpute::CsvSchema to_schema(const simpute_csv_options* options) {
  simpute::CsvSchema schema;
  if (options == nullptr) return schema;
  if (options->delimiter != 0) schema.delimiter = options->delimiter;
  if (options->na_tokens != nullptr) {
    schema.na_tokens.clear();
    std::string_view spec(options->na_tokens);
    std::size_t begin = 0;
    while (begin <= spec.size()) {
      const std::size_t at = spec.find('|', begin);
      if (at == std::string_view::npos) {
        schema.na_tokens.emplace_back(spec.substr(begin));
        break;
      }
      schema.na_tokens.emplace_back(spec.substr(begin, at - begin));
      begin = at + 1;
    }
  }
  schema.header = options->header != 0;
  if (options->precision > 0) schema.precision = options->precision;
  return schema;
}

std::vector<int> to_k_grid(const int* grid, size_t len) {
  if (grid == nullptr || len == 0) return simpute::default_k_grid();
  return std::vector<int>(grid, grid + len);
}

std::vector<double> to_alpha_grid(const double* grid, size_t len) {
  if (grid == nullptr || len == 0) return {};  // auto by zero presence
  return std::vector<double>(grid, grid + len);
}

void require(bool ok, const char* what) {
  if (!ok) simpute::fail(simpute::errc::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* simpute_version(void) { return "0.1.0"; }

const char* simpute_status_name(simpute_status status) {
  switch (status) {
    case SIMPUTE_OK: return "ok";
    case SIMPUTE_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SIMPUTE_ERR_DEGENERATE_INPUT: return "degenerate_input";
    case SIMPUTE_ERR_NEGATIVE_VALUE: return "negative_value";
    case SIMPUTE_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case SIMPUTE_ERR_ZERO_IN_LOG_RATIO: return "zero_in_log_ratio";
    case SIMPUTE_ERR_INSUFFICIENT_DONORS: return "insufficient_donors";
    case SIMPUTE_ERR_NO_DONORS: return "no_donors";
    case SIMPUTE_ERR_DEGENERATE_ROW: return "degenerate_row";
    case SIMPUTE_ERR_MISSING_SET_EMPTY: return "missing_set_empty";
    case SIMPUTE_ERR_INCONSISTENT_ROW: return "inconsistent_row";
    case SIMPUTE_ERR_ALPHA_ZERO_CONFLICT: return "alpha_zero_conflict";
    case SIMPUTE_ERR_EMPTY_INPUT: return "empty_input";
    case SIMPUTE_ERR_CV_INFEASIBLE: return "cv_infeasible";
    case SIMPUTE_ERR_METRIC_ZERO_CONFLICT: return "metric_zero_conflict";
    case SIMPUTE_ERR_PARSE: return "parse_error";
    case SIMPUTE_ERR_IO: return "io_error";
    case SIMPUTE_ERR_INVALID_RESOLUTION: return "invalid_resolution";
    case SIMPUTE_ERR_TOO_FEW_ROWS: return "too_few_rows";
    case SIMPUTE_ERR_DEGENERATE_SPEC: return "degenerate_spec";
    case SIMPUTE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* simpute_last_error_message(void) { return g_last_error.c_str(); }

void simpute_string_free(char* s) { std::free(s); }

simpute_status simpute_table_read_csv(const char* path,
                                      const simpute_csv_options* options,
                                      simpute_table** out_table,
                                      char** out_warnings_json) {
  return guarded([&] {
    require(path != nullptr && out_table != nullptr, "null argument");
    auto loaded = simpute::read_table(path, to_schema(options));
    if (out_warnings_json != nullptr)
      *out_warnings_json = dup_string(simpute::warnings_json(loaded.warnings));
    *out_table = new simpute_table{std::move(loaded.table)};
  });
}

simpute_status simpute_table_write_csv(const simpute_table* table,
                                       const char* path,
                                       const simpute_csv_options* options) {
  return guarded([&] {
    require(table != nullptr && path != nullptr, "null argument");
    simpute::write_table(table->t, path, to_schema(options));
  });
}

simpute_status simpute_table_from_dense(const double* values,
                                        const uint8_t* mask, size_t rows,
                                        size_t cols,
                                        const char* const* column_names,
                                        simpute_table** out_table,
                                        char** out_warnings_json) {
  return guarded([&] {
    require(values != nullptr && out_table != nullptr, "null argument");
    std::vector<double> v(values, values + rows * cols);
    std::vector<std::uint8_t> m =
        mask != nullptr ? std::vector<std::uint8_t>(mask, mask + rows * cols)
                        : std::vector<std::uint8_t>(rows * cols, 1);
    std::vector<std::string> names;
    if (column_names != nullptr)
      for (size_t j = 0; j < cols; ++j) names.emplace_back(column_names[j]);
    simpute::WarningLog warnings;
    auto table = simpute::CompositionalTable::make(
        std::move(v), std::move(m), rows, cols, std::move(names), &warnings);
    if (out_warnings_json != nullptr)
      *out_warnings_json = dup_string(simpute::warnings_json(warnings));
    *out_table = new simpute_table{std::move(table)};
  });
}

size_t simpute_table_rows(const simpute_table* table) {
  return table == nullptr ? 0 : table->t.rows();
}

size_t simpute_table_cols(const simpute_table* table) {
  return table == nullptr ? 0 : table->t.cols();
}

simpute_status simpute_table_value(const simpute_table* table, size_t row,
                                   size_t col, double* out_value,
                                   int* out_observed) {
  return guarded([&] {
    require(table != nullptr && out_value != nullptr, "null argument");
    require(row < table->t.rows() && col < table->t.cols(),
            "cell index out of range");
    *out_value = table->t.value(row, col);
    if (out_observed != nullptr)
      *out_observed = table->t.observed(row, col) ? 1 : 0;
  });
}

const char* simpute_table_column_name(const simpute_table* table, size_t col) {
  if (table == nullptr || col >= table->t.cols()) return nullptr;
  return table->t.column_names()[col].c_str();
}

void simpute_table_free(simpute_table* table) { delete table; }

simpute_status simpute_jsd(const double* x, const double* y, size_t d,
                           double* out) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && out != nullptr, "null argument");
    const auto cx = simpute::closure({x, d});
    const auto cy = simpute::closure({y, d});
    *out = simpute::jsd(cx, cy);
  });
}

simpute_status simpute_jsd_via_kld(const double* x, const double* y, size_t d,
                                   double* out) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && out != nullptr, "null argument");
    const auto cx = simpute::closure({x, d});
    const auto cy = simpute::closure({y, d});
    *out = simpute::jsd_via_kld(cx, cy);
  });
}

simpute_status simpute_aitchison_distance(const double* x, const double* y,
                                          size_t d, double* out) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && out != nullptr, "null argument");
    const auto cx = simpute::closure({x, d});
    const auto cy = simpute::closure({y, d});
    *out = simpute::aitchison_distance(cx, cy);
  });
}

simpute_status simpute_frechet_mean(const double* rows, size_t n, size_t d,
                                    double alpha, double* out) {
  return guarded([&] {
    require(rows != nullptr && out != nullptr, "null argument");
    std::vector<std::vector<double>> data(n);
    for (size_t i = 0; i < n; ++i)
      data[i].assign(rows + i * d, rows + (i + 1) * d);
    const auto mean = simpute::frechet_mean(data, simpute::Alpha(alpha));
    std::copy(mean.begin(), mean.end(), out);
  });
}

simpute_status simpute_impute(const simpute_table* table,
                              const simpute_impute_options* options,
                              simpute_result** out_result) {
  return guarded([&] {
    require(table != nullptr && out_result != nullptr, "null argument");
    simpute_impute_options defaults{};
    const simpute_impute_options& o = options != nullptr ? *options : defaults;
    const int k = o.k > 0 ? o.k : 2;
    const double alpha = options != nullptr ? o.alpha : 1.0;

    simpute::ImputationResult result = [&] {
      if (o.baseline == SIMPUTE_BASELINE_AITCHISON_MEAN)
        return simpute::impute_baseline_aitchison(
            table->t, k, simpute::BaselineAggregation::mean);
      if (o.baseline == SIMPUTE_BASELINE_AITCHISON_MEDIAN)
        return simpute::impute_baseline_aitchison(
            table->t, k, simpute::BaselineAggregation::median);
      if (o.adaptive != 0) {
        simpute::CvSettings cv;
        cv.k_grid = to_k_grid(o.k_grid, o.k_grid_len);
        cv.alpha_grid = to_alpha_grid(o.alpha_grid, o.alpha_grid_len);
        if (o.cv_repetitions > 0) cv.repetitions = o.cv_repetitions;
        cv.seed = o.seed;
        simpute::ImputerConfig fallback;
        fallback.k = k;
        fallback.alpha = alpha;
        return simpute::impute_adaptive(table->t, cv, fallback);
      }
      simpute::ImputerConfig config;
      config.k = k;
      config.alpha = alpha;
      return simpute::impute(table->t, config);
    }();
    *out_result = new simpute_result(std::move(result));
  });
}

const simpute_table* simpute_result_table(const simpute_result* result) {
  return result == nullptr ? nullptr : &result->completed;
}

size_t simpute_result_imputed_count(const simpute_result* result) {
  return result == nullptr ? 0 : result->cells.size();
}

simpute_status simpute_result_imputed_cell(const simpute_result* result,
                                           size_t index, size_t* out_row,
                                           size_t* out_col, double* out_value) {
  return guarded([&] {
    require(result != nullptr, "null argument");
    require(index < result->cells.size(), "cell index out of range");
    const auto& cell = result->cells[index];
    if (out_row != nullptr) *out_row = cell.row;
    if (out_col != nullptr) *out_col = cell.column;
    if (out_value != nullptr) *out_value = cell.value;
  });
}

simpute_status simpute_result_donor_log_json(const simpute_result* result,
                                             char** out_json) {
  return guarded([&] {
    require(result != nullptr && out_json != nullptr, "null argument");
    *out_json = dup_string(simpute::donor_log_json(result->donor_log,
                                                   result->cells));
  });
}

simpute_status simpute_result_warnings_json(const simpute_result* result,
                                            char** out_json) {
  return guarded([&] {
    require(result != nullptr && out_json != nullptr, "null argument");
    *out_json = dup_string(simpute::warnings_json(result->warnings));
  });
}

void simpute_result_free(simpute_result* result) { delete result; }

simpute_status simpute_tune(const simpute_table* table,
                            const simpute_cv_options* options,
                            char** out_report_json) {
  return guarded([&] {
    require(table != nullptr && out_report_json != nullptr, "null argument");
    simpute::CvSettings settings;
    if (options != nullptr) {
      settings.k_grid = to_k_grid(options->k_grid, options->k_grid_len);
      settings.alpha_grid =
          to_alpha_grid(options->alpha_grid, options->alpha_grid_len);
      if (options->repetitions > 0) settings.repetitions = options->repetitions;
      if (options->metric == SIMPUTE_METRIC_AITCHISON)
        settings.metric = simpute::Metric::aitchison;
      else if (options->metric == SIMPUTE_METRIC_JSD)
        settings.metric = simpute::Metric::jsd;
      settings.seed = options->seed;
    }
    if (options != nullptr && options->per_pattern != 0) {
      const auto part = simpute::partition(table->t);
      std::vector<simpute::MissingnessPattern> patterns;
      for (std::size_t row : part.incomplete_rows)
        patterns.push_back(table->t.pattern_of(row));
      const auto reports = simpute::tune_per_pattern(
          table->t, part.complete_rows, patterns, settings);
      *out_report_json =
          dup_string(simpute::pattern_reports_json(reports, settings));
    } else {
      const auto report = simpute::tune(table->t, settings);
      *out_report_json = dup_string(simpute::tuning_report_json(report));
    }
  });
}

namespace {

void injection_out(simpute::Injection injection, simpute_table** out_masked,
                   char** out_truth_csv, char** out_warnings_json) {
  require(out_masked != nullptr, "null argument");
  if (out_truth_csv != nullptr)
    *out_truth_csv = dup_string(simpute::truth_cells_csv(injection.truth));
  if (out_warnings_json != nullptr)
    *out_warnings_json = dup_string(simpute::warnings_json(injection.warnings));
  *out_masked = new simpute_table{std::move(injection.masked)};
}

}  // namespace

simpute_status simpute_inject_mcar(const simpute_table* table,
                                   double row_fraction,
                                   double component_fraction, uint64_t seed,
                                   simpute_table** out_masked,
                                   char** out_truth_csv,
                                   char** out_warnings_json) {
  return guarded([&] {
    require(table != nullptr, "null argument");
    simpute::InjectionSpec spec;
    spec.row_fraction = row_fraction;
    spec.component_fraction = component_fraction;
    spec.seed = seed;
    injection_out(simpute::inject_mcar(table->t, spec), out_masked,
                  out_truth_csv, out_warnings_json);
  });
}

simpute_status simpute_inject_mar_sorted(const simpute_table* table,
                                         double row_fraction, uint64_t seed,
                                         simpute_table** out_masked,
                                         char** out_truth_csv,
                                         char** out_warnings_json) {
  return guarded([&] {
    require(table != nullptr, "null argument");
    simpute::InjectionSpec spec;
    spec.row_fraction = row_fraction;
    spec.seed = seed;
    injection_out(simpute::inject_mar_sorted(table->t, spec), out_masked,
                  out_truth_csv, out_warnings_json);
  });
}

simpute_status simpute_inject_aggregate(const simpute_table* table,
                                        const size_t* group_columns,
                                        size_t group_len, double row_fraction,
                                        uint64_t seed,
                                        simpute_table** out_masked,
                                        char** out_truth_csv,
                                        char** out_warnings_json) {
  return guarded([&] {
    require(table != nullptr && group_columns != nullptr, "null argument");
    injection_out(
        simpute::inject_aggregation_random(
            table->t, {group_columns, group_len}, row_fraction, seed),
        out_masked, out_truth_csv, out_warnings_json);
  });
}

simpute_status simpute_generate_dirichlet(size_t n, size_t d, uint64_t seed,
                                          simpute_table** out_table) {
  return guarded([&] {
    require(out_table != nullptr, "null argument");
    *out_table = new simpute_table{simpute::generate_dirichlet(n, d, seed)};
  });
}

simpute_status simpute_benchmark(const simpute_benchmark_options* options,
                                 char** out_report_json,
                                 char** out_records_csv) {
  return guarded([&] {
    require(out_report_json != nullptr, "null argument");
    simpute::BenchmarkSettings settings;
    if (options != nullptr) {
      if (options->sizes != nullptr && options->sizes_len > 0) {
        settings.sizes.clear();
        for (size_t i = 0; i < options->sizes_len; ++i)
          settings.sizes.emplace_back(options->sizes[2 * i],
                                      options->sizes[2 * i + 1]);
      }
      settings.k_grid = to_k_grid(options->k_grid, options->k_grid_len);
      if (options->repetitions > 0) settings.repetitions = options->repetitions;
      settings.seed = options->seed;
      if (options->row_fraction > 0.0)
        settings.row_fraction = options->row_fraction;
      if (options->component_fraction > 0.0)
        settings.component_fraction = options->component_fraction;
      settings.methods = {simpute::MethodKind::jsd_knn,
                          options->baseline_mean != 0
                              ? simpute::MethodKind::aitchison_mean
                              : simpute::MethodKind::aitchison_median};
    }
    const auto report = simpute::benchmark(settings);
    *out_report_json =
        dup_string(simpute::benchmark_report_json(report, settings));
    if (out_records_csv != nullptr)
      *out_records_csv =
          dup_string(simpute::evaluation_records_csv(report.records));
  });
}

simpute_status simpute_contour_grid_csv(simpute_distance_kind kind,
                                        int resolution, char** out_csv) {
  return guarded([&] {
    require(out_csv != nullptr, "null argument");
    const auto center = simpute::Composition::close({1.0, 1.0, 1.0});
    const auto grid = simpute::contour_grid(
        center, resolution,
        kind == SIMPUTE_DISTANCE_AITCHISON ? simpute::DistanceKind::aitchison
                                           : simpute::DistanceKind::jsd);
    *out_csv = dup_string(simpute::contour_csv(grid));
  });
}

simpute_status simpute_trajectory_csv(const simpute_table* table,
                                      const double* alphas, size_t alphas_len,
                                      char** out_csv) {
  return guarded([&] {
    require(table != nullptr && out_csv != nullptr, "null argument");
    const auto part = simpute::partition(table->t);
    if (part.complete_rows.empty())
      simpute::fail(simpute::errc::empty_input,
                    "no complete rows to average");
    std::vector<std::vector<double>> rows;
    rows.reserve(part.complete_rows.size());
    bool zeros = false;
    for (std::size_t i : part.complete_rows) {
      const auto row = table->t.row(i);
      rows.emplace_back(row.begin(), row.end());
      for (double v : row) zeros = zeros || v == 0.0;
    }
    std::vector<double> grid =
        alphas != nullptr && alphas_len > 0
            ? std::vector<double>(alphas, alphas + alphas_len)
            : simpute::default_alpha_grid(zeros);
    const auto path = simpute::frechet_trajectory(rows, grid);
    *out_csv = dup_string(
        simpute::trajectory_csv(grid, path, table->t.column_names()));
  });
}

}  // extern "C"

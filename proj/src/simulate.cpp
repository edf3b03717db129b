#include "simpute/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "simpute/distance.hpp"
#include "simpute/rng.hpp"

namespace simpute {

namespace {

void require_complete(const CompositionalTable& table) {
  if (!table.complete())
    fail(errc::invalid_argument, "injection requires a complete table");
}

void check_fractions(const InjectionSpec& spec) {
  if (!(spec.row_fraction > 0.0 && spec.row_fraction <= 1.0))
    fail(errc::invalid_argument, "row fraction must lie in (0, 1]");
  if (!(spec.component_fraction > 0.0 && spec.component_fraction < 1.0))
    fail(errc::invalid_argument, "component fraction must lie in (0, 1)");
}

Injection apply_mask(const CompositionalTable& table,
                     const std::vector<std::pair<std::size_t,
                                                 std::vector<std::size_t>>>&
                         row_patterns,
                     WarningLog warnings) {
  std::vector<double> values = table.values();
  std::vector<std::uint8_t> mask = table.mask();
  std::vector<TruthCell> truth;
  for (const auto& [row, cols] : row_patterns) {
    for (std::size_t col : cols) {
      const std::size_t at = row * table.cols() + col;
      truth.push_back({row, col, values[at]});
      values[at] = 0.0;
      mask[at] = 0;
    }
  }
  return Injection{CompositionalTable::adopt(std::move(values), std::move(mask),
                                             table.rows(), table.cols(),
                                             table.column_names()),
                   std::move(truth), std::move(warnings)};
}

}  // namespace

Injection inject_mcar(const CompositionalTable& table,
                      const InjectionSpec& spec) {
  require_complete(table);
  check_fractions(spec);
  const std::size_t n = table.rows();
  const std::size_t d = table.cols();
  if (d < 2) fail(errc::invalid_argument, "need at least 2 components");

  const auto n_rows = static_cast<std::size_t>(
      std::llround(spec.row_fraction * static_cast<double>(n)));
  if (n_rows == 0)
    fail(errc::degenerate_spec, "row fraction selects no rows");
  std::size_t n_comp = static_cast<std::size_t>(
      std::ceil(spec.component_fraction * static_cast<double>(d)));
  WarningLog warnings;
  if (n_comp >= d) {
    warn(&warnings, "component_count_clamped",
         "component fraction would mask whole rows; clamped to " +
             std::to_string(d - 1) + " components");
    n_comp = d - 1;
  }

  auto row_rng = make_rng(spec.seed, "inject.rows");
  auto col_rng = make_rng(spec.seed, "inject.cols");
  const auto rows = sample_without_replacement(n, std::min(n_rows, n), row_rng);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> row_patterns;
  row_patterns.reserve(rows.size());
  for (std::size_t row : rows)
    row_patterns.emplace_back(row,
                              sample_without_replacement(d, n_comp, col_rng));
  return apply_mask(table, row_patterns, std::move(warnings));
}

Injection inject_mar_sorted(
    const CompositionalTable& table, const InjectionSpec& spec,
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
        patterns) {
  require_complete(table);
  if (!(spec.row_fraction > 0.0 && spec.row_fraction <= 1.0))
    fail(errc::invalid_argument, "row fraction must lie in (0, 1]");
  const std::size_t n = table.rows();
  const std::size_t d = table.cols();
  if (n < 2) fail(errc::too_few_rows, "need at least 2 rows to split in half");
  if (d < 3 && !patterns)
    fail(errc::invalid_argument,
         "need at least 3 components for two disjoint non-driving patterns");

  std::vector<std::size_t> low_cols, high_cols;
  if (patterns) {
    low_cols = patterns->first;
    high_cols = patterns->second;
    for (const auto* cols : {&low_cols, &high_cols}) {
      if (cols->empty())
        fail(errc::invalid_argument, "empty component pattern");
      for (std::size_t c : *cols) {
        if (c == 0)
          fail(errc::invalid_argument,
               "the driving (first) component cannot be masked");
        if (c >= d) fail(errc::invalid_argument, "pattern column out of range");
      }
    }
    std::set<std::size_t> low_set(low_cols.begin(), low_cols.end());
    for (std::size_t c : high_cols)
      if (low_set.count(c))
        fail(errc::invalid_argument, "the two patterns must be disjoint");
  } else {
    // Contiguous halves of the non-driving columns.
    const std::size_t m = (d - 1) / 2;
    for (std::size_t c = 1; c <= m; ++c) low_cols.push_back(c);
    for (std::size_t c = m + 1; c < d; ++c) high_cols.push_back(c);
  }

  // Rank rows by the first component; ties keep table order.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.value(a, 0) < table.value(b, 0);
  });
  const std::size_t half = (n + 1) / 2;

  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> row_patterns;
  WarningLog warnings;
  const auto mask_half = [&](std::size_t begin, std::size_t end,
                             const std::vector<std::size_t>& cols,
                             std::string_view stream) {
    const std::size_t size = end - begin;
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(spec.row_fraction * static_cast<double>(size))));
    auto rng = make_rng(spec.seed, stream);
    for (std::size_t pos :
         sample_without_replacement(size, std::min(count, size), rng))
      row_patterns.emplace_back(order[begin + pos], cols);
  };
  mask_half(0, half, low_cols, "inject.mar.low");
  mask_half(half, n, high_cols, "inject.mar.high");
  return apply_mask(table, row_patterns, std::move(warnings));
}

Injection inject_aggregation(const CompositionalTable& table,
                             std::span<const std::size_t> component_group,
                             std::span<const std::size_t> selected_rows) {
  std::vector<std::size_t> group(component_group.begin(),
                                 component_group.end());
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  if (group.size() < 2)
    fail(errc::invalid_argument,
         "a component group needs at least 2 distinct columns");
  if (group.back() >= table.cols())
    fail(errc::invalid_argument, "group column out of range");
  if (selected_rows.empty())
    fail(errc::degenerate_spec, "no rows selected for aggregation");

  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> row_patterns;
  for (std::size_t row : selected_rows) {
    if (row >= table.rows())
      fail(errc::invalid_argument, "selected row out of range");
    for (std::size_t col : group)
      if (!table.observed(row, col))
        fail(errc::invalid_argument,
             "row " + std::to_string(row) +
                 " is missing a group component already",
             row);
    row_patterns.emplace_back(row, group);
  }
  return apply_mask(table, row_patterns, {});
}

Injection inject_aggregation_random(const CompositionalTable& table,
                                    std::span<const std::size_t> component_group,
                                    double row_fraction, std::uint64_t seed) {
  if (!(row_fraction > 0.0 && row_fraction <= 1.0))
    fail(errc::invalid_argument, "row fraction must lie in (0, 1]");
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    bool ok = true;
    for (std::size_t col : component_group)
      if (col >= table.cols() || !table.observed(i, col)) ok = false;
    if (ok) eligible.push_back(i);
  }
  if (eligible.empty())
    fail(errc::degenerate_spec, "no rows have the whole group observed");
  const auto count = static_cast<std::size_t>(
      std::llround(row_fraction * static_cast<double>(eligible.size())));
  if (count == 0) fail(errc::degenerate_spec, "row fraction selects no rows");
  auto rng = make_rng(seed, "inject.agg");
  std::vector<std::size_t> selected;
  for (std::size_t pos :
       sample_without_replacement(eligible.size(), count, rng))
    selected.push_back(eligible[pos]);
  return inject_aggregation(table, component_group, selected);
}

CompositionalTable generate_dirichlet(std::size_t n,
                                      std::span<const double> params,
                                      std::uint64_t seed) {
  if (n < 1) fail(errc::invalid_argument, "need at least 1 row");
  if (params.size() < 2) fail(errc::invalid_argument, "need at least 2 parts");
  for (double a : params)
    if (!(a > 0.0))
      fail(errc::invalid_argument, "Dirichlet parameters must be positive");

  auto rng = make_rng(seed, "dirichlet.rows");
  const std::size_t d = params.size();
  std::vector<double> values(n * d);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      std::gamma_distribution<double> gamma(params[j], 1.0);
      // Keep parts strictly positive even under extreme underflow.
      row[j] = std::max(gamma(rng), std::numeric_limits<double>::min());
      sum += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) values[i * d + j] = row[j] / sum;
  }
  return CompositionalTable::make_complete(std::move(values), n, d);
}

CompositionalTable generate_dirichlet(std::size_t n, std::size_t d,
                                      std::uint64_t seed) {
  if (d < 2) fail(errc::invalid_argument, "need at least 2 parts");
  auto rng = make_rng(seed, "dirichlet.params");
  std::uniform_real_distribution<double> range(0.5, 5.0);
  std::vector<double> params(d);
  for (auto& a : params) a = range(rng);
  return generate_dirichlet(n, params, seed);
}

double evaluate(std::span<const TruthCell> truth,
                const CompositionalTable& completed, Metric metric) {
  std::set<std::size_t> rows;
  for (const auto& cell : truth) {
    if (cell.row >= completed.rows() || cell.column >= completed.cols())
      fail(errc::invalid_argument, "truth cell out of range");
    rows.insert(cell.row);
  }
  if (rows.empty()) return 0.0;

  double total = 0.0;
  std::vector<double> truth_row(completed.cols());
  for (std::size_t row : rows) {
    const auto imputed = completed.row(row);
    std::copy(imputed.begin(), imputed.end(), truth_row.begin());
    for (const auto& cell : truth)
      if (cell.row == row) truth_row[cell.column] = cell.value;
    try {
      total += metric == Metric::aitchison
                   ? aitchison_distance(truth_row, imputed)
                   : jsd(truth_row, imputed);
    } catch (const Error& e) {
      if (e.code() == errc::zero_in_log_ratio)
        fail(errc::metric_zero_conflict,
             "Aitchison scoring hit a zero part at row " + std::to_string(row),
             row);
      throw;
    }
  }
  return total / static_cast<double>(rows.size());
}

const char* method_name(MethodKind method) noexcept {
  switch (method) {
    case MethodKind::jsd_knn: return "jsd-knn";
    case MethodKind::aitchison_mean: return "aitchison-knn-mean";
    case MethodKind::aitchison_median: return "aitchison-knn-median";
  }
  return "unknown";
}

BenchmarkReport benchmark(const BenchmarkSettings& settings) {
  if (settings.methods.empty())
    fail(errc::invalid_argument, "no methods to benchmark");
  if (settings.sizes.empty())
    fail(errc::invalid_argument, "no table sizes to benchmark");
  if (settings.k_grid.empty()) fail(errc::invalid_argument, "empty k grid");
  if (settings.repetitions < 1)
    fail(errc::invalid_argument, "repetitions must be at least 1");

  using clock = std::chrono::steady_clock;
  BenchmarkReport report;

  for (std::size_t s = 0; s < settings.sizes.size(); ++s) {
    const auto [n, d] = settings.sizes[s];
    const std::size_t n_methods = settings.methods.size();
    const std::size_t n_k = settings.k_grid.size();
    // durations[method][k][rep], errors likewise
    std::vector<std::vector<std::vector<double>>> durations(
        n_methods, std::vector<std::vector<double>>(n_k));
    std::vector<std::vector<std::vector<double>>> errors = durations;
    std::vector<std::vector<std::string>> failures(
        n_methods, std::vector<std::string>(n_k));

    for (int rep = 0; rep < settings.repetitions; ++rep) {
      const std::uint64_t run_index =
          (static_cast<std::uint64_t>(s) << 32) |
          static_cast<std::uint64_t>(rep);
      const CompositionalTable data = generate_dirichlet(
          n, d, mix_seed(settings.seed, "bench.table", run_index));
      InjectionSpec spec;
      spec.row_fraction = settings.row_fraction;
      spec.component_fraction = settings.component_fraction;
      spec.seed = mix_seed(settings.seed, "bench.inject", run_index);
      const Injection injection = inject_mcar(data, spec);

      for (std::size_t m = 0; m < n_methods; ++m) {
        const MethodKind method = settings.methods[m];
        for (std::size_t ki = 0; ki < n_k; ++ki) {
          const int k = settings.k_grid[ki];
          try {
            const auto start = clock::now();
            ImputationResult result =
                method == MethodKind::jsd_knn
                    ? impute(injection.masked,
                             ImputerConfig{k, settings.alpha, false, {}})
                    : impute_baseline_aitchison(
                          injection.masked, k,
                          method == MethodKind::aitchison_mean
                              ? BaselineAggregation::mean
                              : BaselineAggregation::median);
            const auto stop = clock::now();
            durations[m][ki].push_back(
                std::chrono::duration<double>(stop - start).count());
            errors[m][ki].push_back(
                evaluate(injection.truth, result.completed, Metric::aitchison));
          } catch (const Error& e) {
            if (failures[m][ki].empty()) failures[m][ki] = e.what();
          }
        }
      }
    }

    const auto mean_of = [](const std::vector<double>& v) {
      if (v.empty()) return 0.0;
      double sum = 0.0;
      for (double x : v) sum += x;
      return sum / static_cast<double>(v.size());
    };
    const auto median_of = [](std::vector<double> v) {
      if (v.empty()) return 0.0;
      std::sort(v.begin(), v.end());
      const std::size_t mid = v.size() / 2;
      return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    };

    std::vector<double> total_mean_duration(n_methods, 0.0);
    for (std::size_t m = 0; m < n_methods; ++m) {
      for (std::size_t ki = 0; ki < n_k; ++ki) {
        EvaluationRecord record;
        record.method = method_name(settings.methods[m]);
        record.n = n;
        record.d = d;
        record.k = settings.k_grid[ki];
        record.alpha = settings.methods[m] == MethodKind::jsd_knn
                           ? settings.alpha
                           : 1.0;
        record.repetitions = static_cast<int>(durations[m][ki].size());
        record.mean_error = mean_of(errors[m][ki]);
        record.mean_duration_s = mean_of(durations[m][ki]);
        record.median_duration_s = median_of(durations[m][ki]);
        record.failure = failures[m][ki];
        total_mean_duration[m] += record.mean_duration_s;
        report.records.push_back(std::move(record));
      }
    }

    // Speed-up of the JSD path relative to the first baseline present.
    std::size_t jsd_at = n_methods, base_at = n_methods;
    for (std::size_t m = 0; m < n_methods; ++m) {
      if (settings.methods[m] == MethodKind::jsd_knn && jsd_at == n_methods)
        jsd_at = m;
      if (settings.methods[m] != MethodKind::jsd_knn && base_at == n_methods)
        base_at = m;
    }
    if (jsd_at != n_methods && base_at != n_methods &&
        total_mean_duration[jsd_at] > 0.0)
      report.speedup.push_back(
          {n, d, total_mean_duration[base_at] / total_mean_duration[jsd_at]});
  }
  return report;
}

}  // namespace simpute

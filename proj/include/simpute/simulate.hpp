#pragma once
// Experimental harness: missingness injection (MCAR, sorted two-pattern MAR,
// component aggregation), Dirichlet data generation, scoring, and the
// wall-clock benchmark.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simpute/impute.hpp"
#include "simpute/tune.hpp"

namespace simpute {

struct InjectionSpec {
  double row_fraction = 0.10;       // share of rows that receive NAs
  double component_fraction = 0.5;  // share of components masked per row
  std::uint64_t seed = 0;
};

struct TruthCell {
  std::size_t row;
  std::size_t column;
  double value;
};

struct Injection {
  CompositionalTable masked;
  std::vector<TruthCell> truth;
  WarningLog warnings;
};

// Rows and, within them, components chosen uniformly at random,
// independent of the values. Requires a complete table.
Injection inject_mcar(const CompositionalTable& table, const InjectionSpec& spec);

// Rows sorted by their first component; the lower half receives one
// component pattern, the upper half the complementary one, at
// `row_fraction` per half. The driving (first) component is never masked.
// The two patterns default to contiguous halves of the non-driving columns
// and can be supplied explicitly.
Injection inject_mar_sorted(
    const CompositionalTable& table, const InjectionSpec& spec,
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
        patterns = std::nullopt);

// Masks the grouped components of the selected rows; the retained row mass
// equals the group total, so imputation dis-aggregates the group.
Injection inject_aggregation(const CompositionalTable& table,
                             std::span<const std::size_t> component_group,
                             std::span<const std::size_t> selected_rows);

// Row-sampling convenience over the rows whose group columns are observed.
Injection inject_aggregation_random(const CompositionalTable& table,
                                    std::span<const std::size_t> component_group,
                                    double row_fraction, std::uint64_t seed);

// n rows from Dirichlet(params); the parameter-free overload draws the
// parameters once from U(0.5, 5).
CompositionalTable generate_dirichlet(std::size_t n,
                                      std::span<const double> params,
                                      std::uint64_t seed);
CompositionalTable generate_dirichlet(std::size_t n, std::size_t d,
                                      std::uint64_t seed);

// Mean row-wise distance between truth and completed rows, over the rows
// that had masked cells.
double evaluate(std::span<const TruthCell> truth,
                const CompositionalTable& completed, Metric metric);

enum class MethodKind { jsd_knn, aitchison_mean, aitchison_median };

const char* method_name(MethodKind method) noexcept;

struct BenchmarkSettings {
  std::vector<std::pair<std::size_t, std::size_t>> sizes = {{500, 10}};
  std::vector<int> k_grid = default_k_grid();
  int repetitions = 20;
  std::uint64_t seed = 0;
  double row_fraction = 0.10;
  double component_fraction = 0.3;
  double alpha = 1.0;
  std::vector<MethodKind> methods = {MethodKind::jsd_knn,
                                     MethodKind::aitchison_median};
};

struct EvaluationRecord {
  std::string method;
  std::size_t n = 0;
  std::size_t d = 0;
  int k = 0;
  double alpha = 1.0;
  double mean_error = 0.0;
  int repetitions = 0;
  double mean_duration_s = 0.0;
  double median_duration_s = 0.0;
  std::string failure;  // non-empty when the method failed on this cell
};

struct SpeedupCell {
  std::size_t n;
  std::size_t d;
  double ratio;  // baseline duration / jsd duration, summed over the k grid
};

struct BenchmarkReport {
  std::vector<EvaluationRecord> records;
  std::vector<SpeedupCell> speedup;
  WarningLog warnings;
};

// Times the impute call only, sequentially (no concurrent methods), and
// scores each run against the injected truth. Errors are deterministic per
// seed; durations naturally are not.
BenchmarkReport benchmark(const BenchmarkSettings& settings);

}  // namespace simpute

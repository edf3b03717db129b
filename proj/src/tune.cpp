#include "simpute/tune.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "impute_internal.hpp"
#include "simpute/distance.hpp"
#include "simpute/rng.hpp"

namespace simpute {

const char* metric_name(Metric metric) noexcept {
  return metric == Metric::aitchison ? "aitchison" : "jsd";
}

std::vector<int> default_k_grid() { return {2, 3, 4, 5, 6, 7, 8, 9, 10}; }

std::vector<double> default_alpha_grid(bool zeros_present) {
  std::vector<double> grid;
  const int start = zeros_present ? 0 : -10;
  for (int i = start; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

namespace {

bool complete_rows_have_zeros(const CompositionalTable& table,
                              std::span<const std::size_t> complete_rows) {
  for (std::size_t r : complete_rows)
    for (double v : table.row(r))
      if (v == 0.0) return true;
  return false;
}

struct ResolvedSettings {
  std::vector<int> k_grid;
  std::vector<double> alpha_grid;
  Metric metric;
  int repetitions;
};

ResolvedSettings resolve_settings(const CvSettings& settings,
                                  bool zeros_present) {
  ResolvedSettings r;
  r.k_grid = settings.k_grid;
  if (r.k_grid.empty()) fail(errc::invalid_argument, "empty k grid");
  for (int k : r.k_grid)
    if (k < 1) fail(errc::invalid_argument, "k grid entries must be >= 1");
  r.alpha_grid = settings.alpha_grid.empty() ? default_alpha_grid(zeros_present)
                                             : settings.alpha_grid;
  for (double a : r.alpha_grid) {
    if (!(a >= -1.0 && a <= 1.0))
      fail(errc::invalid_argument, "alpha grid entries must lie in [-1, 1]");
    if (zeros_present && a < 0.0)
      fail(errc::alpha_zero_conflict,
           "alpha grid must be non-negative when the data contain zeros");
  }
  if (settings.repetitions < 1)
    fail(errc::invalid_argument, "repetitions must be at least 1");
  r.repetitions = settings.repetitions;
  r.metric = settings.metric.value_or(zeros_present ? Metric::jsd
                                                    : Metric::aitchison);
  if (r.metric == Metric::aitchison && zeros_present)
    fail(errc::metric_zero_conflict,
         "Aitchison scoring is undefined on data with zeros; use jsd");
  return r;
}

double metric_distance(Metric metric, std::span<const double> x,
                       std::span<const double> y) {
  return metric == Metric::aitchison ? aitchison_distance(x, y) : jsd(x, y);
}

}  // namespace

TuningReport tune(const CompositionalTable& table,
                  std::span<const std::size_t> complete_rows,
                  std::span<const MissingnessPattern> observed_patterns,
                  const CvSettings& settings) {
  if (observed_patterns.empty())
    fail(errc::invalid_argument, "no observed missingness patterns to tune for");
  const std::size_t n_complete = complete_rows.size();
  const std::size_t n_masked = observed_patterns.size();  // the protocol's N

  const bool zeros_present = complete_rows_have_zeros(table, complete_rows);
  const ResolvedSettings rs = resolve_settings(settings, zeros_present);

  const int max_k = *std::max_element(rs.k_grid.begin(), rs.k_grid.end());
  if (n_complete <= n_masked + static_cast<std::size_t>(max_k))
    fail(errc::cv_infeasible,
         "need more than N + max(k) = " +
             std::to_string(n_masked + static_cast<std::size_t>(max_k)) +
             " complete rows, have " + std::to_string(n_complete));

  const std::size_t d = table.cols();
  const std::size_t n_pairs = rs.alpha_grid.size() * rs.k_grid.size();

  TuningReport report;
  report.metric_used = rs.metric;
  report.alpha_grid = rs.alpha_grid;
  report.k_grid = rs.k_grid;
  report.repetitions = rs.repetitions;
  report.seed = settings.seed;

  std::vector<double> sums(n_pairs, 0.0);
  std::vector<int> counts(n_pairs, 0);
  if (settings.keep_per_repetition)
    report.per_repetition.assign(n_pairs, {});

  for (int rep = 0; rep < rs.repetitions; ++rep) {
    auto rng = make_rng(settings.seed, "cv.rep", static_cast<std::uint64_t>(rep));
    const std::vector<std::size_t> drawn =
        sample_without_replacement(n_complete, n_masked, rng);
    std::uniform_int_distribution<std::size_t> pick_pattern(0, n_masked - 1);

    // CV table: every complete row, with the drawn ones masked following a
    // pattern sampled from the observed empirical distribution.
    std::vector<double> values(n_complete * d);
    std::vector<std::uint8_t> mask(n_complete * d, 1);
    for (std::size_t i = 0; i < n_complete; ++i) {
      const auto row = table.row(complete_rows[i]);
      std::copy(row.begin(), row.end(), values.begin() + i * d);
    }
    std::vector<MaskDraw> draws;
    draws.reserve(n_masked);
    for (std::size_t pos : drawn) {
      const auto& pattern = observed_patterns[pick_pattern(rng)];
      for (std::size_t col : pattern.missing_columns()) {
        values[pos * d + col] = 0.0;
        mask[pos * d + col] = 0;
      }
      draws.push_back({complete_rows[pos], pattern.missing_columns()});
    }
    const CompositionalTable cv_table = CompositionalTable::adopt(
        std::move(values), std::move(mask), n_complete, d,
        table.column_names());

    std::vector<std::size_t> cv_complete;
    cv_complete.reserve(n_complete - n_masked);
    for (std::size_t i = 0, di = 0; i < n_complete; ++i) {
      if (di < drawn.size() && drawn[di] == i)
        ++di;
      else
        cv_complete.push_back(i);
    }

    std::vector<detail::PreparedRow> prepared;
    prepared.reserve(n_masked);
    bool rep_ok = true;
    for (std::size_t pos : drawn) {
      try {
        prepared.push_back(detail::prepare_row(cv_table, pos, cv_complete,
                                               DistanceKind::jsd, nullptr));
      } catch (const Error& e) {
        // A drawn mask can zero out every positive observed part; the
        // repetition is not scoreable then.
        warn(&report.warnings, "cv_rep_skipped",
             "repetition " + std::to_string(rep) + " skipped: " + e.what());
        rep_ok = false;
        break;
      }
    }
    if (settings.record_masks) report.masks.push_back(std::move(draws));
    if (!rep_ok) continue;

    std::size_t min_usable = std::numeric_limits<std::size_t>::max();
    for (const auto& p : prepared)
      min_usable = std::min(min_usable, p.order.size());

    std::vector<double> completed(d);
    std::size_t pair_index = 0;
    for (double alpha : rs.alpha_grid) {
      for (int k : rs.k_grid) {
        if (static_cast<std::size_t>(k) > min_usable) {
          warn(&report.warnings, "cv_pair_skipped",
               "repetition " + std::to_string(rep) + ": k=" +
                   std::to_string(k) + " exceeds the usable donor count");
          ++pair_index;
          continue;
        }
        double score = 0.0;
        for (std::size_t m = 0; m < prepared.size(); ++m) {
          const auto& p = prepared[m];
          const auto imputation = detail::impute_prepared(
              cv_table, p, k, detail::Aggregator::frechet, alpha, nullptr);
          const auto cv_row = cv_table.row(p.row_index);
          std::copy(cv_row.begin(), cv_row.end(), completed.begin());
          const auto& missing = p.decomp.row.missing_columns;
          for (std::size_t t = 0; t < missing.size(); ++t)
            completed[missing[t]] = imputation.values[t];
          const auto truth = table.row(complete_rows[p.row_index]);
          score += metric_distance(rs.metric, truth, completed);
        }
        score /= static_cast<double>(prepared.size());
        sums[pair_index] += score;
        counts[pair_index] += 1;
        if (settings.keep_per_repetition)
          report.per_repetition[pair_index].push_back(score);
        ++pair_index;
      }
    }
  }

  report.scores.reserve(n_pairs);
  std::size_t pair_index = 0;
  std::size_t best = n_pairs;  // sentinel
  for (double alpha : rs.alpha_grid) {
    for (int k : rs.k_grid) {
      double mean = std::numeric_limits<double>::quiet_NaN();
      if (counts[pair_index] > 0)
        mean = sums[pair_index] / counts[pair_index];
      else
        warn(&report.warnings, "pair_unscored",
             "pair alpha=" + std::to_string(alpha) + ", k=" +
                 std::to_string(k) + " was never scoreable");
      report.scores.push_back({alpha, k, mean});
      if (!std::isnan(mean)) {
        if (best == n_pairs) {
          best = pair_index;
        } else {
          const auto& b = report.scores[best];
          const bool better =
              mean < b.mean_score ||
              (mean == b.mean_score &&
               (k < b.k || (k == b.k && std::abs(alpha - 1.0) <
                                            std::abs(b.alpha - 1.0))));
          if (better) best = pair_index;
        }
      }
      ++pair_index;
    }
  }
  if (best == n_pairs)
    fail(errc::cv_infeasible, "no (alpha, k) pair could be scored");
  report.best_alpha = report.scores[best].alpha;
  report.best_k = report.scores[best].k;
  return report;
}

TuningReport tune(const CompositionalTable& table, const CvSettings& settings) {
  const Partition part = partition(table);
  std::vector<MissingnessPattern> patterns;
  patterns.reserve(part.incomplete_rows.size());
  for (std::size_t row : part.incomplete_rows)
    patterns.push_back(table.pattern_of(row));
  return tune(table, part.complete_rows, patterns, settings);
}

std::vector<PatternReport> tune_per_pattern(
    const CompositionalTable& table,
    std::span<const std::size_t> complete_rows,
    std::span<const MissingnessPattern> observed_patterns,
    const CvSettings& settings) {
  if (observed_patterns.empty())
    fail(errc::invalid_argument, "no observed missingness patterns to tune for");

  std::map<MissingnessPattern, std::size_t> counts;
  for (const auto& pattern : observed_patterns) counts[pattern] += 1;

  std::vector<PatternReport> out;
  out.reserve(counts.size());
  for (const auto& [pattern, count] : counts) {
    PatternReport pr{pattern, count, std::nullopt, {}};
    // Each pattern runs the whole protocol with its own N; the shared seed
    // makes the single-pattern case coincide with plain tune().
    const std::vector<MissingnessPattern> replicated(count, pattern);
    try {
      pr.report = tune(table, complete_rows, replicated, settings);
    } catch (const Error& e) {
      pr.infeasible_reason = e.what();
    }
    out.push_back(std::move(pr));
  }
  return out;
}

}  // namespace simpute

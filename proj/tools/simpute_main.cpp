// Command-line front end. Talks to the library exclusively through the C
// API in simpute.h; every failure surfaces as one machine-parsable line on
// stderr and a nonzero exit code.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simpute.h"

namespace {

struct TableDeleter {
  void operator()(simpute_table* t) const { simpute_table_free(t); }
};
struct ResultDeleter {
  void operator()(simpute_result* r) const { simpute_result_free(r); }
};
using TablePtr = std::unique_ptr<simpute_table, TableDeleter>;
using ResultPtr = std::unique_ptr<simpute_result, ResultDeleter>;

class OwnedString {
 public:
  OwnedString() = default;
  ~OwnedString() { simpute_string_free(s_); }
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  char** out() { return &s_; }
  const char* get() const { return s_ == nullptr ? "" : s_; }

 private:
  char* s_ = nullptr;
};

[[noreturn]] void die(simpute_status status) {
  std::fprintf(stderr, "error: code=%s msg=\"%s\"\n",
               simpute_status_name(status), simpute_last_error_message());
  std::exit(1);
}

void check(simpute_status status) {
  if (status != SIMPUTE_OK) die(status);
}

[[noreturn]] void die_message(const std::string& message) {
  std::fprintf(stderr, "error: code=invalid_argument msg=\"%s\"\n",
               message.c_str());
  std::exit(1);
}

// One structured line per warning on stderr.
void print_warnings(const char* warnings_json) {
  if (warnings_json == nullptr || warnings_json[0] == '\0') return;
  const auto parsed = nlohmann::json::parse(warnings_json, nullptr, false);
  if (!parsed.is_array()) return;
  for (const auto& w : parsed) {
    std::string line = "warning: code=" + w.value("code", std::string("?"));
    if (w.contains("row")) line += " row=" + w["row"].dump();
    if (w.contains("column")) line += " column=" + w["column"].dump();
    line += " msg=\"" + w.value("message", std::string()) + "\"";
    std::fprintf(stderr, "%s\n", line.c_str());
  }
}

void write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die_message("cannot open " + path + " for writing");
  out << content;
  if (!out) die_message("failed writing " + path);
}

// "2..10" or "2,5,7"
std::vector<int> parse_k_grid(const std::string& text) {
  std::vector<int> grid;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      if (lo > hi) die_message("bad k grid '" + text + "': empty range");
      for (int k = lo; k <= hi; ++k) grid.push_back(k);
      return grid;
    }
    std::size_t begin = 0;
    while (begin <= text.size()) {
      const auto at = text.find(',', begin);
      const auto token = text.substr(begin, at - begin);
      grid.push_back(std::stoi(token));
      if (at == std::string::npos) break;
      begin = at + 1;
    }
  } catch (const std::exception&) {
    die_message("cannot parse k grid '" + text + "'");
  }
  return grid;
}

// "-1:1:0.1" (start:end:step, inclusive) or "0,0.5,1"
std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> grid;
  try {
    // A colon after the first character separates range fields; a leading
    // '-' belongs to the start value.
    const auto colon = text.find(':', 1);
    if (colon != std::string::npos) {
      const auto colon2 = text.find(':', colon + 1);
      if (colon2 == std::string::npos)
        die_message("alpha range needs start:end:step, got '" + text + "'");
      const double start = std::stod(text.substr(0, colon));
      const double end = std::stod(text.substr(colon + 1, colon2 - colon - 1));
      const double step = std::stod(text.substr(colon2 + 1));
      if (!(step > 0.0) || end < start)
        die_message("bad alpha range '" + text + "'");
      // Walk on integer multiples so 0.1 steps land on exact grid values.
      for (int i = 0;; ++i) {
        const double a = start + i * step;
        if (a > end + step * 1e-9) break;
        grid.push_back(a < -1.0 ? -1.0 : (a > 1.0 ? 1.0 : a));
      }
      return grid;
    }
    std::size_t begin = 0;
    while (begin <= text.size()) {
      const auto at = text.find(',', begin);
      grid.push_back(std::stod(text.substr(begin, at - begin)));
      if (at == std::string::npos) break;
      begin = at + 1;
    }
  } catch (const std::exception&) {
    die_message("cannot parse alpha grid '" + text + "'");
  }
  return grid;
}

// "500x10,1000x10"
std::vector<size_t> parse_sizes(const std::string& text) {
  std::vector<size_t> flat;
  try {
    std::size_t begin = 0;
    while (begin <= text.size()) {
      const auto at = text.find(',', begin);
      const auto token = text.substr(begin, at - begin);
      const auto x = token.find('x');
      if (x == std::string::npos)
        die_message("size '" + token + "' is not of the form NxD");
      flat.push_back(std::stoul(token.substr(0, x)));
      flat.push_back(std::stoul(token.substr(x + 1)));
      if (at == std::string::npos) break;
      begin = at + 1;
    }
  } catch (const std::exception&) {
    die_message("cannot parse sizes '" + text + "'");
  }
  return flat;
}

TablePtr load_table(const std::string& path) {
  simpute_table* raw = nullptr;
  OwnedString warnings;
  check(simpute_table_read_csv(path.c_str(), nullptr, &raw, warnings.out()));
  print_warnings(warnings.get());
  return TablePtr(raw);
}

std::vector<size_t> resolve_group_columns(const simpute_table* table,
                                          const std::vector<std::string>& spec) {
  std::vector<size_t> cols;
  const size_t d = simpute_table_cols(table);
  for (const auto& name : spec) {
    bool found = false;
    for (size_t j = 0; j < d && !found; ++j) {
      const char* candidate = simpute_table_column_name(table, j);
      if (candidate != nullptr && name == candidate) {
        cols.push_back(j);
        found = true;
      }
    }
    if (!found) {
      // Fall back to a 1-based position.
      try {
        const auto pos = std::stoul(name);
        if (pos >= 1 && pos <= d) {
          cols.push_back(pos - 1);
          found = true;
        }
      } catch (const std::exception&) {
      }
    }
    if (!found)
      die_message("unknown column '" + name + "' in --group");
  }
  return cols;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-NN missing-value imputation for compositional data"};
  app.require_subcommand(1);

  // impute ----------------------------------------------------------------
  auto* cmd_impute = app.add_subcommand(
      "impute", "Fill the NA cells of a compositional CSV");
  std::string in_path, out_path, donor_log_path, baseline;
  int k = 2;
  double alpha = 1.0;
  bool adaptive = false;
  std::string k_grid_text = "2..10", alpha_grid_text;
  int reps = 50;
  std::uint64_t seed = 0;
  cmd_impute->add_option("input", in_path, "input CSV")->required();
  cmd_impute->add_option("--k", k, "neighbor count (default 2)");
  cmd_impute->add_option("--alpha", alpha, "Frechet power (default 1)");
  cmd_impute->add_flag("--adaptive", adaptive,
                       "tune (alpha, k) per missingness pattern");
  cmd_impute->add_option("--baseline", baseline,
                         "aitchison-mean or aitchison-median comparator");
  cmd_impute->add_option("-o,--output", out_path, "completed CSV")->required();
  cmd_impute->add_option("--donor-log", donor_log_path,
                         "write the per-row donor log (JSON)");
  cmd_impute->add_option("--k-grid", k_grid_text, "adaptive: k grid");
  cmd_impute->add_option("--alpha-grid", alpha_grid_text,
                         "adaptive: alpha grid");
  cmd_impute->add_option("--reps", reps, "adaptive: CV repetitions");
  cmd_impute->add_option("--seed", seed, "adaptive: CV seed");

  // tune ------------------------------------------------------------------
  auto* cmd_tune = app.add_subcommand(
      "tune", "Cross-validate (alpha, k) against the observed missingness");
  bool per_pattern = false;
  cmd_tune->add_option("input", in_path, "input CSV")->required();
  cmd_tune->add_option("--k-grid", k_grid_text, "k grid (default 2..10)");
  cmd_tune->add_option("--alpha-grid", alpha_grid_text,
                       "alpha grid (default -1:1:0.1, or 0:1:0.1 with zeros)");
  cmd_tune->add_option("--reps", reps, "CV repetitions (default 50)");
  cmd_tune->add_option("--seed", seed, "RNG seed");
  cmd_tune->add_flag("--per-pattern", per_pattern,
                     "tune each missingness pattern separately");
  cmd_tune->add_option("-o,--output", out_path, "report JSON")->required();

  // inject ----------------------------------------------------------------
  auto* cmd_inject = app.add_subcommand(
      "inject", "Mask cells of a complete CSV for simulation studies");
  std::string mechanism, truth_path;
  double row_frac = 0.10, comp_frac = 0.5;
  std::vector<std::string> group_spec;
  cmd_inject->add_option("input", in_path, "complete input CSV")->required();
  cmd_inject
      ->add_option("--mechanism", mechanism, "mcar, mar-sorted or aggregate")
      ->required();
  cmd_inject->add_option("--row-frac", row_frac, "row fraction (default 0.10)");
  cmd_inject->add_option("--comp-frac", comp_frac,
                         "component fraction (default 0.5)");
  cmd_inject->add_option("--group", group_spec,
                         "aggregate: grouped columns (names or 1-based)")
      ->delimiter(',');
  cmd_inject->add_option("--seed", seed, "RNG seed")->required();
  cmd_inject->add_option("-o,--output", out_path, "masked CSV")->required();
  cmd_inject->add_option("--truth", truth_path, "held-out truth cells CSV")
      ->required();

  // benchmark ---------------------------------------------------------------
  auto* cmd_bench = app.add_subcommand(
      "benchmark", "Time the JSD path against the Aitchison baseline");
  std::string sizes_text = "500x10,1000x10,2000x10";
  std::string bench_k_text = "2..10";
  std::string baseline_agg = "median";
  std::string records_csv_path;
  int bench_reps = 20;
  double bench_comp_frac = 0.3;
  cmd_bench->add_option("--sizes", sizes_text, "table sizes, e.g. 500x10,1000x10");
  cmd_bench->add_option("--k", bench_k_text, "k grid (default 2..10)");
  cmd_bench->add_option("--reps", bench_reps, "repetitions (default 20)");
  cmd_bench->add_option("--seed", seed, "RNG seed")->required();
  cmd_bench->add_option("--row-frac", row_frac, "row fraction (default 0.10)");
  cmd_bench->add_option("--comp-frac", bench_comp_frac,
                        "component fraction (default 0.30)");
  cmd_bench->add_option("--baseline-agg", baseline_agg,
                        "baseline aggregation: mean or median");
  cmd_bench->add_option("--records-csv", records_csv_path,
                        "also write the flat records table");
  cmd_bench->add_option("-o,--output", out_path, "report JSON")->required();

  // contours ------------------------------------------------------------------
  auto* cmd_contours = app.add_subcommand(
      "contours", "Ternary distance grid from the simplex center");
  std::string kind;
  int resolution = 100;
  cmd_contours->add_option("--kind", kind, "jsd or aitchison")->required();
  cmd_contours->add_option("--resolution", resolution, "lattice resolution")
      ->required();
  cmd_contours->add_option("-o,--output", out_path, "grid CSV")->required();

  // trajectory ------------------------------------------------------------------
  auto* cmd_traj = app.add_subcommand(
      "trajectory", "Frechet-mean path of the complete rows over alpha");
  cmd_traj->add_option("input", in_path, "input CSV")->required();
  cmd_traj->add_option("--alpha-grid", alpha_grid_text,
                       "alpha grid (default -1:1:0.1, or 0:1:0.1 with zeros)");
  cmd_traj->add_option("-o,--output", out_path, "path CSV")->required();

  CLI11_PARSE(app, argc, argv);

  if (cmd_impute->parsed()) {
    const TablePtr table = load_table(in_path);
    simpute_impute_options options{};
    options.k = k;
    options.alpha = alpha;
    options.seed = seed;
    std::vector<int> kg;
    std::vector<double> ag;
    if (adaptive) {
      options.adaptive = 1;
      options.cv_repetitions = reps;
      kg = parse_k_grid(k_grid_text);
      options.k_grid = kg.data();
      options.k_grid_len = kg.size();
      if (!alpha_grid_text.empty()) {
        ag = parse_alpha_grid(alpha_grid_text);
        options.alpha_grid = ag.data();
        options.alpha_grid_len = ag.size();
      }
    }
    if (!baseline.empty()) {
      if (baseline == "aitchison-mean")
        options.baseline = SIMPUTE_BASELINE_AITCHISON_MEAN;
      else if (baseline == "aitchison-median")
        options.baseline = SIMPUTE_BASELINE_AITCHISON_MEDIAN;
      else
        die_message("unknown baseline '" + baseline + "'");
    }
    simpute_result* raw = nullptr;
    check(simpute_impute(table.get(), &options, &raw));
    const ResultPtr result(raw);
    OwnedString warnings;
    check(simpute_result_warnings_json(result.get(), warnings.out()));
    print_warnings(warnings.get());
    check(simpute_table_write_csv(simpute_result_table(result.get()),
                                  out_path.c_str(), nullptr));
    if (!donor_log_path.empty()) {
      OwnedString log;
      check(simpute_result_donor_log_json(result.get(), log.out()));
      write_file(donor_log_path, log.get());
    }
    return 0;
  }

  if (cmd_tune->parsed()) {
    const TablePtr table = load_table(in_path);
    simpute_cv_options options{};
    const auto kg = parse_k_grid(k_grid_text);
    options.k_grid = kg.data();
    options.k_grid_len = kg.size();
    std::vector<double> ag;
    if (!alpha_grid_text.empty()) {
      ag = parse_alpha_grid(alpha_grid_text);
      options.alpha_grid = ag.data();
      options.alpha_grid_len = ag.size();
    }
    options.repetitions = reps;
    options.seed = seed;
    options.per_pattern = per_pattern ? 1 : 0;
    OwnedString report;
    check(simpute_tune(table.get(), &options, report.out()));
    write_file(out_path, report.get());
    return 0;
  }

  if (cmd_inject->parsed()) {
    const TablePtr table = load_table(in_path);
    simpute_table* masked_raw = nullptr;
    OwnedString truth, warnings;
    if (mechanism == "mcar") {
      check(simpute_inject_mcar(table.get(), row_frac, comp_frac, seed,
                                &masked_raw, truth.out(), warnings.out()));
    } else if (mechanism == "mar-sorted") {
      check(simpute_inject_mar_sorted(table.get(), row_frac, seed, &masked_raw,
                                      truth.out(), warnings.out()));
    } else if (mechanism == "aggregate") {
      if (group_spec.empty())
        die_message("--group is required for the aggregate mechanism");
      const auto cols = resolve_group_columns(table.get(), group_spec);
      check(simpute_inject_aggregate(table.get(), cols.data(), cols.size(),
                                     row_frac, seed, &masked_raw, truth.out(),
                                     warnings.out()));
    } else {
      die_message("unknown mechanism '" + mechanism + "'");
    }
    const TablePtr masked(masked_raw);
    print_warnings(warnings.get());
    check(simpute_table_write_csv(masked.get(), out_path.c_str(), nullptr));
    write_file(truth_path, truth.get());
    return 0;
  }

  if (cmd_bench->parsed()) {
    simpute_benchmark_options options{};
    const auto sizes = parse_sizes(sizes_text);
    options.sizes = sizes.data();
    options.sizes_len = sizes.size() / 2;
    const auto kg = parse_k_grid(bench_k_text);
    options.k_grid = kg.data();
    options.k_grid_len = kg.size();
    options.repetitions = bench_reps;
    options.seed = seed;
    options.row_fraction = row_frac;
    options.component_fraction = bench_comp_frac;
    if (baseline_agg == "mean")
      options.baseline_mean = 1;
    else if (baseline_agg != "median")
      die_message("unknown baseline aggregation '" + baseline_agg + "'");
    OwnedString report, records;
    check(simpute_benchmark(&options, report.out(),
                            records_csv_path.empty() ? nullptr : records.out()));
    write_file(out_path, report.get());
    if (!records_csv_path.empty()) write_file(records_csv_path, records.get());
    return 0;
  }

  if (cmd_contours->parsed()) {
    simpute_distance_kind dk;
    if (kind == "jsd")
      dk = SIMPUTE_DISTANCE_JSD;
    else if (kind == "aitchison")
      dk = SIMPUTE_DISTANCE_AITCHISON;
    else
      die_message("unknown distance kind '" + kind + "'");
    OwnedString csv;
    check(simpute_contour_grid_csv(dk, resolution, csv.out()));
    write_file(out_path, csv.get());
    return 0;
  }

  if (cmd_traj->parsed()) {
    const TablePtr table = load_table(in_path);
    std::vector<double> ag;
    if (!alpha_grid_text.empty()) ag = parse_alpha_grid(alpha_grid_text);
    OwnedString csv;
    check(simpute_trajectory_csv(table.get(), ag.empty() ? nullptr : ag.data(),
                                 ag.size(), csv.out()));
    write_file(out_path, csv.get());
    return 0;
  }

  return 0;
}

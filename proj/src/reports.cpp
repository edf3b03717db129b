#include "simpute/reports.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

namespace simpute {

namespace {

using json = nlohmann::ordered_json;

json warning_to_json(const Warning& w) {
  json j;
  j["code"] = w.code;
  if (w.row) j["row"] = *w.row;
  if (w.column) j["column"] = *w.column;
  j["message"] = w.message;
  return j;
}

json warnings_to_json(const WarningLog& warnings) {
  json arr = json::array();
  for (const auto& w : warnings) arr.push_back(warning_to_json(w));
  return arr;
}

json score_to_json(const PairScore& s) {
  json j;
  j["alpha"] = s.alpha;
  j["k"] = s.k;
  if (std::isnan(s.mean_score))
    j["mean_score"] = nullptr;
  else
    j["mean_score"] = s.mean_score;
  return j;
}

json report_body(const TuningReport& report) {
  json j;
  j["settings"] = {{"k_grid", report.k_grid},
                   {"alpha_grid", report.alpha_grid},
                   {"repetitions", report.repetitions},
                   {"metric", metric_name(report.metric_used)}};
  j["seed"] = report.seed;
  json scores = json::array();
  for (const auto& s : report.scores) scores.push_back(score_to_json(s));
  j["scores"] = std::move(scores);
  j["best"] = {{"alpha", report.best_alpha}, {"k", report.best_k}};
  if (!report.masks.empty()) {
    json reps = json::array();
    for (const auto& rep : report.masks) {
      json draws = json::array();
      for (const auto& draw : rep)
        draws.push_back({{"row", draw.table_row},
                         {"missing_columns", draw.missing_columns}});
      reps.push_back(std::move(draws));
    }
    j["masks"] = std::move(reps);
  }
  j["warnings"] = warnings_to_json(report.warnings);
  return j;
}

void append_csv_value(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out += buf;
}

}  // namespace

std::string warnings_json(const WarningLog& warnings) {
  return warnings_to_json(warnings).dump();
}

std::string donor_log_json(std::span<const RowLog> donor_log,
                           std::span<const ImputedCell> imputed_cells) {
  json rows = json::array();
  for (const auto& log : donor_log) {
    json donors = json::array();
    for (const auto& rec : log.donors)
      donors.push_back({{"row", rec.donor_row}, {"distance", rec.distance}});
    rows.push_back({{"row", log.row},
                    {"missing_columns", log.missing_columns},
                    {"alpha", log.alpha},
                    {"k", log.k},
                    {"donors", std::move(donors)}});
  }
  json cells = json::array();
  for (const auto& cell : imputed_cells)
    cells.push_back(
        {{"row", cell.row}, {"column", cell.column}, {"value", cell.value}});
  json j;
  j["rows"] = std::move(rows);
  j["imputed_cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string tuning_report_json(const TuningReport& report) {
  return report_body(report).dump(2) + "\n";
}

std::string pattern_reports_json(std::span<const PatternReport> reports,
                                 const CvSettings& settings) {
  json j;
  j["settings"] = {{"repetitions", settings.repetitions},
                   {"per_pattern", true}};
  j["seed"] = settings.seed;
  json patterns = json::array();
  WarningLog aggregated;
  for (const auto& pr : reports) {
    json p;
    p["missing_columns"] = pr.pattern.missing_columns();
    p["count"] = pr.count;
    p["feasible"] = pr.report.has_value();
    if (pr.report) {
      p["best"] = {{"alpha", pr.report->best_alpha}, {"k", pr.report->best_k}};
      p["metric"] = metric_name(pr.report->metric_used);
      json scores = json::array();
      for (const auto& s : pr.report->scores) scores.push_back(score_to_json(s));
      p["scores"] = std::move(scores);
      aggregated.insert(aggregated.end(), pr.report->warnings.begin(),
                        pr.report->warnings.end());
    } else {
      p["reason"] = pr.infeasible_reason;
    }
    patterns.push_back(std::move(p));
  }
  j["patterns"] = std::move(patterns);
  j["warnings"] = warnings_to_json(aggregated);
  return j.dump(2) + "\n";
}

std::string tuning_scores_csv(const TuningReport& report) {
  std::string out = "alpha,k,mean_score\n";
  for (const auto& s : report.scores) {
    append_csv_value(out, s.alpha);
    out += ',';
    out += std::to_string(s.k);
    out += ',';
    append_csv_value(out, s.mean_score);
    out += '\n';
  }
  return out;
}

std::string benchmark_report_json(const BenchmarkReport& report,
                                  const BenchmarkSettings& settings) {
  json j;
  json sizes = json::array();
  for (const auto& [n, d] : settings.sizes)
    sizes.push_back({{"n", n}, {"d", d}});
  j["settings"] = {{"sizes", std::move(sizes)},
                   {"k_grid", settings.k_grid},
                   {"repetitions", settings.repetitions},
                   {"seed", settings.seed},
                   {"row_fraction", settings.row_fraction},
                   {"component_fraction", settings.component_fraction},
                   {"alpha", settings.alpha}};
  json methods = json::array();
  for (const auto m : settings.methods) methods.push_back(method_name(m));
  j["settings"]["methods"] = std::move(methods);

  json records = json::array();
  for (const auto& r : report.records) {
    json rec;
    rec["method"] = r.method;
    rec["n"] = r.n;
    rec["d"] = r.d;
    rec["k"] = r.k;
    rec["alpha"] = r.alpha;
    rec["mean_error"] = r.mean_error;
    rec["repetitions"] = r.repetitions;
    rec["mean_duration_s"] = r.mean_duration_s;
    rec["median_duration_s"] = r.median_duration_s;
    if (!r.failure.empty()) rec["failure"] = r.failure;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);

  // Speed-up grid in the rows-by-n, columns-by-d layout.
  std::set<std::size_t> ns, ds;
  for (const auto& cell : report.speedup) {
    ns.insert(cell.n);
    ds.insert(cell.d);
  }
  json table;
  table["columns"] = json::array();
  for (std::size_t d : ds) table["columns"].push_back(d);
  json rows = json::array();
  for (std::size_t n : ns) {
    json row;
    row["n"] = n;
    json vals = json::array();
    for (std::size_t d : ds) {
      bool found = false;
      for (const auto& cell : report.speedup)
        if (cell.n == n && cell.d == d) {
          vals.push_back(cell.ratio);
          found = true;
          break;
        }
      if (!found) vals.push_back(nullptr);
    }
    row["values"] = std::move(vals);
    rows.push_back(std::move(row));
  }
  table["rows"] = std::move(rows);
  j["speedup_table"] = std::move(table);
  j["warnings"] = warnings_to_json(report.warnings);
  return j.dump(2) + "\n";
}

std::string evaluation_records_csv(std::span<const EvaluationRecord> records) {
  std::string out =
      "method,n,d,k,alpha,mean_error,mean_duration_s,median_duration_s,"
      "repetitions,failure\n";
  for (const auto& r : records) {
    out += r.method;
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.d) + ',' +
           std::to_string(r.k) + ',';
    append_csv_value(out, r.alpha);
    out += ',';
    append_csv_value(out, r.mean_error);
    out += ',';
    append_csv_value(out, r.mean_duration_s);
    out += ',';
    append_csv_value(out, r.median_duration_s);
    out += ',' + std::to_string(r.repetitions) + ',' + r.failure + '\n';
  }
  return out;
}

std::string contour_csv(std::span<const ContourPoint> grid) {
  std::string out = "a,b,c,distance\n";
  for (const auto& p : grid) {
    append_csv_value(out, p.a);
    out += ',';
    append_csv_value(out, p.b);
    out += ',';
    append_csv_value(out, p.c);
    out += ',';
    append_csv_value(out, p.distance);
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(std::span<const double> alpha_grid,
                           std::span<const std::vector<double>> means,
                           std::span<const std::string> column_names) {
  std::string out = "alpha";
  for (const auto& name : column_names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    append_csv_value(out, alpha_grid[g]);
    for (double v : means[g]) {
      out += ',';
      append_csv_value(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string truth_cells_csv(std::span<const TruthCell> cells) {
  std::string out = "row,column,value\n";
  for (const auto& cell : cells) {
    out += std::to_string(cell.row) + ',' + std::to_string(cell.column) + ',';
    append_csv_value(out, cell.value);
    out += '\n';
  }
  return out;
}

}  // namespace simpute

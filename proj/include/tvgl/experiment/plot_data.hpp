#pragma once

// Turns results.csv / bench.csv into per-figure series files:
//
//   metric_vs_samples.csv, metric_vs_eta.csv, metric_vs_<param>.csv
//       x,method,n,mcc_mean,mcc_std,rel_err_mean,rel_err_std
//   time_vs_T.csv
//       T,workers,n,wall_time_mean,wall_time_min
//
// Series are ordered by first appearance, x ascending within a series.

#include "tvgl/experiment/csv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tvgl::experiment {

inline const std::vector<std::string> kMetricSeriesHeader = {"x",           "method",       "n",         "mcc_mean",
                                                             "mcc_std",     "rel_err_mean", "rel_err_std"};
inline const std::vector<std::string> kTimeSeriesHeader = {"T", "workers", "n", "wall_time_mean", "wall_time_min"};

namespace detail {

struct Moments
{
  int n = 0;
  double sum = 0.0, sum_sq = 0.0, min = 0.0;

  void add(double v)
  {
    min = n == 0 ? v : std::min(min, v);
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return n ? sum / n : 0.0; }
  double std() const
  {
    if (n < 2) return 0.0;
    return std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1)));
  }
};

inline double to_double(const std::string& s, const std::string& column)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error("column '" + column + "': not a number: '" + s + "'");
}

} // namespace detail

/// Aggregates results rows into metric series. Returns written file paths.
inline std::vector<std::string> emit_metric_series(const CsvTable& results, const std::string& out_dir)
{
  for (const char* c : {"method", "sweep_parameter", "sweep_value", "mcc_mean", "rel_err_mean"}) results.column(c);
  const auto c_method = results.column("method"), c_param = results.column("sweep_parameter"),
             c_x = results.column("sweep_value"), c_mcc = results.column("mcc_mean"),
             c_err = results.column("rel_err_mean");

  struct Series
  {
    std::vector<std::string> methods;
    std::map<std::pair<std::string, double>, std::pair<detail::Moments, detail::Moments>> cells;
  };
  std::vector<std::string> params{"samples", "eta"};
  std::map<std::string, Series> by_param;
  for (const auto& row : results.rows) {
    const auto& p = row[c_param];
    if (std::find(params.begin(), params.end(), p) == params.end()) params.push_back(p);
    auto& s = by_param[p];
    if (std::find(s.methods.begin(), s.methods.end(), row[c_method]) == s.methods.end())
      s.methods.push_back(row[c_method]);
    auto& cell = s.cells[{row[c_method], detail::to_double(row[c_x], "sweep_value")}];
    cell.first.add(detail::to_double(row[c_mcc], "mcc_mean"));
    cell.second.add(detail::to_double(row[c_err], "rel_err_mean"));
  }

  std::vector<std::string> written;
  for (const auto& p : params) {
    CsvTable out;
    out.header = kMetricSeriesHeader;
    if (const auto it = by_param.find(p); it != by_param.end())
      for (const auto& m : it->second.methods)
        for (const auto& [key, mom] : it->second.cells)
          if (key.first == m)
            out.rows.push_back({format_short(key.second), m, std::to_string(mom.first.n),
                                format_double(mom.first.mean()), format_double(mom.first.std()),
                                format_double(mom.second.mean()), format_double(mom.second.std())});
    const std::string path = out_dir + "/metric_vs_" + p + ".csv";
    write_csv(path, out);
    written.push_back(path);
  }
  return written;
}

/// Aggregates bench rows into time-vs-T series, one per worker count.
inline std::string emit_time_series(const CsvTable& bench, const std::string& out_dir)
{
  const auto c_T = bench.column("T"), c_w = bench.column("workers"), c_t = bench.column("wall_time");
  std::map<std::pair<int, int>, detail::Moments> cells; // (workers, T)
  for (const auto& row : bench.rows)
    cells[{int(detail::to_double(row[c_w], "workers")), int(detail::to_double(row[c_T], "T"))}].add(
      detail::to_double(row[c_t], "wall_time"));
  CsvTable out;
  out.header = kTimeSeriesHeader;
  for (const auto& [key, mom] : cells)
    out.rows.push_back({std::to_string(key.second), std::to_string(key.first), std::to_string(mom.n),
                        format_double(mom.mean()), format_double(mom.min)});
  const std::string path = out_dir + "/time_vs_T.csv";
  write_csv(path, out);
  return path;
}

/// Dispatches on the input's columns: bench output gets time_vs_T.csv,
/// anything else is treated as a results table.
inline std::vector<std::string> emit_plot_data(const std::string& csv_path, const std::string& out_dir)
{
  const CsvTable t = read_csv(csv_path);
  if (t.has_column("T") && t.has_column("workers") && !t.has_column("method")) return {emit_time_series(t, out_dir)};
  return emit_metric_series(t, out_dir);
}

} // namespace tvgl::experiment

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pcomb/sim.hpp"

namespace pcomb {

/// Which trailing column a result table carries after the nine shared ones
/// (model, pattern, r, gamma, method, estimate, se, repetitions, seed).
enum class TableKind {
  Power,     // + relative: estimate over the best estimate of the same setting
  NullEcdf,  // + conservative: number of zero entries replaced by -1
  EcdfCurve  // + t: grid point at which the ecdf is evaluated
};

struct ResultRow {
  std::string model;
  std::string pattern;
  double r = 0.0;
  int gamma = 0;
  Method method = Method::Fisher;
  double estimate = 0.0;
  double se = 0.0;
  std::uint64_t repetitions = 0;
  std::uint64_t seed = 0;
  double extra = 0.0;
};

struct ResultTable {
  TableKind kind = TableKind::Power;
  std::string command;
  /// Flag expansion of the run, echoed into the JSON so output files are self-describing.
  std::string invocation;
  std::vector<ResultRow> rows;
};

std::vector<std::string> csv_header(TableKind kind);

/// Comma-separated, header row, '.' decimal point, numbers in %.10g.
void write_csv(std::ostream& out, const ResultTable& table);

/// {"command", "invocation", "columns", "rows": [{column: value, ...}, ...]}
void write_json(std::ostream& out, const ResultTable& table);

/// Formats a double with 10 significant digits, independent of the locale.
std::string format_number(double v);

struct PlotSeries {
  std::string name;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  /// Optional tick labels, one per x value; numeric labels are used when empty.
  std::vector<std::string> x_ticks;
  std::vector<PlotSeries> series;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Minimal SVG: axes, tick labels, one polyline per series and a legend.
void write_svg(std::ostream& out, const LinePlot& plot);

}  // namespace pcomb

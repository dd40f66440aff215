#include "pcomb/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace pcomb {

namespace {

const char* extra_column(TableKind kind) {
  switch (kind) {
    case TableKind::Power:
      return "relative";
    case TableKind::NullEcdf:
      return "conservative";
    case TableKind::EcdfCurve:
      return "t";
  }
  return "extra";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 7> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#17becf"};

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.10g", v);
  return buf.data();
}

std::vector<std::string> csv_header(TableKind kind) {
  return {"model", "pattern", "r",          "gamma", "method", "estimate",
          "se",    "repetitions", "seed", extra_column(kind)};
}

void write_csv(std::ostream& out, const ResultTable& table) {
  const auto header = csv_header(table.kind);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.model << ',' << row.pattern << ',' << format_number(row.r) << ',' << row.gamma << ','
        << method_name(row.method) << ',' << format_number(row.estimate) << ','
        << format_number(row.se) << ',' << row.repetitions << ',' << row.seed << ','
        << format_number(row.extra) << '\n';
  }
}

void write_json(std::ostream& out, const ResultTable& table) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  doc["invocation"] = table.invocation;
  doc["columns"] = csv_header(table.kind);
  auto rows = nlohmann::ordered_json::array();
  const std::string extra = extra_column(table.kind);
  for (const auto& row : table.rows) {
    nlohmann::ordered_json j;
    j["model"] = row.model;
    j["pattern"] = row.pattern;
    j["r"] = row.r;
    j["gamma"] = row.gamma;
    j["method"] = std::string(method_name(row.method));
    j["estimate"] = row.estimate;
    j["se"] = row.se;
    j["repetitions"] = row.repetitions;
    j["seed"] = row.seed;
    if (table.kind == TableKind::NullEcdf) {
      j[extra] = static_cast<int>(row.extra);
    } else {
      j[extra] = row.extra;
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_svg(std::ostream& out, const LinePlot& plot) {
  constexpr double width = 720;
  constexpr double height = 440;
  constexpr double left = 70;
  constexpr double right = 170;
  constexpr double top = 40;
  constexpr double bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = 0.0;
  double x_hi = 1.0;
  if (!plot.x.empty()) {
    x_lo = *std::min_element(plot.x.begin(), plot.x.end());
    x_hi = *std::max_element(plot.x.begin(), plot.x.end());
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  const double y_span = plot.y_max > plot.y_min ? plot.y_max - plot.y_min : 1.0;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - plot.y_min) / y_span) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(plot.title) << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < plot.x.size(); ++i) {
    const std::string label = i < plot.x_ticks.size() ? plot.x_ticks[i] : format_number(plot.x[i]);
    out << "<text x=\"" << px(plot.x[i]) << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\">" << xml_escape(label) << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = plot.y_min + y_span * k / 4.0;
    out << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
        << format_number(y) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">" << xml_escape(plot.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">" << xml_escape(plot.y_label) << "</text>\n";

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    const char* colour = kPalette[s % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < std::min(series.y.size(), plot.x.size()); ++i) {
      out << (i ? " " : "") << format_number(px(plot.x[i])) << ',' << format_number(py(series.y[i]));
    }
    out << "\"/>\n";
    const double ly = top + 14.0 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << ly + 4 << "\">"
        << xml_escape(series.name) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace pcomb

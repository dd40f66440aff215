#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>
#include <string>

#include "pcomb/errors.hpp"
#include "pcomb/presets.hpp"
#include "pcomb/report.hpp"

using namespace pcomb;

namespace {

ResultTable sample_table(TableKind kind) {
  ResultTable t{kind, "power", "power --model beta --r 1", {}};
  t.rows.push_back({"beta", "1", 1.0, 2, Method::Stouffer, 0.0246, 0.001549026791, 10000, 42, 1.0});
  t.rows.push_back({"beta", "1", 1.0, 2, Method::EProduct, 0.0045, 0.0006693093455, 10000, 42, 0.1829268293});
  return t;
}

}  // namespace

TEST(FormatNumber, TenSignificantDigits) {
  EXPECT_EQ(format_number(0.67232), "0.67232");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
  EXPECT_EQ(format_number(1e-12), "1e-12");
  EXPECT_EQ(format_number(12345678901.0), "1.23456789e+10");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Csv, HeaderAndRows) {
  EXPECT_EQ(csv_header(TableKind::Power).back(), "relative");
  EXPECT_EQ(csv_header(TableKind::NullEcdf).back(), "conservative");
  EXPECT_EQ(csv_header(TableKind::EcdfCurve).back(), "t");
  std::ostringstream s;
  write_csv(s, sample_table(TableKind::Power));
  EXPECT_EQ(s.str(),
            "model,pattern,r,gamma,method,estimate,se,repetitions,seed,relative\n"
            "beta,1,1,2,stouffer,0.0246,0.001549026791,10000,42,1\n"
            "beta,1,1,2,e-product,0.0045,0.0006693093455,10000,42,0.1829268293\n");
}

TEST(Json, RoundTripsTheTable) {
  std::ostringstream s;
  write_json(s, sample_table(TableKind::NullEcdf));
  const auto doc = nlohmann::json::parse(s.str());
  EXPECT_EQ(doc["command"], "power");
  EXPECT_EQ(doc["invocation"], "power --model beta --r 1");
  ASSERT_EQ(doc["columns"].size(), 10u);
  EXPECT_EQ(doc["columns"][9], "conservative");
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][1]["method"], "e-product");
  EXPECT_DOUBLE_EQ(doc["rows"][0]["estimate"].get<double>(), 0.0246);
  EXPECT_EQ(doc["rows"][0]["repetitions"].get<int>(), 10000);
}

TEST(Svg, ContainsOnePolylinePerSeries) {
  LinePlot plot;
  plot.title = "a < b & c";
  plot.x = {1, 2, 3};
  plot.x_ticks = {"1", "2", "1c"};
  plot.series = {{"fisher", {0.1, 0.5, 1.0}}, {"stouffer", {1.0, 0.2, 0.3}}};
  std::ostringstream s;
  write_svg(s, plot);
  const std::string svg = s.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t lines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
  EXPECT_EQ(lines, 2u);
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(svg.find(">1c<"), std::string::npos);
}

TEST(Presets, EncodeThePublishedDesigns) {
  const double sigma = 1.0 / std::sqrt(50.0);
  EXPECT_DOUBLE_EQ(default_normal_sigma(), sigma);
  const auto& fig1 = find_preset("fig1");
  EXPECT_EQ(fig1.command, "power");
  EXPECT_EQ(fig1.model.kind(), ModelKind::Beta);
  EXPECT_DOUBLE_EQ(fig1.r, 1.0);
  EXPECT_EQ(fig1.gammas, std::vector<int>{2});
  EXPECT_EQ(fig1.patterns.size(), 22u);
  EXPECT_DOUBLE_EQ(find_preset("fig2").r, 5.0);
  EXPECT_DOUBLE_EQ(find_preset("fig3").r, 0.5 * sigma);
  EXPECT_DOUBLE_EQ(*find_preset("fig3").model.sigma(), sigma);
  EXPECT_DOUBLE_EQ(find_preset("fig4").r, 1.5 * sigma);
  EXPECT_DOUBLE_EQ(find_preset("fig5").r, 10.0);
  EXPECT_EQ(find_preset("fig5").gammas, (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(find_preset("fig6").patterns, (std::vector<std::string>{"7", "7c"}));
  EXPECT_DOUBLE_EQ(find_preset("fig6").r, 3.0 * sigma);
  const auto& fig7 = find_preset("fig7");
  EXPECT_EQ(fig7.command, "ecdf-curve");
  ASSERT_EQ(fig7.bases.size(), 2u);
  EXPECT_EQ(fig7.bases[0].mu_base, (std::vector<double>{2, -1, 0, 0, 0, 0}));
  EXPECT_EQ(fig7.bases[1].mu_base, (std::vector<double>{2, -1, -1, -1, -1, 0}));
  EXPECT_EQ(find_preset("null-beta").conservative_counts, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  try {
    find_preset("fig9");
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("fig7"), std::string::npos);
  }
}

TEST(Presets, GridAndBases) {
  const auto grid = uniform_grid(4);
  EXPECT_EQ(grid, (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(null_base("zeros").mu_base, std::vector<double>(6, 0.0));
  EXPECT_EQ(null_base("spike").mu_base, (std::vector<double>{2, 0, 0, 0, 0, 0}));
  EXPECT_THROW(null_base("ramp"), ParameterError);
}

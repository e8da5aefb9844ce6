#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <string>

#include "crsim/svg.hpp"

using namespace crsim;

namespace {

ResultRow row(const std::string& proto, double lambda_p, double tput, double service = 0.1) {
  ResultRow r;
  r.scenario = "t";
  r.protocol = proto;
  r.seed = 1;
  r.num_channels = 10;
  r.num_pairs = 10;
  r.lambda_p = lambda_p;
  r.lambda_s = 500;
  r.throughput_bps = tput;
  r.avg_service_time_s = service;
  return r;
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("emit_plot draws one polyline and marker set per series") {
  std::vector<ResultRow> rows{row("gcs_srv", 1, 100), row("gcs_srv", 2, 90),
                              row("gcs_srv", 3, 80),  row("random", 1, 50),
                              row("random", 2, 40),   row("random", 3, 30)};
  std::string svg = emit_plot(rows, "lambda_p", "throughput_bps", "protocol");
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "<circle") == 6);
  CHECK(count(svg, ">gcs_srv</text>") == 1);
  CHECK(count(svg, ">random</text>") == 1);
  CHECK(count(svg, ">lambda_p</text>") == 1);
  CHECK(count(svg, ">throughput_bps</text>") == 1);
  CHECK(svg.starts_with("<svg "));
  CHECK(svg.ends_with("</svg>\n"));

  CHECK(emit_plot(rows, "lambda_p", "throughput_bps", "protocol") == svg);  // deterministic
}

TEST_CASE("emit_plot averages rows sharing a point and drops NaN values") {
  std::vector<ResultRow> rows{row("gcs_srv", 1, 100, 0.1), row("gcs_srv", 1, 200, 0.2)};
  rows.push_back(row("gcs_srv", 2, 0, std::nan("")));
  rows.push_back(row("gcs_srv", 3, 0, 0.3));

  std::string svg = emit_plot(rows, "lambda_p", "avg_service_time_s", "protocol");
  // Seeds at x=1 merge into one marker; the NaN row vanishes entirely.
  CHECK(count(svg, "<circle") == 2);
  CHECK(count(svg, "<polyline") == 1);
}

TEST_CASE("emit_plot copes with a single point") {
  std::vector<ResultRow> rows{row("gcs_srv", 5, 42)};
  std::string svg = emit_plot(rows, "lambda_p", "throughput_bps", "protocol");
  CHECK(count(svg, "<circle") == 1);
  CHECK(count(svg, "nan") == 0);  // degenerate ranges stay finite
}

TEST_CASE("emit_plot rejects unusable selections") {
  std::vector<ResultRow> rows{row("gcs_srv", 1, 100)};
  CHECK_THROWS_AS(emit_plot(rows, "protocol", "throughput_bps", "protocol"),
                  std::invalid_argument);
  CHECK_THROWS_AS(emit_plot(rows, "lambda_p", "scenario", "protocol"), std::invalid_argument);
  CHECK_THROWS_AS(emit_plot({}, "lambda_p", "throughput_bps", "protocol"),
                  std::invalid_argument);
  std::vector<ResultRow> all_nan{row("gcs_srv", 1, 0, std::nan(""))};
  CHECK_THROWS_AS(emit_plot(all_nan, "lambda_p", "avg_service_time_s", "protocol"),
                  std::invalid_argument);
}

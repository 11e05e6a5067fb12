#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "pdc/config.hpp"
#include "pdc/csv.hpp"
#include "pdc/errors.hpp"
#include "pdc/figures.hpp"
#include "pdc/multimode.hpp"
#include "pdc/multiplex.hpp"
#include "pdc/sweep.hpp"

using namespace pdc;

TEST_CASE("double formatting round-trips exactly") {
  std::mt19937_64 rng(20260823);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    double v = std::ldexp(mant(rng), expo(rng));
    CHECK(parse_double(format_double(v)) == v);
  }
  for (double v : {0.0, 0.25, 1.0 / 3.0, 1e-300, 6.02214076e23})
    CHECK(parse_double(format_double(v)) == v);
  CHECK(format_double(0.25) == "0.25");
  CHECK_THROWS_AS(parse_double("1.5x"), ConfigError);
  CHECK_THROWS_AS(parse_double(""), ConfigError);
}

TEST_CASE("csv round trip preserves rows and metadata") {
  CsvDocument doc;
  doc.metadata = {"first note", "second note"};
  SweepRow a;
  a.r = 0.1234567890123456;
  a.eta = 1.0;
  a.dark = 0.0;
  a.detector = "pnr1";
  a.fidelity = 0.999999999999;
  a.herald_prob = 1e-7;
  SweepRow b;  // multimode row: r empty, gain set
  b.gain = 1.36;
  b.mu = 0.5773502691896257;
  b.schmidt_k = 2.0;
  b.detector = "binary_click";
  b.status = "truncation_cap_exceeded";
  doc.rows = {a, b};
  auto parsed = read_csv_string(to_csv_string(doc));
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.metadata == doc.metadata);
  CHECK(parsed.rows[0].r == a.r);  // bitwise identical after the round trip
  CHECK(parsed.rows[0].fidelity == a.fidelity);
  CHECK(parsed.rows[0].herald_prob == a.herald_prob);
  CHECK(parsed.rows[0].detector == "pnr1");
  CHECK_FALSE(parsed.rows[0].gain.has_value());
  CHECK_FALSE(parsed.rows[1].r.has_value());
  CHECK(parsed.rows[1].gain == b.gain);
  CHECK(parsed.rows[1].mu == b.mu);
  CHECK(parsed.rows[1].status == "truncation_cap_exceeded");
}

TEST_CASE("csv reader rejects malformed input") {
  CHECK_THROWS_AS(read_csv_string("nonsense\n"), ConfigError);
  CHECK_THROWS_AS(read_csv_string(""), ConfigError);
  std::string good_header(kCsvHeader);
  CHECK_THROWS_AS(read_csv_string(good_header + "\n1,2,3\n"), ConfigError);
  CHECK_THROWS_AS(
      read_csv_string(good_header + "\noops,,,,,,pnr1,,,ok\n"), ConfigError);
  CHECK_NOTHROW(read_csv_string(good_header + "\n0.5,,,,1,0,pnr1,1,0.2,ok\n"));
}

TEST_CASE("grid values pin both endpoints") {
  GridSpec lin{0.1, 2.0, 20, GridSpacing::Linear};
  auto v = lin.values();
  REQUIRE(v.size() == 20);
  CHECK(v.front() == 0.1);
  CHECK(v.back() == 2.0);
  CHECK(v[1] == doctest::Approx(0.1 + 1.9 / 19.0).epsilon(1e-15));
  GridSpec lg{0.01, 3.0, 300, GridSpacing::Log};
  auto w = lg.values();
  CHECK(w.front() == 0.01);
  CHECK(w.back() == 3.0);
  // log spacing means constant ratio
  CHECK(w[10] / w[9] == doctest::Approx(w[200] / w[199]).epsilon(1e-10));
  GridSpec single{0.7, 0.7, 1, GridSpacing::Linear};
  CHECK(single.values() == std::vector<double>{0.7});
  CHECK_THROWS_AS((GridSpec{2.0, 1.0, 5, GridSpacing::Linear}.values()),
                  ConfigError);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 5, GridSpacing::Log}.values()),
                  ConfigError);
  CHECK_THROWS_AS((GridSpec{0.1, 1.0, 0, GridSpacing::Linear}.values()),
                  ConfigError);
}

TEST_CASE("multimode source resolves exactly one profile parameter") {
  MultimodeSource s;
  CHECK_THROWS_AS(s.resolved_mu(), ConfigError);  // neither given
  s.mu = 0.4;
  CHECK(s.resolved_mu() == 0.4);
  s.schmidt_k = 2.0;
  CHECK_THROWS_AS(s.resolved_mu(), ConfigError);  // both given
  s.mu = -1.0;
  CHECK(s.resolved_mu() == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("single-mode sweep rows match direct evaluation") {
  SweepSpec spec = default_spec();
  spec.grid = {0.2, 1.0, 5, GridSpacing::Linear};
  auto rows = evaluate_sweep(spec);
  REQUIRE(rows.size() == 5);
  auto series = spec.detector.coefficients();
  auto grid = spec.grid.values();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].r == grid[i]);
    CHECK_FALSE(rows[i].gain.has_value());
    CHECK(rows[i].detector == "pnr1");
    CHECK(rows[i].status == "ok");
    auto rep = herald_report(SqueezeParam(grid[i]), series);
    CHECK(rows[i].fidelity == rep.fidelity);
    CHECK(rows[i].herald_prob == rep.heralding_probability);
  }
}

TEST_CASE("multimode sweep rows carry the profile columns") {
  SweepSpec spec = default_spec();
  spec.multimode = true;
  spec.grid = {0.3, 1.2, 4, GridSpacing::Linear};
  spec.source.schmidt_k = 2.0;
  auto rows = evaluate_sweep(spec);
  REQUIRE(rows.size() == 4);
  double mu = mu_from_schmidt(2.0);
  for (const auto& row : rows) {
    CHECK_FALSE(row.r.has_value());
    CHECK(row.mu == mu);
    CHECK(*row.schmidt_k == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(row.status == "ok");
  }
  auto series = spec.detector.coefficients();
  auto rep = multimode_herald(build_modes_auto(mu, 1.2), series);
  CHECK(rows[3].fidelity == rep.fidelity);
  CHECK(rows[3].herald_prob == rep.heralding_probability);
}

TEST_CASE("degenerate grid points become row statuses") {
  SweepSpec spec = default_spec();
  spec.grid = {0.0, 1.0, 3, GridSpacing::Linear};
  auto rows = evaluate_sweep(spec);
  CHECK(rows[0].status == "degenerate_herald");
  CHECK_FALSE(rows[0].fidelity.has_value());
  CHECK(rows[1].status == "ok");
}

TEST_CASE("parallel evaluation is byte-identical to serial") {
  SweepSpec spec = default_spec();
  spec.grid = {0.05, 2.2, 60, GridSpacing::Log};
  spec.detector.eta = 0.8;
  spec.jobs = 1;
  auto serial = to_csv_string(sweep_document(spec));
  spec.jobs = 4;
  auto parallel = to_csv_string(sweep_document(spec));
  CHECK(serial == parallel);
  spec.jobs = 0;  // hardware default
  CHECK(to_csv_string(sweep_document(spec)) == serial);
}

TEST_CASE("json output carries the same numbers as csv") {
  SweepSpec spec = default_spec();
  spec.grid = {0.4, 0.8, 3, GridSpacing::Linear};
  spec.format = OutputFormat::Json;
  std::ostringstream os;
  run_sweep(spec, os);
  auto j = nlohmann::json::parse(os.str());
  REQUIRE(j["rows"].size() == 3);
  spec.format = OutputFormat::Csv;
  auto rows = evaluate_sweep(spec);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(j["rows"][i]["r"].get<double>() == *rows[i].r);
    CHECK(j["rows"][i]["fidelity"].get<double>() == *rows[i].fidelity);
    CHECK(j["rows"][i]["herald_prob"].get<double>() == *rows[i].herald_prob);
    CHECK(j["rows"][i]["status"] == "ok");
  }
}

TEST_CASE("config json round trip") {
  SweepSpec spec = default_spec();
  spec.multimode = true;
  spec.grid = {0.01, 1.36, 128, GridSpacing::Log};
  spec.source.schmidt_k = 5.0;
  spec.detector.family = DetectorFamily::BinaryClick;
  spec.detector.eta = 0.25;
  spec.detector.dark = 1e-5;
  spec.policy.tolerance = 1e-10;
  spec.output_path = "out.csv";
  spec.format = OutputFormat::Json;
  spec.jobs = 3;
  SweepSpec back = spec_from_json(spec_to_json(spec));
  CHECK(back.multimode == spec.multimode);
  CHECK(back.grid.start == spec.grid.start);
  CHECK(back.grid.stop == spec.grid.stop);
  CHECK(back.grid.points == spec.grid.points);
  CHECK(back.grid.spacing == spec.grid.spacing);
  CHECK(back.source.mu == spec.source.mu);
  CHECK(back.source.schmidt_k == spec.source.schmidt_k);
  CHECK(back.detector.family == spec.detector.family);
  CHECK(back.detector.eta == spec.detector.eta);
  CHECK(back.detector.dark == spec.detector.dark);
  CHECK(back.policy.tolerance == spec.policy.tolerance);
  CHECK(back.output_path == spec.output_path);
  CHECK(back.format == spec.format);
  CHECK(back.jobs == spec.jobs);
}

TEST_CASE("config parsing fails loudly") {
  using nlohmann::json;
  CHECK_THROWS_AS(spec_from_json(json::array()), ConfigError);
  CHECK_THROWS_WITH_AS(spec_from_json(json{{"grdi", json::object()}}),
                       "config: unknown key 'grdi'", ConfigError);
  CHECK_THROWS_WITH_AS(
      spec_from_json(json{{"grid", {{"stpo", 1.0}}}}),
      "config: unknown key 'grid.stpo'", ConfigError);
  CHECK_THROWS_AS(spec_from_json(json{{"grid", {{"points", 2.5}}}}),
                  ConfigError);
  CHECK_THROWS_AS(spec_from_json(json{{"mode", "dual"}}), ConfigError);
  CHECK_THROWS_AS(spec_from_json(json{{"detector", {{"family", "emccd"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("default spec survives serialization") {
  SweepSpec spec = spec_from_json(spec_to_json(default_spec()));
  CHECK_FALSE(spec.multimode);
  CHECK(spec.grid.points == 20);
  CHECK(spec.detector.family == DetectorFamily::Pnr);
  CHECK(spec.detector.herald_n == 1);
  CHECK(spec.jobs == 1);
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("figure identifiers") {
  CHECK(parse_figure_id("fig2") == FigureId::Fig2);
  CHECK(parse_figure_id("fig6") == FigureId::Fig6);
  CHECK_THROWS_AS(parse_figure_id("fig7"), ConfigError);
  CHECK(std::string(to_string(FigureId::Fig4)) == "fig4");
}

TEST_CASE("figure curve families are deterministic") {
  auto a = figure_curves(FigureId::Fig2, 1);
  REQUIRE(a.size() == 4);
  CHECK(a[0].name == "fig2_eta0.25");
  CHECK(a[3].name == "fig2_eta1");
  REQUIRE(a[0].doc.rows.size() == 300);
  auto b = figure_curves(FigureId::Fig2, 4);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(to_csv_string(a[i].doc) == to_csv_string(b[i].doc));
}

TEST_CASE("multiplexed figure rescales the base heralding probability") {
  auto curves = figure_curves(FigureId::Fig6, 2);
  REQUIRE(curves.size() == 5);
  CHECK(curves[0].name == "fig6_n1");
  CHECK(curves[4].name == "fig6_n17");
  const auto& base = curves[0].doc.rows;
  const auto& banked = curves[4].doc.rows;
  REQUIRE(base.size() == banked.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!base[i].herald_prob) continue;
    CHECK(*banked[i].herald_prob ==
          doctest::Approx(switched_probability({*base[i].herald_prob, 17}))
              .epsilon(1e-13));
    CHECK(*banked[i].fidelity == *base[i].fidelity);  // switching is lossless
  }
}

TEST_CASE("optimize report bundles the scalar summaries") {
  DetectorModel det;  // ideal pnr
  auto rep = optimize_detector(det, 0.99);
  CHECK(rep.point.heralding_probability == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.mean_photons == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.squeezing_db == doctest::Approx(7.655513707111118).epsilon(1e-4));
  REQUIRE(rep.sources_for_target.count(0.99) == 1);
  CHECK(rep.sources_for_target.at(0.9) == 9);
  CHECK(rep.sources_for_target.at(0.99) == 17);
  CHECK(rep.sources_for_target.at(0.999) == 25);
  auto j = optimize_report_to_json(rep);
  CHECK(j["sources_needed"]["0.99"] == 17);
  CHECK(j["unbounded"] == false);
}

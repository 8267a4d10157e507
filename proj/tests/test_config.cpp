#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "echocon/config.hpp"
#include "echocon/csv.hpp"
#include "echocon/study.hpp"

using namespace echocon;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("echocon_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("default config is valid and round-trips byte for byte") {
  ExperimentConfig cfg;
  cfg.output_dir = "out";
  CHECK_NOTHROW(cfg.validate());

  const std::string text = serialize_config(cfg);
  const ExperimentConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.snesm.feedback_gain == cfg.snesm.feedback_gain);
  CHECK(back.memristor().alpha == cfg.memristor().alpha);
  CHECK(back.score.base_freqs == cfg.score.base_freqs);
  CHECK(back.output_dir == "out");
}

TEST_CASE("partial JSON keeps defaults for missing keys") {
  const auto cfg = parse_config(R"({"snesm": {"feedback_gain": 0.4}})");
  CHECK(cfg.snesm.feedback_gain == doctest::Approx(0.4));
  CHECK(cfg.memristor().rmax == doctest::Approx(390.0));
  CHECK(cfg.analysis.min_base_width == 4);
}

TEST_CASE("invalid configs list the offending sections") {
  const std::string bad = R"({
    "memristor": {"rmin": 500, "rmax": 390, "rinit": 390, "alpha": 40000,
                   "beta": 10, "gamma": 0.2, "vt_r": 1.5, "vt_l": -1.5,
                   "yo": 0.0001, "m": 82, "fo": 310, "lo": 4},
    "analysis": {"rel_threshold": 2.0, "min_base_width": 4, "eps": 0.1}
  })";
  try {
    parse_config(bad);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("memristor") != std::string::npos);
    CHECK(msg.find("analysis") != std::string::npos);
  }
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(parse_config("{nope"), std::invalid_argument);
}

TEST_CASE("config hash is stable and sensitive") {
  ExperimentConfig a;
  ExperimentConfig b;
  CHECK(config_hash(a) == config_hash(b));
  b.snesm.feedback_gain = 0.6;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.0, 1.0, 61.875, 1.0 / 3.0, 2e-16, -19.5, 1.0 / 65536.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("csv writer and parser round-trip") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"3.5", "x"}};
  const auto text = to_csv(t);
  const auto back = parse_csv(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), std::runtime_error);
}

TEST_CASE("plot emission validates schemas") {
  TempDir tmp;
  const auto curve = (tmp.path / "curve.csv").string();
  write_text_file(curve,
                  "quality,ratio,ratio_value,mean_reciprocal\n"
                  "unison,1/1,1,0.33\noctave,2/1,2,0.25\n");
  const auto svg = (tmp.path / "curve.svg").string();
  emit_plot(curve, PlotKind::line, svg);
  const auto content = read_text_file(svg);
  CHECK(content.rfind("<svg", 0) == 0);
  CHECK(content.find("polyline") != std::string::npos);

  const auto pts = (tmp.path / "points.csv").string();
  write_text_file(pts,
                  "interval,base_hz,d1,d2,d3\n"
                  "unison,61.875,1,1,1\nperfect5,66,0.5,0.5,0.5\n");
  const auto psvg = (tmp.path / "points.svg").string();
  emit_plot(pts, PlotKind::scatter3d_projections, psvg);
  CHECK(read_text_file(psvg).rfind("<svg", 0) == 0);

  // Schema mismatches.
  CHECK_THROWS_AS(emit_plot(curve, PlotKind::scatter3d_projections, psvg),
                  std::invalid_argument);
  const auto empty = (tmp.path / "empty.csv").string();
  write_text_file(empty, "quality,ratio,ratio_value,mean_reciprocal\n");
  CHECK_THROWS_AS(emit_plot(empty, PlotKind::line, svg), std::invalid_argument);
}

TEST_CASE("a tiny study writes deterministic outputs") {
  // One interval, shortened loop: exercises the file layout end to end.
  // The curve readout needs generations 1..9, so keep all ten windows.
  ExperimentConfig cfg;
  cfg.snesm.delay_s = 0.25;
  cfg.snesm.pulse_duration_s = 0.25;
  cfg.score.base_freqs = {64.0};

  StudyFilter filter;
  filter.intervals = std::vector<IntervalQuality>{IntervalQuality::unison};

  TempDir tmp;
  const auto runs = execute_runs(cfg, filter, 1);
  REQUIRE(runs.size() == 1);
  const auto m1 = write_study_outputs(cfg, runs, (tmp.path / "a").string());
  const auto m2 = write_study_outputs(cfg, runs, (tmp.path / "b").string());
  CHECK(m1.outputs == m2.outputs);
  CHECK(!m1.outputs.empty());
  for (const auto& rel : m1.outputs) {
    const auto a = read_text_file((tmp.path / "a" / rel).string());
    const auto b = read_text_file((tmp.path / "b" / rel).string());
    CHECK(a == b);
  }
  CHECK(fs::exists(tmp.path / "a" / "curve.csv"));
  CHECK(fs::exists(tmp.path / "a" / "points.csv"));
  CHECK(fs::exists(tmp.path / "a" / "report.json"));
  CHECK(fs::exists(tmp.path / "a" / "runs" / "unison_64" / "gen00.csv"));
}

TEST_CASE("run_full_study requires an output directory") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(run_full_study(cfg), std::invalid_argument);
}

#include "echocon/study.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "echocon/csv.hpp"
#include "echocon/dissonance.hpp"
#include "json.hpp"

namespace echocon {

namespace fs = std::filesystem;
using nlohmann::json;

RunAnalysis analyze_trace(const GenerationTrace& trace, const AnalysisConfig& analysis) {
  RunAnalysis out;
  out.peak_lists.reserve(trace.windows.size());
  out.peak_counts.reserve(trace.windows.size());
  for (std::size_t g = 0; g < trace.windows.size(); ++g) {
    const Spectrum sp = magnitude_spectrum(trace.windows[g], trace.analysis_rate_hz);
    PeakList pl = detect_peaks(sp, analysis.min_base_width, analysis.rel_threshold);
    pl.generation = static_cast<int>(g);
    pl = normalize_peaks(std::move(pl), trace.interval.f_lower_hz);
    out.peak_counts.push_back(static_cast<int>(pl.peaks.size()));
    out.peak_lists.push_back(std::move(pl));
  }
  return out;
}

std::vector<StudyRun> execute_runs(const ExperimentConfig& cfg,
                                   const StudyFilter& filter, int jobs) {
  cfg.validate();

  std::vector<IntervalQuality> qualities;
  if (filter.intervals) {
    qualities = *filter.intervals;
  } else {
    for (int q = 0; q < kIntervalCount; ++q) qualities.push_back(static_cast<IntervalQuality>(q));
  }
  const std::vector<double>& bases = filter.bases ? *filter.bases : cfg.score.base_freqs;

  std::vector<IntervalSpec> specs;
  for (double base : bases)
    for (IntervalQuality q : qualities) specs.push_back(make_interval(q, base));

  std::vector<StudyRun> runs(specs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size() || failed.load()) break;
      try {
        StudyRun& run = runs[i];
        run.interval = specs[i];
        run.trace = run_snesm(specs[i], cfg.snesm);
        run.analysis = analyze_trace(run.trace, cfg.analysis);
      } catch (const std::exception& e) {
        std::scoped_lock lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  unsigned n_threads = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(specs.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("study run failed: " + error_message);
  return runs;
}

namespace {

std::string run_dir_name(const IntervalSpec& spec) {
  return std::string(quality_name(spec.quality)) + "_" + format_double(spec.f_lower_hz);
}

std::string ratio_string(Rational r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

void write_run_outputs(const ExperimentConfig& cfg, const StudyRun& run,
                       const fs::path& dir, std::vector<std::string>& outputs,
                       const fs::path& root) {
  fs::create_directories(dir);

  for (std::size_t g = 0; g < run.trace.windows.size(); ++g) {
    CsvTable t;
    t.header = {"v"};
    t.rows.reserve(run.trace.windows[g].size());
    for (double v : run.trace.windows[g]) t.rows.push_back({format_double(v)});
    char name[16];
    std::snprintf(name, sizeof(name), "gen%02zu.csv", g);
    const fs::path p = dir / name;
    write_text_file(p.string(), to_csv(t));
    outputs.push_back(fs::relative(p, root).generic_string());
  }

  CsvTable peaks;
  peaks.header = {"generation", "frequency_hz", "normalized", "magnitude"};
  for (const auto& pl : run.analysis.peak_lists) {
    for (const auto& pk : pl.peaks) {
      peaks.rows.push_back({std::to_string(pl.generation), format_double(pk.frequency_hz),
                            format_double(pk.normalized), format_double(pk.magnitude)});
    }
  }
  const fs::path peaks_path = dir / "peaks.csv";
  write_text_file(peaks_path.string(), to_csv(peaks));
  outputs.push_back(fs::relative(peaks_path, root).generic_string());

  json manifest;
  manifest["interval"] = quality_name(run.interval.quality);
  manifest["ratio"] = ratio_string(run.interval.ratio);
  manifest["f_lower_hz"] = run.interval.f_lower_hz;
  manifest["f_upper_hz"] = run.interval.f_upper_hz;
  manifest["analysis_rate_hz"] = run.trace.analysis_rate_hz;
  manifest["generations"] = run.trace.windows.size();
  manifest["config"] = json::parse(serialize_config(cfg));
  const fs::path mpath = dir / "manifest.json";
  write_text_file(mpath.string(), manifest.dump(2) + "\n");
  outputs.push_back(fs::relative(mpath, root).generic_string());
}

json cluster_to_json(const ClusterReport& rep, std::size_t n_points) {
  json j;
  j["centroid"] = {rep.centroid[0], rep.centroid[1], rep.centroid[2]};
  j["dispersion"] = rep.dispersion;
  j["fraction_within_eps"] = rep.fraction_within_eps;
  j["points"] = n_points;
  return j;
}

}  // namespace

RunManifest write_study_outputs(const ExperimentConfig& cfg,
                                const std::vector<StudyRun>& runs,
                                const std::string& out_dir) {
  const fs::path root(out_dir);
  fs::create_directories(root);
  std::vector<std::string> outputs;

  for (const auto& run : runs)
    write_run_outputs(cfg, run, root / "runs" / run_dir_name(run.interval), outputs, root);

  // Peak-count table and consonance curve.
  std::vector<PeakCountRow> count_rows;
  for (const auto& run : runs) {
    for (std::size_t g = 0; g < run.analysis.peak_counts.size(); ++g) {
      count_rows.push_back({run.interval.quality, run.interval.f_lower_hz,
                            static_cast<int>(g), run.analysis.peak_counts[g]});
    }
  }
  const std::vector<CurveRow> curve = consonance_curve(count_rows);

  std::vector<double> bases;
  for (const auto& row : curve)
    for (const auto& [base, value] : row.per_base)
      if (std::find(bases.begin(), bases.end(), base) == bases.end()) bases.push_back(base);
  std::sort(bases.begin(), bases.end());

  CsvTable curve_csv;
  curve_csv.header = {"quality", "ratio", "ratio_value", "mean_reciprocal"};
  for (double b : bases) curve_csv.header.push_back("recip_base_" + format_double(b));
  for (const auto& row : curve) {
    std::vector<std::string> cells = {
        quality_name(row.quality), ratio_string(row.ratio),
        format_double(static_cast<double>(row.ratio.num) / static_cast<double>(row.ratio.den)),
        format_double(row.mean_reciprocal)};
    for (double b : bases) {
      auto it = std::find_if(row.per_base.begin(), row.per_base.end(),
                             [&](const auto& pb) { return pb.first == b; });
      cells.push_back(it != row.per_base.end() ? format_double(it->second) : "");
    }
    curve_csv.rows.push_back(std::move(cells));
  }
  write_text_file((root / "curve.csv").string(), to_csv(curve_csv));
  outputs.push_back("curve.csv");

  // Phase portrait points, pooled per interval quality across bases.
  CsvTable points_csv;
  points_csv.header = {"interval", "base_hz", "d1", "d2", "d3"};
  std::map<int, std::vector<PhasePoint>> pooled;
  for (const auto& run : runs) {
    const auto pts = phase_points(run.analysis.peak_lists);
    auto& bucket = pooled[static_cast<int>(run.interval.quality)];
    bucket.insert(bucket.end(), pts.begin(), pts.end());
    for (const auto& p : pts) {
      points_csv.rows.push_back({quality_name(run.interval.quality),
                                 format_double(run.interval.f_lower_hz),
                                 format_double(p.d1), format_double(p.d2),
                                 format_double(p.d3)});
    }
  }
  write_text_file((root / "points.csv").string(), to_csv(points_csv));
  outputs.push_back("points.csv");

  json report;
  report["eps"] = cfg.analysis.eps;
  for (const auto& [q, pts] : pooled) {
    const auto quality = static_cast<IntervalQuality>(q);
    json entry;
    if (!pts.empty()) {
      entry["cluster"] = cluster_to_json(cluster_report(pts, quality, cfg.analysis.eps), pts.size());
      entry["class"] = interval_class_name(classify_interval(pts, cfg.analysis.eps));
    } else {
      entry["cluster"] = nullptr;
      entry["class"] = nullptr;
    }
    entry["ratio"] = ratio_string(quality_ratio(quality));
    report[std::string("intervals")][quality_name(quality)] = entry;
  }
  write_text_file((root / "report.json").string(), report.dump(2) + "\n");
  outputs.push_back("report.json");

  // Sensory dissonance oracle curve (5 harmonics, the reference overlay).
  {
    const auto grid = ratio_grid(1.0, 2.01, 0.005);
    const auto oracle = dissonance_curve(110.0, 5, AmplitudeLaw::uniform(), grid);
    CsvTable t;
    t.header = {"ratio", "dissonance"};
    for (const auto& pt : oracle)
      t.rows.push_back({format_double(pt.ratio), format_double(pt.dissonance)});
    write_text_file((root / "dissonance_curve.csv").string(), to_csv(t));
    outputs.push_back("dissonance_curve.csv");
  }

  std::sort(outputs.begin(), outputs.end());

  RunManifest manifest;
  manifest.config_hash = config_hash(cfg);
  manifest.tool_version = kToolVersion;
  manifest.outputs = std::move(outputs);
  return manifest;
}

RunManifest run_full_study(const ExperimentConfig& cfg, const StudyFilter& filter,
                           int jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.output_dir.empty())
    throw std::invalid_argument("run_full_study: output_dir is not set");

  const auto runs = execute_runs(cfg, filter, jobs);
  RunManifest manifest = write_study_outputs(cfg, runs, cfg.output_dir);
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j;
  j["config_hash"] = manifest.config_hash;
  j["tool_version"] = manifest.tool_version;
  j["outputs"] = manifest.outputs;
  j["wall_seconds"] = manifest.wall_seconds;
  write_text_file((fs::path(cfg.output_dir) / "manifest.json").string(), j.dump(2) + "\n");
  return manifest;
}

// ---------------------------------------------------------------------------
// SVG emission

namespace {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

double column_value(const CsvTable& t, std::size_t row, std::size_t col) {
  try {
    return std::stod(t.rows[row][col]);
  } catch (const std::exception&) {
    throw std::invalid_argument("plot: non-numeric cell in column " + t.header[col]);
  }
}

std::size_t column_index(const CsvTable& t, const std::string& name) {
  auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end())
    throw std::invalid_argument("plot: CSV is missing required column '" + name + "'");
  return static_cast<std::size_t>(it - t.header.begin());
}

struct Bounds {
  double lo = 0.0, hi = 1.0;
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::string svg_header(int w, int h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) +
         " " + std::to_string(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                          "#aec7e8", "#ffbb78", "#98df8a"};

void emit_line_plot(const CsvTable& t, const std::string& svg_path) {
  if (t.rows.empty()) throw std::invalid_argument("plot: CSV has no data rows");
  const std::size_t xcol = t.header.size() > 2 && t.header[2] == "ratio_value"
                               ? column_index(t, "ratio_value")
                               : 0;
  std::size_t ycol;
  try {
    ycol = column_index(t, "mean_reciprocal");
  } catch (const std::invalid_argument&) {
    ycol = column_index(t, "dissonance");
  }

  Series s;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    s.x.push_back(column_value(t, r, xcol));
    s.y.push_back(column_value(t, r, ycol));
  }

  const int w = 640, h = 420, margin = 50;
  Bounds bx{s.x[0], s.x[0]}, by{0.0, s.y[0]};
  for (double v : s.x) bx.expand(v);
  for (double v : s.y) by.expand(v);
  if (bx.hi == bx.lo) bx.hi = bx.lo + 1.0;
  if (by.hi == by.lo) by.hi = by.lo + 1.0;

  auto px = [&](double v) {
    return margin + (v - bx.lo) / (bx.hi - bx.lo) * (w - 2 * margin);
  };
  auto py = [&](double v) {
    return h - margin - (v - by.lo) / (by.hi - by.lo) * (h - 2 * margin);
  };

  std::string svg = svg_header(w, h);
  svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + std::to_string(h - margin) +
         "\" x2=\"" + std::to_string(w - margin) + "\" y2=\"" + std::to_string(h - margin) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + std::to_string(margin) +
         "\" x2=\"" + std::to_string(margin) + "\" y2=\"" + std::to_string(h - margin) +
         "\" stroke=\"black\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < s.x.size(); ++i)
    svg += format_double(px(s.x[i])) + "," + format_double(py(s.y[i])) + " ";
  svg += "\"/>\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    svg += "<circle cx=\"" + format_double(px(s.x[i])) + "\" cy=\"" +
           format_double(py(s.y[i])) + "\" r=\"2.5\" fill=\"#d62728\"/>\n";
  }
  svg += "<text x=\"" + std::to_string(w / 2) + "\" y=\"" + std::to_string(h - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + t.header[xcol] + "</text>\n";
  svg += "<text x=\"14\" y=\"" + std::to_string(h / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
         std::to_string(h / 2) + ")\">" + t.header[ycol] + "</text>\n";
  svg += "</svg>\n";
  write_text_file(svg_path, svg);
}

void emit_scatter_plot(const CsvTable& t, const std::string& svg_path) {
  if (t.rows.empty()) throw std::invalid_argument("plot: CSV has no data rows");
  const std::size_t c1 = column_index(t, "d1");
  const std::size_t c2 = column_index(t, "d2");
  const std::size_t c3 = column_index(t, "d3");
  std::size_t label_col = 0;
  bool has_label = true;
  try {
    label_col = column_index(t, "interval");
  } catch (const std::invalid_argument&) {
    has_label = false;
  }

  std::vector<std::string> labels;
  auto color_of = [&](const std::string& label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    std::size_t idx;
    if (it == labels.end()) {
      labels.push_back(label);
      idx = labels.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - labels.begin());
    }
    return kPalette[idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
  };

  const int pw = 300, ph = 300, margin = 40;
  const int w = 3 * pw + 4 * margin, h = ph + 2 * margin + 40;
  Bounds b{0.0, 1.2};
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    b.expand(column_value(t, r, c1));
    b.expand(column_value(t, r, c2));
    b.expand(column_value(t, r, c3));
  }

  const std::array<std::pair<std::size_t, std::size_t>, 3> panels{
      {{c1, c2}, {c1, c3}, {c2, c3}}};
  const std::array<const char*, 3> panel_names{"d1 - d2", "d1 - d3", "d2 - d3"};

  std::string svg = svg_header(w, h);
  for (int p = 0; p < 3; ++p) {
    const int x0 = margin + p * (pw + margin);
    const int y0 = margin;
    svg += "<rect x=\"" + std::to_string(x0) + "\" y=\"" + std::to_string(y0) +
           "\" width=\"" + std::to_string(pw) + "\" height=\"" + std::to_string(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(x0 + pw / 2) + "\" y=\"" +
           std::to_string(y0 + ph + 24) + "\" text-anchor=\"middle\" font-size=\"12\">" +
           panel_names[static_cast<std::size_t>(p)] + "</text>\n";
    auto sx = [&](double v) { return x0 + (v - b.lo) / (b.hi - b.lo) * pw; };
    auto sy = [&](double v) { return y0 + ph - (v - b.lo) / (b.hi - b.lo) * ph; };
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const double vx = column_value(t, r, panels[static_cast<std::size_t>(p)].first);
      const double vy = column_value(t, r, panels[static_cast<std::size_t>(p)].second);
      const char* color = has_label ? color_of(t.rows[r][label_col]) : kPalette[0];
      svg += "<circle cx=\"" + format_double(sx(vx)) + "\" cy=\"" + format_double(sy(vy)) +
             "\" r=\"2\" fill=\"" + color + "\" fill-opacity=\"0.6\"/>\n";
    }
  }
  svg += "</svg>\n";
  write_text_file(svg_path, svg);
}

}  // namespace

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
  const CsvTable t = parse_csv(read_text_file(csv_path));
  if (t.header.empty()) throw std::invalid_argument("plot: empty CSV");
  if (kind == PlotKind::line)
    emit_line_plot(t, svg_path);
  else
    emit_scatter_plot(t, svg_path);
}

}  // namespace echocon

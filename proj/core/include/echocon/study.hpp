#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echocon/classify.hpp"
#include "echocon/config.hpp"

namespace echocon {

/// Everything derived from one SNESM run that the readout layers consume.
struct RunAnalysis {
  std::vector<PeakList> peak_lists;  // per generation, F0-normalized
  std::vector<int> peak_counts;      // per generation
};

RunAnalysis analyze_trace(const GenerationTrace& trace, const AnalysisConfig& analysis);

struct StudyRun {
  IntervalSpec interval;
  GenerationTrace trace;
  RunAnalysis analysis;
};

struct StudyFilter {
  std::optional<std::vector<IntervalQuality>> intervals;  // default: all 13
  std::optional<std::vector<double>> bases;               // default: score.base_freqs
};

/// Runs intervals x bases through the SNESM, jobs-way parallel (0 = one per
/// processor). Result order is fixed by (base, quality) regardless of the
/// scheduling.
std::vector<StudyRun> execute_runs(const ExperimentConfig& cfg,
                                   const StudyFilter& filter = {}, int jobs = 0);

struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::vector<std::string> outputs;  // relative paths, sorted
  double wall_seconds = 0.0;
};

/// Writes per-run window and peak CSVs, the consonance curve, the phase
/// portrait points, the cluster report and the dissonance-oracle curve under
/// out_dir. Byte-identical for identical configs and runs.
RunManifest write_study_outputs(const ExperimentConfig& cfg,
                                const std::vector<StudyRun>& runs,
                                const std::string& out_dir);

/// execute_runs + write_study_outputs + manifest.json (written last).
RunManifest run_full_study(const ExperimentConfig& cfg, const StudyFilter& filter = {},
                           int jobs = 0);

enum class PlotKind { line, scatter3d_projections };

/// Renders a CSV produced by the study as a static SVG. Throws
/// std::invalid_argument when the CSV schema does not match the kind.
void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

}  // namespace echocon

#pragma once

#include <string>
#include <vector>

#include "echocon/snesm.hpp"

namespace echocon {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutputDirEnvVar = "ECHO_CONSONANCE_OUT";

struct AnalysisConfig {
  double rel_threshold = 1.0e-3;
  int min_base_width = 4;
  double eps = 0.1;

  void validate() const;
};

struct ScoreConfig {
  double a4_hz = 440.0;
  std::vector<double> base_freqs = {61.875, 66.0, 88.0};

  void validate() const;
};

/// One JSON document configuring the whole pipeline. The memristor and
/// circuit sections are stored once and propagated into the nested
/// sub-configs on load.
struct ExperimentConfig {
  SnesmConfig snesm;        // snesm.circuit / snesm.circuit.memristor hold the device
  AnalysisConfig analysis;
  ScoreConfig score;
  std::string output_dir;

  const CircuitConfig& circuit() const { return snesm.circuit; }
  const MemristorParams& memristor() const { return snesm.circuit.memristor; }

  /// Throws std::invalid_argument listing every offending field.
  void validate() const;
};

std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

/// FNV-1a over the canonical serialized form.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace echocon

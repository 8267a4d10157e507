#include "echocon/config.hpp"

#include <cstdint>
#include <stdexcept>

#include "echocon/csv.hpp"
#include "json.hpp"

namespace echocon {

using nlohmann::json;

void AnalysisConfig::validate() const {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw std::domain_error("analysis: rel_threshold must be in (0, 1)");
  if (min_base_width < 1) throw std::domain_error("analysis: min_base_width must be >= 1");
  if (!(eps > 0.0)) throw std::domain_error("analysis: eps must be positive");
}

void ScoreConfig::validate() const {
  if (!(a4_hz > 0.0)) throw std::domain_error("score: a4_hz must be positive");
  if (base_freqs.empty()) throw std::domain_error("score: base_freqs must not be empty");
  for (double f : base_freqs)
    if (!(f > 0.0)) throw std::domain_error("score: base frequencies must be positive");
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  auto probe = [&problems](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      problems.push_back(std::string(section) + ": " + e.what());
    }
  };
  probe("memristor", [&] { memristor().validate(); });
  probe("circuit", [&] { circuit().validate(); });
  probe("snesm", [&] { snesm.validate(); });
  probe("analysis", [&] { analysis.validate(); });
  probe("score", [&] { score.validate(); });
  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
}

namespace {

json memristor_to_json(const MemristorParams& p) {
  return json{{"rmin", p.rmin},   {"rmax", p.rmax}, {"rinit", p.rinit},
              {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma},
              {"vt_r", p.vt_r},   {"vt_l", p.vt_l}, {"yo", p.yo},
              {"m", p.m},         {"fo", p.fo},     {"lo", p.lo}};
}

void memristor_from_json(const json& j, MemristorParams& p) {
  j.at("rmin").get_to(p.rmin);
  j.at("rmax").get_to(p.rmax);
  j.at("rinit").get_to(p.rinit);
  j.at("alpha").get_to(p.alpha);
  j.at("beta").get_to(p.beta);
  j.at("gamma").get_to(p.gamma);
  j.at("vt_r").get_to(p.vt_r);
  j.at("vt_l").get_to(p.vt_l);
  j.at("yo").get_to(p.yo);
  j.at("m").get_to(p.m);
  j.at("fo").get_to(p.fo);
  j.at("lo").get_to(p.lo);
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
  json j;
  j["memristor"] = memristor_to_json(cfg.memristor());
  j["circuit"] = {{"series_resistance", cfg.circuit().series_resistance},
                  {"amp_gain", cfg.circuit().amp_gain}};
  j["snesm"] = {{"delay_s", cfg.snesm.delay_s},
                {"feedback_gain", cfg.snesm.feedback_gain},
                {"generations", cfg.snesm.generations},
                {"pulse_duration_s", cfg.snesm.pulse_duration_s},
                {"damping", cfg.snesm.damping},
                {"tone_amplitude_v", cfg.snesm.tone_amplitude_v},
                {"dt_s", cfg.snesm.dt_s},
                {"analysis_rate_hz", cfg.snesm.analysis_rate_hz}};
  j["analysis"] = {{"rel_threshold", cfg.analysis.rel_threshold},
                   {"min_base_width", cfg.analysis.min_base_width},
                   {"eps", cfg.analysis.eps}};
  j["score"] = {{"a4_hz", cfg.score.a4_hz}, {"base_freqs", cfg.score.base_freqs}};
  j["output_dir"] = cfg.output_dir;
  return j.dump(2) + "\n";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  if (j.contains("memristor")) memristor_from_json(j.at("memristor"), cfg.snesm.circuit.memristor);
  if (j.contains("circuit")) {
    const auto& c = j.at("circuit");
    if (c.contains("series_resistance")) c.at("series_resistance").get_to(cfg.snesm.circuit.series_resistance);
    if (c.contains("amp_gain")) c.at("amp_gain").get_to(cfg.snesm.circuit.amp_gain);
  }
  if (j.contains("snesm")) {
    const auto& s = j.at("snesm");
    if (s.contains("delay_s")) s.at("delay_s").get_to(cfg.snesm.delay_s);
    if (s.contains("feedback_gain")) s.at("feedback_gain").get_to(cfg.snesm.feedback_gain);
    if (s.contains("generations")) s.at("generations").get_to(cfg.snesm.generations);
    if (s.contains("pulse_duration_s")) s.at("pulse_duration_s").get_to(cfg.snesm.pulse_duration_s);
    if (s.contains("damping")) s.at("damping").get_to(cfg.snesm.damping);
    if (s.contains("tone_amplitude_v")) s.at("tone_amplitude_v").get_to(cfg.snesm.tone_amplitude_v);
    if (s.contains("dt_s")) s.at("dt_s").get_to(cfg.snesm.dt_s);
    if (s.contains("analysis_rate_hz")) s.at("analysis_rate_hz").get_to(cfg.snesm.analysis_rate_hz);
  }
  if (j.contains("analysis")) {
    const auto& a = j.at("analysis");
    if (a.contains("rel_threshold")) a.at("rel_threshold").get_to(cfg.analysis.rel_threshold);
    if (a.contains("min_base_width")) a.at("min_base_width").get_to(cfg.analysis.min_base_width);
    if (a.contains("eps")) a.at("eps").get_to(cfg.analysis.eps);
  }
  if (j.contains("score")) {
    const auto& s = j.at("score");
    if (s.contains("a4_hz")) s.at("a4_hz").get_to(cfg.score.a4_hz);
    if (s.contains("base_freqs")) s.at("base_freqs").get_to(cfg.score.base_freqs);
  }
  if (j.contains("output_dir")) j.at("output_dir").get_to(cfg.output_dir);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  return parse_config(read_text_file(path));
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace echocon

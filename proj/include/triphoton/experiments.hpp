#pragma once

// Experiment drivers behind the command-line tool. Each writes its outputs
// under cfg.output.dir and returns a summary that is also written there as
// pretty-printed JSON.

#include <string>
#include <vector>

#include <json.hpp>

#include "triphoton/config.hpp"
#include "triphoton/correlators.hpp"

namespace triphoton::cli {

enum class Domain { time, space };

corr::State parse_state(const std::string& text);
Domain parse_domain(const std::string& text);
int parse_order(int order);

// Keys accepted by cmd_sweep.
inline constexpr const char* kSweepKeys[] = {"sigma_rad_per_ps", "t12_ps", "t32_ps", "alpha_max_rad_per_um", "n_bins"};

class RunSummary {
 public:
  explicit RunSummary(std::string command, const ExperimentConfig& cfg);

  // One entry per written output, keyed by output name.
  nlohmann::json& output(const std::string& name) { return outputs_[name]; }
  void check(const std::string& name, bool passed) { checks_[name] = passed; }
  void set_wall_ms(double ms) { wall_ms_ = ms; }

  const nlohmann::json& outputs() const noexcept { return outputs_; }
  const nlohmann::json& checks() const noexcept { return checks_; }
  bool all_checks_pass() const;

  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json config_;
  nlohmann::json outputs_ = nlohmann::json::object();
  nlohmann::json checks_ = nlohmann::json::object();
  double wall_ms_ = 0.0;
};

// Zeroes samples whose delay coordinate is negative. Spatial surfaces pass through.
corr::CorrelationSurface apply_physical_mask(const corr::CorrelationSurface& surface);

// Column header, e.g. "tau12_ps,tau32_ps,g3".
std::string csv_header(const corr::CorrelationSurface& surface);
std::string surface_csv(const corr::CorrelationSurface& surface);
nlohmann::json surface_json(const corr::CorrelationSurface& surface);

// Writes `contents` to dir/name, creating dir. Throws IoError with the path.
std::string write_output(const std::string& dir, const std::string& name, const std::string& contents);

RunSummary cmd_figure1(const ExperimentConfig& cfg, bool physical_mask = true);
RunSummary cmd_correlate(const ExperimentConfig& cfg, corr::State state, Domain domain, int order,
                         bool physical_mask = false);
RunSummary cmd_modes(const ExperimentConfig& cfg);
RunSummary cmd_sweep(const ExperimentConfig& cfg, const std::string& key, const std::vector<double>& values);

}  // namespace triphoton::cli

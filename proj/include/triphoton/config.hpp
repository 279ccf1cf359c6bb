#pragma once

// Experiment configuration: a JSON document whose quantity keys carry their
// unit as a suffix (t12_ps, sigma_rad_per_ps, alpha_max_rad_per_um, ...).
// Every key is optional; absent keys take the figure1 defaults
// (t12 = t32 = -20 ps, three Gaussian filters with sigma = 0.4 rad/ps).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "triphoton/correlators.hpp"
#include "triphoton/grid.hpp"
#include "triphoton/mode_space.hpp"
#include "triphoton/spectra.hpp"

namespace triphoton::cli {

enum class OutputFormat { csv, json };

struct OutputSpec {
  std::string dir = "out";
  OutputFormat format = OutputFormat::csv;

  bool operator==(const OutputSpec&) const = default;
};

// Delay grids (tau12, tau32) are in ps, displacement grids (rho12, rho32) in um.
inline constexpr const char* kGridNames[] = {"tau12", "tau32", "rho12", "rho32"};

struct ExperimentConfig {
  spectra::PhaseMatchConfig phase_match{-20.0, -20.0};
  std::vector<spectra::FilterSpec> filters = std::vector<spectra::FilterSpec>(3, spectra::FilterSpec::gaussian(0.4));
  corr::QuadratureSpec quadrature{};
  std::map<std::string, Grid1D> grids{
      {"tau12", Grid1D(0.0, 0.25, 161)},
      {"tau32", Grid1D(0.0, 0.25, 161)},
      {"rho12", Grid1D(-5.0, 0.05, 201)},
      {"rho32", Grid1D(-5.0, 0.05, 201)},
  };
  std::optional<spectra::TransverseWindow> transverse{spectra::TransverseWindow(1.0, 1)};
  std::optional<modes::ModeGrid> mode_grid{modes::ModeGrid(8, -0.8, 0.8)};
  OutputSpec output{};

  const Grid1D& grid(const std::string& name) const;
  // Filter i, or SchemaError if fewer than `needed` filters are configured.
  const spectra::FilterSpec& filter(std::size_t i, std::size_t needed) const;

  bool operator==(const ExperimentConfig&) const = default;
};

inline constexpr std::size_t kMaxModeBins = 16;

// Parses and validates. Throws SchemaError naming the offending key.
ExperimentConfig parse_config(std::string_view text);

// Reads `path`; throws IoError if it cannot be read.
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& cfg);
std::string serialize_config(const ExperimentConfig& cfg);

// Cross-field invariants (filter count, quadrature coverage, mode-grid cap).
void validate(const ExperimentConfig& cfg);

}  // namespace triphoton::cli

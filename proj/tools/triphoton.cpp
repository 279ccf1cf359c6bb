#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triphoton/config.hpp"
#include "triphoton/errors.hpp"
#include "triphoton/experiments.hpp"

namespace tc = triphoton::cli;

namespace {

constexpr const char* kDefaultConfig = "./triphoton.json";

tc::ExperimentConfig resolve_config(const std::string& path, const std::string& out_dir) {
  tc::ExperimentConfig cfg;
  if (path != kDefaultConfig || std::filesystem::exists(path)) cfg = tc::load_config(path);
  if (!out_dir.empty()) cfg.output.dir = out_dir;
  tc::validate(cfg);
  return cfg;
}

void print_summary(const tc::RunSummary& summary) {
  for (const auto& [name, out] : summary.outputs().items())
    if (out.contains("file")) std::cout << name << ": " << out["file"].get<std::string>() << "\n";
  for (const auto& [name, ok] : summary.checks().items())
    std::cout << "check " << name << ": " << (ok.get<bool>() ? "pass" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triphoton time/space correlation simulator"};
  app.require_subcommand(1);

  std::string config_path = kDefaultConfig;
  std::string out_dir;
  std::optional<bool> mask;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")->capture_default_str();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
  };
  auto add_mask = [&](CLI::App* sub) {
    sub->add_flag_function(
        "--physical-mask{true},!--no-physical-mask", [&](std::int64_t n) { mask = n > 0; },
        "zero samples at negative delays");
  };

  auto* figure1 = app.add_subcommand("figure1", "G3 surface, conditional slice and G2 of the |1,1,1> state");
  add_common(figure1);
  add_mask(figure1);

  std::string state, domain;
  int order = 0;
  auto* correlate = app.add_subcommand("correlate", "one correlation function for one state");
  add_common(correlate);
  add_mask(correlate);
  correlate->add_option("--state", state, "w111 | ghz12")->required();
  correlate->add_option("--domain", domain, "time | space")->required();
  correlate->add_option("--order", order, "2 | 3")->required();

  auto* modes = app.add_subcommand("modes", "loss of one photon in a discrete frequency-bin model");
  add_common(modes);

  std::string param;
  std::vector<std::string> values;
  auto* sweep = app.add_subcommand("sweep", "summary metrics over a parameter list");
  add_common(sweep);
  sweep->add_option("--param", param, "sigma_rad_per_ps | t12_ps | t32_ps | alpha_max_rad_per_um | n_bins")
      ->required();
  sweep->add_option("--values", values, "comma-separated values")->delimiter(',')->required()->expected(0, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const tc::ExperimentConfig cfg = resolve_config(config_path, out_dir);
    if (figure1->parsed()) {
      print_summary(tc::cmd_figure1(cfg, mask.value_or(true)));
    } else if (correlate->parsed()) {
      print_summary(tc::cmd_correlate(cfg, tc::parse_state(state), tc::parse_domain(domain), tc::parse_order(order),
                                      mask.value_or(false)));
    } else if (modes->parsed()) {
      const auto summary = tc::cmd_modes(cfg);
      print_summary(summary);
      if (!summary.all_checks_pass()) return 4;
    } else if (sweep->parsed()) {
      std::vector<double> numbers;
      for (const auto& v : values) {
        if (v.empty()) continue;
        try {
          std::size_t used = 0;
          numbers.push_back(std::stod(v, &used));
          if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
          throw triphoton::UsageError("--values: '" + v + "' is not a number");
        }
      }
      print_summary(tc::cmd_sweep(cfg, param, numbers));
    }
  } catch (const triphoton::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const triphoton::SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const triphoton::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const triphoton::ConfigurationError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const triphoton::DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 3;
  } catch (const triphoton::AmbiguousWidth& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const triphoton::InvalidArgument& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

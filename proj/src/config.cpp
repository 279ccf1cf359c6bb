#include "triphoton/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "triphoton/errors.hpp"

namespace triphoton::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Reads one JSON object against a fixed key set.
class Section {
 public:
  Section(const json& obj, std::string path, std::vector<std::string> allowed)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw SchemaError(path_.empty() ? "<document>" : path_, "expected a JSON object");
    for (const auto& [key, value] : obj_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
      for (const auto& a : allowed)
        if (a.rfind(key + "_", 0) == 0)
          throw SchemaError(join(path_, key), "missing unit suffix (expected '" + a + "')");
      throw SchemaError(join(path_, key), "unknown key");
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw SchemaError(path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaError(path(key), "must be finite");
    return d;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 0.0 && std::floor(d) == d && d < 1e15) return static_cast<std::size_t>(d);
    }
    throw SchemaError(path(key), "expected a nonnegative integer");
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw SchemaError(path(key), "expected a string");
    return v.get<std::string>();
  }

 private:
  const json& obj_;
  std::string path_;
};

std::string grid_unit(const std::string& name) { return name.rfind("tau", 0) == 0 ? "ps" : "um"; }

spectra::FilterSpec parse_filter(const json& j, const std::string& path) {
  Section s(j, path, {"shape", "sigma_rad_per_ps", "center_offset_rad_per_ps"});
  const std::string shape_name = s.string("shape", "gaussian");
  spectra::FilterShape shape;
  if (shape_name == "gaussian")
    shape = spectra::FilterShape::gaussian;
  else if (shape_name == "rectangular")
    shape = spectra::FilterShape::rectangular;
  else
    throw SchemaError(s.path("shape"), "expected 'gaussian' or 'rectangular'");
  const double sigma = s.number("sigma_rad_per_ps", 0.4);
  if (!(sigma > 0.0)) throw SchemaError(s.path("sigma_rad_per_ps"), "must be positive");
  return spectra::FilterSpec(shape, sigma, s.number("center_offset_rad_per_ps", 0.0));
}

Grid1D parse_grid(const json& j, const std::string& path, const std::string& name, const Grid1D& fallback) {
  const std::string u = grid_unit(name);
  Section s(j, path, {"start_" + u, "step_" + u, "count"});
  const double start = s.number("start_" + u, fallback.start());
  const double step = s.number("step_" + u, fallback.step());
  const std::size_t count = s.count("count", fallback.count());
  if (!(step > 0.0)) throw SchemaError(s.path("step_" + u), "must be positive");
  if (count < 2) throw SchemaError(s.path("count"), "must be at least 2");
  return Grid1D(start, step, count);
}

const char* shape_name(spectra::FilterShape shape) {
  return shape == spectra::FilterShape::gaussian ? "gaussian" : "rectangular";
}

}  // namespace

const Grid1D& ExperimentConfig::grid(const std::string& name) const {
  auto it = grids.find(name);
  if (it == grids.end()) throw SchemaError("grids." + name, "grid is not defined");
  return it->second;
}

const spectra::FilterSpec& ExperimentConfig::filter(std::size_t i, std::size_t needed) const {
  if (filters.size() < needed)
    throw SchemaError("filters", "this correlator needs " + std::to_string(needed) + " filters, " +
                                     std::to_string(filters.size()) + " configured");
  return filters.at(i);
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", std::string("invalid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  Section root(doc, "", {"phase_match", "filters", "quadrature", "grids", "transverse", "mode_grid", "output"});

  if (root.has("phase_match")) {
    Section s(root.raw("phase_match"), "phase_match", {"t12_ps", "t32_ps"});
    const double t12 = s.number("t12_ps", cfg.phase_match.t12());
    const double t32 = s.number("t32_ps", cfg.phase_match.t32());
    if (t12 == 0.0) throw SchemaError(s.path("t12_ps"), "must be nonzero");
    if (t32 == 0.0) throw SchemaError(s.path("t32_ps"), "must be nonzero");
    cfg.phase_match = spectra::PhaseMatchConfig(t12, t32);
  }

  if (root.has("filters")) {
    const json& list = root.raw("filters");
    if (!list.is_array()) throw SchemaError("filters", "expected an array of filter objects");
    cfg.filters.clear();
    for (std::size_t i = 0; i < list.size(); ++i)
      cfg.filters.push_back(parse_filter(list[i], "filters[" + std::to_string(i) + "]"));
  }

  if (root.has("quadrature")) {
    Section s(root.raw("quadrature"), "quadrature", {"n_points", "nu_span_rad_per_ps"});
    cfg.quadrature.n_points = s.count("n_points", cfg.quadrature.n_points);
    cfg.quadrature.nu_span = s.number("nu_span_rad_per_ps", cfg.quadrature.nu_span);
    if (cfg.quadrature.n_points < 2) throw SchemaError(s.path("n_points"), "must be at least 2");
    if (!(cfg.quadrature.nu_span > 0.0)) throw SchemaError(s.path("nu_span_rad_per_ps"), "must be positive");
  }

  if (root.has("grids")) {
    const std::vector<std::string> names(std::begin(kGridNames), std::end(kGridNames));
    Section s(root.raw("grids"), "grids", names);
    for (const auto& name : names)
      if (s.has(name)) cfg.grids.insert_or_assign(name, parse_grid(s.raw(name), s.path(name), name, cfg.grid(name)));
  }

  if (root.has("transverse")) {
    if (root.raw("transverse").is_null()) {
      cfg.transverse.reset();
    } else {
      Section s(root.raw("transverse"), "transverse", {"alpha_max_rad_per_um", "dims"});
      const spectra::TransverseWindow fallback = cfg.transverse.value_or(spectra::TransverseWindow(1.0, 1));
      const double alpha = s.number("alpha_max_rad_per_um", fallback.alpha_max());
      const std::size_t dims = s.count("dims", static_cast<std::size_t>(fallback.dims()));
      if (!(alpha > 0.0)) throw SchemaError(s.path("alpha_max_rad_per_um"), "must be positive");
      if (dims != 1 && dims != 2) throw SchemaError(s.path("dims"), "must be 1 or 2");
      cfg.transverse = spectra::TransverseWindow(alpha, static_cast<int>(dims));
    }
  }

  if (root.has("mode_grid")) {
    if (root.raw("mode_grid").is_null()) {
      cfg.mode_grid.reset();
    } else {
      Section s(root.raw("mode_grid"), "mode_grid", {"n_bins", "nu_min_rad_per_ps", "nu_max_rad_per_ps"});
      const modes::ModeGrid fallback = cfg.mode_grid.value_or(modes::ModeGrid(8, -0.8, 0.8));
      const std::size_t n = s.count("n_bins", fallback.n_bins());
      const double lo = s.number("nu_min_rad_per_ps", fallback.nu_min());
      const double hi = s.number("nu_max_rad_per_ps", fallback.nu_max());
      if (n < 2) throw SchemaError(s.path("n_bins"), "must be at least 2");
      if (!(hi > lo)) throw SchemaError(s.path("nu_max_rad_per_ps"), "must exceed nu_min_rad_per_ps");
      cfg.mode_grid = modes::ModeGrid(n, lo, hi);
    }
  }

  if (root.has("output")) {
    Section s(root.raw("output"), "output", {"dir", "format"});
    cfg.output.dir = s.string("dir", cfg.output.dir);
    const std::string format = s.string("format", "csv");
    if (format == "csv")
      cfg.output.format = OutputFormat::csv;
    else if (format == "json")
      cfg.output.format = OutputFormat::json;
    else
      throw SchemaError(s.path("format"), "expected 'csv' or 'json'");
  }

  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.filters.size() < 2 || cfg.filters.size() > 3) throw SchemaError("filters", "expected 2 or 3 filters");
  try {
    corr::check_quadrature(cfg.quadrature, cfg.phase_match, cfg.filters);
  } catch (const ConfigurationError& e) {
    throw SchemaError("quadrature.nu_span_rad_per_ps", e.what());
  }
  if (cfg.mode_grid && cfg.mode_grid->n_bins() > kMaxModeBins)
    throw SchemaError("mode_grid.n_bins", "at most " + std::to_string(kMaxModeBins) + " bins");
  if (cfg.output.dir.empty()) throw SchemaError("output.dir", "must be nonempty");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError(path, "error reading config file");
  return parse_config(text.str());
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["phase_match"] = {{"t12_ps", cfg.phase_match.t12()}, {"t32_ps", cfg.phase_match.t32()}};
  j["filters"] = json::array();
  for (const auto& f : cfg.filters)
    j["filters"].push_back({{"shape", shape_name(f.shape())},
                            {"sigma_rad_per_ps", f.sigma()},
                            {"center_offset_rad_per_ps", f.center_offset()}});
  j["quadrature"] = {{"n_points", cfg.quadrature.n_points}, {"nu_span_rad_per_ps", cfg.quadrature.nu_span}};
  j["grids"] = json::object();
  for (const auto& [name, g] : cfg.grids) {
    const std::string u = grid_unit(name);
    j["grids"][name] = {{"start_" + u, g.start()}, {"step_" + u, g.step()}, {"count", g.count()}};
  }
  if (cfg.transverse)
    j["transverse"] = {{"alpha_max_rad_per_um", cfg.transverse->alpha_max()}, {"dims", cfg.transverse->dims()}};
  else
    j["transverse"] = nullptr;
  if (cfg.mode_grid)
    j["mode_grid"] = {{"n_bins", cfg.mode_grid->n_bins()},
                      {"nu_min_rad_per_ps", cfg.mode_grid->nu_min()},
                      {"nu_max_rad_per_ps", cfg.mode_grid->nu_max()}};
  else
    j["mode_grid"] = nullptr;
  j["output"] = {{"dir", cfg.output.dir}, {"format", cfg.output.format == OutputFormat::csv ? "csv" : "json"}};
  return j;
}

std::string serialize_config(const ExperimentConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace triphoton::cli

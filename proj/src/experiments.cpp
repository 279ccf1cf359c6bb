#include "triphoton/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

#include "triphoton/errors.hpp"
#include "triphoton/mode_space.hpp"
#include "triphoton/qubit_toy.hpp"

namespace triphoton::cli {

using corr::CorrelationSurface;
using corr::Kind;
using corr::State;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

bool temporal(Kind kind) { return kind == Kind::g2_temporal || kind == Kind::g3_temporal; }

std::string axis_name(Kind kind, std::size_t axis) {
  static const char* time_names[] = {"tau12_ps", "tau32_ps"};
  static const char* space_names[] = {"rho12_um", "rho32_um"};
  return temporal(kind) ? time_names[axis] : space_names[axis];
}

const char* value_name(Kind kind) { return kind == Kind::g2_temporal || kind == Kind::g2_spatial ? "g2" : "g3"; }

std::optional<double> try_fwhm(const CorrelationSurface& curve) {
  try {
    return corr::fwhm(curve);
  } catch (const AmbiguousWidth&) {
    return std::nullopt;
  }
}

void put_finite(json& j, const std::string& key, double v) {
  if (std::isfinite(v)) j[key] = v;
}

json describe(const CorrelationSurface& s, const std::string& file) {
  json j;
  j["file"] = file;
  j["kind"] = corr::to_string(s.kind());
  j["state"] = corr::to_string(s.state());
  const std::size_t peak = s.argmax();
  json loc;
  if (s.rank() == 1) {
    loc[axis_name(s.kind(), 0)] = s.axes()[0].value(peak);
  } else {
    const std::size_t cols = s.axes()[1].count();
    loc[axis_name(s.kind(), 0)] = s.axes()[0].value(peak / cols);
    loc[axis_name(s.kind(), 1)] = s.axes()[1].value(peak % cols);
  }
  loc["value"] = s.values()[peak];
  j["peak"] = loc;
  if (s.rank() == 1) {
    const std::string unit = temporal(s.kind()) ? "fwhm_ps" : "fwhm_um";
    if (auto w = try_fwhm(s)) put_finite(j, unit, *w);
  }
  return j;
}

std::string emit(const ExperimentConfig& cfg, const std::string& stem, const CorrelationSurface& s) {
  if (cfg.output.format == OutputFormat::json)
    return write_output(cfg.output.dir, stem + ".json", surface_json(s).dump(2) + "\n");
  return write_output(cfg.output.dir, stem + ".csv", surface_csv(s));
}

void write_summary(const ExperimentConfig& cfg, const std::string& name, const RunSummary& summary) {
  write_output(cfg.output.dir, name, summary.to_json().dump(2) + "\n");
}

const spectra::TransverseWindow& need_window(const ExperimentConfig& cfg) {
  if (!cfg.transverse) throw SchemaError("transverse", "required for space-domain correlators");
  return *cfg.transverse;
}

double relative_variation(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
}

// Row of a 2-D surface nearest to second-axis coordinate zero, as a 1-D curve.
CorrelationSurface slice_at_zero(const CorrelationSurface& s) {
  const Grid1D& ax = s.axes()[1];
  const double pos = std::clamp(std::round(-ax.start() / ax.step()), 0.0, static_cast<double>(ax.count() - 1));
  const auto j = static_cast<std::size_t>(pos);
  std::vector<double> row(s.axes()[0].count());
  for (std::size_t i = 0; i < row.size(); ++i) row[i] = s.at(i, j);
  return corr::normalize_to_peak(CorrelationSurface(s.kind(), s.state(), {s.axes()[0]}, std::move(row), false));
}

double max_offdiagonal(const qubit::Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

struct ModeMetrics {
  double w_negativity, w_purity, ghz_negativity, ghz_purity, ghz_offdiagonal;
};

ModeMetrics mode_metrics(const ExperimentConfig& cfg, const modes::ModeGrid& grid) {
  const auto& f1 = cfg.filter(0, 3);
  const auto& f2 = cfg.filter(1, 3);
  const auto& f3 = cfg.filter(2, 3);
  const auto w = modes::reduce_w_trace3(modes::build_w_discrete(cfg.phase_match, f1, f2, f3, grid), grid);
  const auto g = modes::reduce_ghz_trace_one_degenerate(modes::build_ghz_discrete(cfg.phase_match, f1, f2, grid), grid);
  return {modes::pair_negativity(w), modes::purity(w), modes::pair_negativity(g), modes::purity(g),
          max_offdiagonal(g.matrix())};
}

spectra::FilterSpec with_sigma(const spectra::FilterSpec& f, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw SchemaError("sigma_rad_per_ps", "must be positive and finite");
  return spectra::FilterSpec(f.shape(), sigma, f.center_offset());
}

ExperimentConfig with_value(const ExperimentConfig& cfg, const std::string& key, double v) {
  ExperimentConfig c = cfg;
  if (key == "sigma_rad_per_ps") {
    for (auto& f : c.filters) f = with_sigma(f, v);
  } else if (key == "t12_ps" || key == "t32_ps") {
    if (v == 0.0 || !std::isfinite(v)) throw SchemaError(key, "must be nonzero and finite");
    c.phase_match = key == "t12_ps" ? spectra::PhaseMatchConfig(v, cfg.phase_match.t32())
                                    : spectra::PhaseMatchConfig(cfg.phase_match.t12(), v);
  } else if (key == "alpha_max_rad_per_um") {
    if (!(v > 0.0) || !std::isfinite(v)) throw SchemaError(key, "must be positive and finite");
    const int dims = c.transverse ? c.transverse->dims() : 1;
    c.transverse = spectra::TransverseWindow(v, dims);
  } else if (key == "n_bins") {
    if (!(v >= 2.0) || std::floor(v) != v || v > static_cast<double>(kMaxModeBins))
      throw SchemaError(key, "must be an integer in [2, " + std::to_string(kMaxModeBins) + "]");
    const modes::ModeGrid base = c.mode_grid.value_or(modes::ModeGrid(8, -0.8, 0.8));
    c.mode_grid = modes::ModeGrid(static_cast<std::size_t>(v), base.nu_min(), base.nu_max());
  }
  validate(c);
  return c;
}

}  // namespace

corr::State parse_state(const std::string& text) {
  if (text == "w111") return State::w111;
  if (text == "ghz12") return State::ghz12;
  throw UsageError("unknown state '" + text + "'; valid: w111, ghz12");
}

Domain parse_domain(const std::string& text) {
  if (text == "time") return Domain::time;
  if (text == "space") return Domain::space;
  throw UsageError("unknown domain '" + text + "'; valid: time, space");
}

int parse_order(int order) {
  if (order != 2 && order != 3) throw UsageError("unsupported order " + std::to_string(order) + "; valid: 2, 3");
  return order;
}

RunSummary::RunSummary(std::string command, const ExperimentConfig& cfg)
    : command_(std::move(command)), config_(cli::to_json(cfg)) {}

bool RunSummary::all_checks_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const json& v) { return v.get<bool>(); });
}

json RunSummary::to_json() const {
  json j;
  j["command"] = command_;
  j["config"] = config_;
  j["outputs"] = outputs_;
  j["checks"] = checks_;
  j["wall_ms"] = wall_ms_;
  return j;
}

CorrelationSurface apply_physical_mask(const CorrelationSurface& surface) {
  if (!temporal(surface.kind())) return surface;
  std::vector<double> values = surface.values();
  const auto& axes = surface.axes();
  const std::size_t cols = surface.rank() == 2 ? axes[1].count() : 1;
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const bool negative =
        axes[0].value(idx / cols) < 0.0 || (surface.rank() == 2 && axes[1].value(idx % cols) < 0.0);
    if (negative) values[idx] = 0.0;
  }
  CorrelationSurface masked(surface.kind(), surface.state(), axes, std::move(values), false);
  return surface.normalized() ? corr::normalize_to_peak(masked) : masked;
}

std::string csv_header(const CorrelationSurface& surface) {
  std::string h = axis_name(surface.kind(), 0);
  if (surface.rank() == 2) h += "," + axis_name(surface.kind(), 1);
  return h + "," + value_name(surface.kind());
}

std::string surface_csv(const CorrelationSurface& surface) {
  std::string out = csv_header(surface) + "\n";
  const auto& axes = surface.axes();
  const auto& v = surface.values();
  if (surface.rank() == 1) {
    for (std::size_t i = 0; i < v.size(); ++i) out += fmt(axes[0].value(i)) + "," + fmt(v[i]) + "\n";
  } else {
    const std::size_t cols = axes[1].count();
    for (std::size_t idx = 0; idx < v.size(); ++idx)
      out += fmt(axes[0].value(idx / cols)) + "," + fmt(axes[1].value(idx % cols)) + "," + fmt(v[idx]) + "\n";
  }
  return out;
}

json surface_json(const CorrelationSurface& surface) {
  json j;
  j["kind"] = corr::to_string(surface.kind());
  j["state"] = corr::to_string(surface.state());
  j["normalized"] = surface.normalized();
  j["axes"] = json::array();
  for (std::size_t a = 0; a < surface.rank(); ++a) {
    const Grid1D& g = surface.axes()[a];
    j["axes"].push_back({{"name", axis_name(surface.kind(), a)}, {"start", g.start()}, {"step", g.step()},
                         {"count", g.count()}});
  }
  j["values"] = surface.values();
  return j;
}

std::string write_output(const std::string& dir, const std::string& name, const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create output directory: " + ec.message());
  const std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError(path, "write failed");
  return path;
}

RunSummary cmd_figure1(const ExperimentConfig& cfg, bool physical_mask) {
  const auto start = Clock::now();
  validate(cfg);
  const auto& f1 = cfg.filter(0, 3);
  const auto& f2 = cfg.filter(1, 3);
  const auto& f3 = cfg.filter(2, 3);
  const Grid1D& tau12 = cfg.grid("tau12");
  const Grid1D& tau32 = cfg.grid("tau32");

  CorrelationSurface a = corr::g3_w_temporal(cfg.phase_match, f1, f2, f3, cfg.quadrature, tau12, tau32);
  CorrelationSurface b = corr::g3_w_conditional(cfg.phase_match, f1, f2, f3, cfg.quadrature, tau12);
  CorrelationSurface c = corr::g2_w_temporal(cfg.phase_match, f1, f2, cfg.quadrature, tau12);
  if (physical_mask) {
    a = apply_physical_mask(a);
    b = apply_physical_mask(b);
    c = apply_physical_mask(c);
  }

  RunSummary summary("figure1", cfg);
  summary.output("fig1a") = describe(a, emit(cfg, "fig1a_g3_w_temporal", a));
  summary.output("fig1b") = describe(b, emit(cfg, "fig1b_g3_conditional", b));
  summary.output("fig1c") = describe(c, emit(cfg, "fig1c_g2_w_temporal", c));
  summary.output("fig1b")["line"] = "tau32 = |t12| - tau12";

  const auto wb = try_fwhm(b);
  const auto wc = try_fwhm(c);
  summary.check("fwhm_conditional_g3_below_g2", wb && wc && *wb > 0.0 && *wb < *wc);
  summary.set_wall_ms(elapsed_ms(start));
  write_summary(cfg, "figure1_summary.json", summary);
  return summary;
}

RunSummary cmd_correlate(const ExperimentConfig& cfg, State state, Domain domain, int order, bool physical_mask) {
  const auto start = Clock::now();
  validate(cfg);
  parse_order(order);
  const std::string stem = std::string(corr::to_string(state)) + (domain == Domain::time ? "_time" : "_space") +
                           "_g" + std::to_string(order);
  RunSummary summary("correlate", cfg);
  std::optional<CorrelationSurface> surface;
  json extra = json::object();

  if (domain == Domain::time) {
    const auto& pm = cfg.phase_match;
    const Grid1D& tau12 = cfg.grid("tau12");
    if (state == State::w111 && order == 2) {
      surface = corr::g2_w_temporal(pm, cfg.filter(0, 2), cfg.filter(1, 2), cfg.quadrature, tau12);
    } else if (state == State::w111) {
      surface = corr::g3_w_temporal(pm, cfg.filter(0, 3), cfg.filter(1, 3), cfg.filter(2, 3), cfg.quadrature, tau12,
                                    cfg.grid("tau32"));
    } else if (order == 2) {
      const double value = corr::g2_ghz_temporal(pm, cfg.filter(0, 2), cfg.filter(1, 2), cfg.quadrature);
      const auto raw = corr::g2_ghz_temporal_curve(pm, cfg.filter(0, 2), cfg.filter(1, 2), cfg.quadrature, tau12, false);
      const double variation = relative_variation(raw.values());
      put_finite(extra, "g2_value", value);
      extra["relative_variation"] = variation;
      extra["delay_independent"] = variation < 1e-12;
      summary.check("delay_independent", variation < 1e-12);
      surface = corr::normalize_to_peak(raw);
    } else {
      surface = corr::g3_ghz_temporal(pm, cfg.filter(0, 2), cfg.filter(1, 2), cfg.quadrature, tau12);
    }
    if (physical_mask) surface = apply_physical_mask(*surface);
  } else {
    const auto& window = need_window(cfg);
    const Grid1D& rho12 = cfg.grid("rho12");
    if (state == State::w111 && order == 2) {
      surface = corr::g2_w_spatial(window, rho12);
    } else if (state == State::w111) {
      surface = corr::g3_w_spatial(window, rho12, cfg.grid("rho32"));
    } else if (order == 2) {
      const double value = corr::g2_ghz_spatial(window);
      const auto raw = corr::g2_ghz_spatial_curve(window, rho12, false);
      const double variation = relative_variation(raw.values());
      put_finite(extra, "g2_value", value);
      extra["relative_variation"] = variation;
      extra["displacement_independent"] = variation < 1e-12;
      summary.check("displacement_independent", variation < 1e-12);
      surface = corr::normalize_to_peak(raw);
    } else {
      surface = corr::g3_ghz_spatial(window, rho12);
      const auto reference = corr::single_window_spatial(window, rho12);
      const auto w = try_fwhm(*surface);
      const auto wr = try_fwhm(reference);
      if (wr) put_finite(extra, "reference_fwhm_um", *wr);
      if (w && wr) {
        put_finite(extra, "fwhm_ratio", *w / *wr);
        summary.check("half_reference_width", std::abs(*w / *wr - 0.5) <= 0.01 * 0.5);
      } else {
        summary.check("half_reference_width", false);
      }
    }
  }

  json& out = summary.output(stem);
  out = describe(*surface, emit(cfg, stem, *surface));
  out.update(extra);
  summary.set_wall_ms(elapsed_ms(start));
  write_summary(cfg, stem + "_summary.json", summary);
  return summary;
}

RunSummary cmd_modes(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  validate(cfg);
  if (!cfg.mode_grid) throw SchemaError("mode_grid", "required by the modes command");
  const modes::ModeGrid& grid = *cfg.mode_grid;
  const ModeMetrics m = mode_metrics(cfg, grid);

  using namespace qubit;
  const std::size_t first_two[] = {0, 1};
  const std::size_t first[] = {0};
  const auto ghz_pair = partial_trace(DensityMatrix::from_pure(make_ghz()), first_two);
  const auto w_pair = partial_trace(DensityMatrix::from_pure(make_w()), first_two);
  Matrix classical = Matrix::Zero(4, 4);
  classical(0, 0) = classical(3, 3) = 0.5;
  Matrix w_target = Matrix::Zero(4, 4);
  w_target(0, 0) = 1.0 / 3.0;
  w_target(1, 1) = w_target(1, 2) = w_target(2, 1) = w_target(2, 2) = 1.0 / 3.0;
  const double ghz_fid = fidelity(ghz_pair, DensityMatrix(classical, {2, 2}));
  const double w_fid = fidelity(w_pair, DensityMatrix(w_target, {2, 2}));
  const double ghz_qneg = negativity(ghz_pair, first);
  const double w_qneg = negativity(w_pair, first);

  RunSummary summary("modes", cfg);
  json& out = summary.output("modes");
  out["n_bins"] = grid.n_bins();
  out["w111"] = {{"negativity", m.w_negativity}, {"purity", m.w_purity}};
  out["ghz12"] = {{"negativity", m.ghz_negativity}, {"purity", m.ghz_purity}, {"max_offdiagonal", m.ghz_offdiagonal}};
  out["qubit"] = {{"ghz_traced_fidelity", ghz_fid},
                  {"ghz_traced_negativity", ghz_qneg},
                  {"w_traced_fidelity", w_fid},
                  {"w_traced_negativity", w_qneg}};

  summary.check("ghz_negativity_zero", m.ghz_negativity <= 1e-10);
  summary.check("ghz_offdiagonal_zero", m.ghz_offdiagonal < 1e-14);
  summary.check("w_negativity_positive", m.w_negativity > 1e-10);
  summary.check("qubit_ghz_traced_fidelity_one", std::abs(ghz_fid - 1.0) <= 1e-10);
  summary.check("qubit_ghz_traced_negativity_zero", ghz_qneg <= 1e-10);
  summary.check("qubit_w_traced_fidelity_one", std::abs(w_fid - 1.0) <= 1e-10);
  summary.check("qubit_w_traced_negativity_positive", w_qneg > 1e-10);
  summary.set_wall_ms(elapsed_ms(start));
  out["file"] = (std::filesystem::path(cfg.output.dir) / "modes.json").string();
  write_summary(cfg, "modes.json", summary);
  return summary;
}

RunSummary cmd_sweep(const ExperimentConfig& cfg, const std::string& key, const std::vector<double>& values) {
  const auto start = Clock::now();
  if (std::find(std::begin(kSweepKeys), std::end(kSweepKeys), key) == std::end(kSweepKeys)) {
    std::string valid;
    for (const char* k : kSweepKeys) valid += valid.empty() ? k : std::string(", ") + k;
    throw UsageError("parameter '" + key + "' is not sweepable; valid: " + valid);
  }
  if (values.empty()) throw UsageError("sweep needs at least one value");
  validate(cfg);

  const bool spatial = key == "alpha_max_rad_per_um";
  const bool mode_only = key == "n_bins";
  std::string table = key;
  if (spatial)
    table += ",fwhm_g3_w_spatial_um,fwhm_g3_ghz_spatial_um\n";
  else if (mode_only)
    table += ",w_negativity,ghz_negativity,w_purity,ghz_purity\n";
  else
    table += ",fwhm_g3_conditional_ps,fwhm_g2_ps,w_negativity,ghz_negativity\n";

  const double nan = std::nan("");
  for (double v : values) {
    const ExperimentConfig c = with_value(cfg, key, v);
    std::vector<double> row;
    if (spatial) {
      const auto& window = need_window(c);
      const auto g3w = slice_at_zero(corr::g3_w_spatial(window, c.grid("rho12"), c.grid("rho32")));
      const auto g3g = corr::g3_ghz_spatial(window, c.grid("rho12"));
      row = {try_fwhm(g3w).value_or(nan), try_fwhm(g3g).value_or(nan)};
    } else if (mode_only) {
      const ModeMetrics m = mode_metrics(c, *c.mode_grid);
      row = {m.w_negativity, m.ghz_negativity, m.w_purity, m.ghz_purity};
    } else {
      const auto& f1 = c.filter(0, 3);
      const auto& f2 = c.filter(1, 3);
      const auto& f3 = c.filter(2, 3);
      const Grid1D& tau12 = c.grid("tau12");
      const auto b = corr::g3_w_conditional(c.phase_match, f1, f2, f3, c.quadrature, tau12);
      const auto g2 = corr::g2_w_temporal(c.phase_match, f1, f2, c.quadrature, tau12);
      row = {try_fwhm(b).value_or(nan), try_fwhm(g2).value_or(nan)};
      if (c.mode_grid) {
        const ModeMetrics m = mode_metrics(c, *c.mode_grid);
        row.push_back(m.w_negativity);
        row.push_back(m.ghz_negativity);
      } else {
        row.push_back(nan);
        row.push_back(nan);
      }
    }
    table += fmt(v);
    for (double x : row) table += "," + fmt(x);
    table += "\n";
  }

  RunSummary summary("sweep", cfg);
  const std::string stem = "sweep_" + key;
  json& out = summary.output(stem);
  out["file"] = write_output(cfg.output.dir, stem + ".csv", table);
  out["parameter"] = key;
  out["rows"] = values.size();
  summary.set_wall_ms(elapsed_ms(start));
  write_summary(cfg, stem + "_summary.json", summary);
  return summary;
}

}  // namespace triphoton::cli

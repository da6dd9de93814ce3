#include "qmlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <utility>

#include "qmlab/boxwell.hpp"
#include "qmlab/doubleslit.hpp"
#include "qmlab/error.hpp"
#include "qmlab/export.hpp"
#include "qmlab/measure.hpp"
#include "qmlab/qmass.hpp"
#include "qmlab/wave.hpp"

namespace qmlab::scenarios {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
namespace ds = doubleslit;
namespace bw = boxwell;

constexpr double kPi = std::numbers::pi;

json common_defaults() { return {{"c", 1.0}, {"hbar", 1.0}}; }

json box_defaults() {
  return {{"W", 1.0}, {"L", 0.1}, {"omega0", 100.0}, {"beta", nullptr}, {"k_beat", 2.0 * kPi}};
}

json defaults_for(const std::string& kind) {
  json d = common_defaults();
  if (kind == "boost") {
    d.update({{"omega0", 1.0}, {"beta", 0.6}, {"samples_per_period", 64}, {"periods", 4}});
  } else if (kind == "doubleslit-map") {
    d.update({{"d", 1.0}, {"wavelength", 0.05}, {"x0", 0.0}, {"x1", 10.0}, {"nx", 201},
              {"y0", -5.0}, {"y1", 5.0}, {"ny", 201}, {"axis_samples", 500},
              {"exclusion_radius", nullptr}});
  } else if (kind == "doubleslit-traj") {
    d.update({{"d", 1.0}, {"wavelength", 0.01}, {"step", 0.01}, {"max_steps", 3000},
              {"far_radius", 25.0}, {"far_angles_deg", {-45, -30, -15, 0, 15, 30, 45}},
              {"near_offset", 0.01}, {"near_angles_deg", {-60, -30, 0, 30, 60}},
              {"exclusion_radius", nullptr}});
  } else if (kind == "doubleslit-fringes") {
    d.update({{"d", 0.5}, {"wavelength", 0.01}, {"D", 50.0}, {"screen", "arc"},
              {"samples_per_fringe", 64}, {"half_width", nullptr}});
  } else if (kind == "box-beat") {
    d.update(box_defaults());
    d.update({{"probe", 0.37}, {"beat_periods", 16}, {"samples_per_period", 32}});
  } else if (kind == "box-states") {
    d.update(box_defaults());
    d.update({{"positions", 2001}});
  } else if (kind == "box-quantize") {
    d.update({{"W", 1.0}, {"L", 0.1}, {"omega0", 100.0}, {"n_max", 5}, {"envelope_samples", 201}});
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown scenario '" + kind + "'");
  }
  return d;
}

// The default value fixes the accepted type; null defaults mark optional numbers.
void check_type(const std::string& key, const json& def, const json& value) {
  auto fail = [&](const char* want) {
    throw Error(ErrorKind::InvalidConfig, "parameter '" + key + "' must be " + want + ", got " + value.dump());
  };
  if (def.is_null()) {
    if (!value.is_null() && !value.is_number()) fail("a number or null");
  } else if (def.is_number_integer()) {
    if (!value.is_number_integer()) fail("an integer");
  } else if (def.is_number()) {
    if (!value.is_number()) fail("a number");
  } else if (def.is_string()) {
    if (!value.is_string()) fail("a string");
  } else if (def.is_array()) {
    if (!value.is_array() || !std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
      fail("an array of numbers");
    }
  }
}

double num(const json& p, const char* key) { return p.at(key).get<double>(); }
int integer(const json& p, const char* key) { return p.at(key).get<int>(); }
std::optional<double> optional_num(const json& p, const char* key) {
  const auto& v = p.at(key);
  return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
}

Units units_of(const json& p) {
  Units u{num(p, "c"), num(p, "hbar")};
  u.validate();
  return u;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidConfig, message);
}

ds::SlitConfig slit_config(const json& p) {
  auto cfg = ds::SlitConfig::from_wavelength(num(p, "d"), num(p, "wavelength"), units_of(p));
  if (p.contains("exclusion_radius")) cfg.exclusion_radius = optional_num(p, "exclusion_radius");
  cfg.validate();
  return cfg;
}

bw::BoxConfig box_config(const json& p) {
  bw::BoxConfig cfg;
  cfg.W = num(p, "W");
  cfg.L = num(p, "L");
  cfg.omega0 = num(p, "omega0");
  cfg.units = units_of(p);
  const auto beta = p.contains("beta") ? optional_num(p, "beta") : std::optional<double>(0.05);
  if (beta) {
    cfg.beta = *beta;
  } else {
    // gamma beta = k_beat c / omega0
    const double k = num(p, "k_beat");
    require(k > 0, "parameter 'k_beat' must be positive");
    const double q = k * cfg.units.c / cfg.omega0;
    cfg.beta = q / std::sqrt(1.0 + q * q);
  }
  cfg.validate();
  return cfg;
}

void validate_params(const std::string& kind, const json& p) {
  units_of(p);
  if (kind == "boost") {
    require(num(p, "omega0") > 0, "parameter 'omega0' must be positive");
    require(std::abs(num(p, "beta")) < 1, "parameter 'beta' must satisfy |beta| < 1");
    require(integer(p, "samples_per_period") >= 16, "parameter 'samples_per_period' must be >= 16");
    require(integer(p, "periods") >= 2, "parameter 'periods' must be >= 2");
  } else if (kind == "doubleslit-map") {
    slit_config(p);
    require(integer(p, "nx") >= 1 && integer(p, "ny") >= 1, "parameters 'nx', 'ny' must be >= 1");
    require(num(p, "x1") >= num(p, "x0") && num(p, "y1") >= num(p, "y0"), "grid ranges must be ordered");
    require(num(p, "x1") > 0, "parameter 'x1' must be positive for the axis profile");
    require(integer(p, "axis_samples") >= 2, "parameter 'axis_samples' must be >= 2");
  } else if (kind == "doubleslit-traj") {
    const auto cfg = slit_config(p);
    const double step = num(p, "step");
    require(step > 0 && step <= cfg.d / 100.0 * (1 + 1e-12), "parameter 'step' must be in (0, d/100]");
    require(integer(p, "max_steps") >= 1, "parameter 'max_steps' must be >= 1");
    require(num(p, "far_radius") > 0, "parameter 'far_radius' must be positive");
    require(num(p, "near_offset") * cfg.d > cfg.exclusion(),
            "parameter 'near_offset' must place starts outside the slit exclusion radius");
  } else if (kind == "doubleslit-fringes") {
    slit_config(p);
    require(num(p, "D") > 0, "parameter 'D' must be positive");
    const auto screen = p.at("screen").get<std::string>();
    require(screen == "arc" || screen == "line", "parameter 'screen' must be \"arc\" or \"line\"");
    require(integer(p, "samples_per_fringe") >= 16, "parameter 'samples_per_fringe' must be >= 16");
  } else if (kind == "box-beat" || kind == "box-states") {
    require(p.at("beta").is_null() || !p.contains("k_beat") || p.at("k_beat") == defaults_for(kind).at("k_beat"),
            "set either 'beta' or 'k_beat', not both");
    const auto cfg = box_config(p);
    if (kind == "box-beat") {
      require(num(p, "probe") > 0 && num(p, "probe") < cfg.W, "parameter 'probe' must lie inside (0, W)");
      require(integer(p, "beat_periods") >= 8, "parameter 'beat_periods' must be >= 8");
      require(integer(p, "samples_per_period") >= 16, "parameter 'samples_per_period' must be >= 16");
    } else {
      require(integer(p, "positions") >= 16, "parameter 'positions' must be >= 16");
    }
  } else if (kind == "box-quantize") {
    box_config(p);
    require(integer(p, "n_max") >= 1, "parameter 'n_max' must be >= 1");
    require(integer(p, "envelope_samples") >= 2, "parameter 'envelope_samples' must be >= 2");
  }
}

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

// --- scenario pipelines -------------------------------------------------------

struct Context {
  const ScenarioConfig& cfg;
  RunSummary& summary;

  fs::path file(const std::string& name) {
    summary.files.push_back(name);
    return cfg.out_dir / name;
  }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

void run_boost(Context& ctx) {
  const json& p = ctx.cfg.params;
  const Units u = units_of(p);
  const double omega0 = num(p, "omega0");
  const double beta = num(p, "beta");
  const auto b = boost_standing_wave(omega0, beta);
  const auto state = mass_state(b, u);
  auto& m = ctx.summary.metrics;

  const double rest_mass = u.hbar * omega0 / (u.c * u.c);
  m["quantum_rest_mass"] = relative_metric(rest_mass, state.mass, 1e-12,
                                           "formula: hbar omega0 / c^2 vs four-momentum invariant");
  m["rest_frame_route_mass"] = relative_metric(state.mass, rest_frame_mass(b, u), 1e-12,
                                               "four-momentum invariant vs Doppler shift to rest frame");
  if (beta == 0) {
    m["group_speed"] = absolute_metric(0.0, state.speed, 1e-12, "boost speed vs p c^2 / E");
  } else {
    m["group_speed"] = relative_metric(std::abs(beta), state.speed, 1e-12, "boost speed vs p c^2 / E");
  }

  const auto field = to_superposition(b, 1.0, u);
  const int per = integer(p, "samples_per_period");
  const int periods = integer(p, "periods");
  if (beta == 0) {
    const double lambda = 2.0 * kPi * u.c / omega0;
    const auto xs = linspace(0.0, periods * lambda, per * periods + 1);
    std::vector<double> vals;
    for (double x : xs) vals.push_back(evaluate(field, x, 0.25 * lambda / u.c));
    export_series("x", "value", xs, vals, ctx.file("field.csv"));
    ctx.summary.warnings.push_back("beta = 0: standing wave, superluminal wavelength is infinite");
    return;
  }

  const double gamma = lorentz_gamma(beta);
  const double lambda_pred = de_broglie_wavelength(state.mass, state.speed * u.c, gamma, u);
  const auto pair = factor_carrier_envelope(b, 1.0, u);
  const double span = periods * pair.envelope_wavelength();
  const double carrier_wavelength = 2.0 * kPi / pair.carrier.wavenumber;
  const int n_env = per * periods + 1;
  const int n_field = static_cast<int>(std::ceil(span / carrier_wavelength * per)) + 1;
  const auto xe = linspace(0.0, span, n_env);
  const auto xf = linspace(0.0, span, std::max(n_env, n_field));

  std::vector<double> env;
  for (double x : xe) env.push_back(pair.envelope_value(b.axis().x() * x, 0.0));
  std::vector<double> fvals;
  double factor_error = 0;
  for (double x : xf) {
    const Vec2<double> r(x, 0.0);
    const double f = evaluate(field, r, 0.0);
    factor_error = std::max(factor_error, std::abs(f - pair(r, 0.0)) / pair.amplitude);
    fvals.push_back(f);
  }
  const auto est = measure_spatial_wavelength(Eigen::Map<const Eigen::VectorXd>(xe.data(), n_env),
                                              Eigen::Map<const Eigen::VectorXd>(env.data(), n_env));
  m["superluminal_wavelength"] = relative_metric(lambda_pred, est.wavelength, 1e-3,
                                                 "formula: h / (gamma m v) vs oracle: envelope zero crossings");
  if (std::isfinite(est.spectral_wavelength)) {
    m["superluminal_wavelength_spectral"] = relative_metric(
        lambda_pred, est.spectral_wavelength, 2e-2, "formula: h / (gamma m v) vs oracle: spectral peak");
  }
  m["factorization_error"] = bound_metric(factor_error, 1e-10, "oracle: |sum of waves - carrier x envelope|");
  m["envelope_phase_speed"] = relative_metric(u.c / std::abs(beta), pair.envelope.phase_speed(), 1e-12,
                                              "formula: c^2 / v vs product form");
  m["carrier_phase_speed"] = relative_metric(std::abs(beta) * u.c, pair.carrier.phase_speed(), 1e-12,
                                             "formula: v vs product form");
  export_series("x", "value", xf, fvals, ctx.file("field.csv"));
  export_series("x", "value", xe, env, ctx.file("envelope.csv"));
}

void run_doubleslit_map(Context& ctx) {
  const json& p = ctx.cfg.params;
  const auto cfg = slit_config(p);
  const ds::Grid2 grid{num(p, "x0"), num(p, "x1"), integer(p, "nx"),
                       num(p, "y0"), num(p, "y1"), integer(p, "ny")};
  const auto field = ds::mass_map(cfg, grid);
  auto& m = ctx.summary.metrics;
  const double peak = cfg.units.hbar * cfg.omega / (cfg.units.c * cfg.units.c);

  m["midpoint_mass"] = relative_metric(peak, ds::weighted_local_state({0.0, 0.0}, cfg).mass, 1e-9,
                                       "formula: hbar omega / c^2 vs weighted local state");
  double best = -1;
  ds::Vector where = ds::Vector::Zero();
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double v = field.values(j, i);
      if (std::isfinite(v) && v > best) {
        best = v;
        where = {grid.x(i), grid.y(j)};
      }
    }
  }
  const bool origin_on_grid = grid.x0 <= 0 && grid.x1 >= 0 && grid.y0 <= 0 && grid.y1 >= 0;
  if (origin_on_grid && best >= 0) {
    m["map_maximum"] = relative_metric(peak, best, 1e-9, "formula: hbar omega / c^2 vs mass map maximum");
    m["map_maximum_offset"] = absolute_metric(0.0, where.norm(), 1e-12 * cfg.d,
                                              "inter-slit midpoint vs mass map argmax");
  }
  const int n_axis = integer(p, "axis_samples");
  const auto xs = linspace(0.0, grid.x1, n_axis);
  int rising = 0;
  double prev = ds::weighted_local_state({xs[0], 0.0}, cfg).mass;
  for (int i = 1; i < n_axis; ++i) {
    const double cur = ds::weighted_local_state({xs[i], 0.0}, cfg).mass;
    if (cur > prev) ++rising;
    prev = cur;
  }
  m["axis_increasing_pairs"] = absolute_metric(0.0, rising, 0.0, "monotone decay vs axis samples");
  export_grid(field, ctx.file("mass_map.csv"));
}

void run_doubleslit_traj(Context& ctx) {
  const json& p = ctx.cfg.params;
  const auto cfg = slit_config(p);
  const double step = num(p, "step");
  const int max_steps = integer(p, "max_steps");
  auto& m = ctx.summary.metrics;

  auto dump = [&](const ds::Trajectory& t, const std::string& name) {
    std::vector<double> x, y;
    for (const auto& q : t.points) {
      x.push_back(q.x());
      y.push_back(q.y());
    }
    export_points(x, y, t.times, ctx.file(name));
  };
  auto label = [](const char* prefix, std::size_t i) {
    std::string s = std::to_string(i);
    return std::string(prefix) + (s.size() < 2 ? "0" + s : s) + ".csv";
  };

  double far_worst = 0;
  const double radius = num(p, "far_radius") * cfg.d;
  const auto far = p.at("far_angles_deg").get<std::vector<double>>();
  for (std::size_t i = 0; i < far.size(); ++i) {
    const double phi = far[i] * kPi / 180.0;
    const auto t = ds::integrate_trajectory({radius * std::cos(phi), radius * std::sin(phi)}, cfg, step, max_steps);
    const auto dev = ds::radial_deviation(t, ds::Vector::Zero());
    for (std::size_t s = 0; s < dev.size(); ++s) {
      const ds::Vector mid = 0.5 * (t.points[s] + t.points[s + 1]);
      if (mid.norm() > 10.0 * cfg.d && ds::classify_region(mid, cfg) == ds::Region::Balanced) {
        far_worst = std::max(far_worst, dev[s]);
      }
    }
    dump(t, label("trajectory_far_", i));
  }
  if (!far.empty()) {
    m["far_field_radial_deviation"] = bound_metric(far_worst, 1e-3, "oracle: chord vs midpoint-radial ray");
  }

  double near_worst = 0;
  const auto near = p.at("near_angles_deg").get<std::vector<double>>();
  const double offset = num(p, "near_offset") * cfg.d;
  for (std::size_t i = 0; i < near.size(); ++i) {
    const double a = near[i] * kPi / 180.0;
    const ds::Vector start = cfg.slit1() + offset * ds::Vector(std::cos(a), std::sin(a));
    const auto t = ds::integrate_trajectory(start, cfg, step, max_steps);
    const auto dev = ds::radial_deviation(t, cfg.slit1());
    for (std::size_t s = 0; s < dev.size(); ++s) {
      const ds::Vector mid = 0.5 * (t.points[s] + t.points[s + 1]);
      if (ds::classify_region(mid, cfg) == ds::Region::NearSlit1) near_worst = std::max(near_worst, dev[s]);
    }
    dump(t, label("trajectory_near_", i));
  }
  if (!near.empty()) {
    m["near_slit_radial_deviation"] = bound_metric(near_worst, 1e-2, "oracle: chord vs slit-radial ray");
  }

  const auto axis = ds::integrate_trajectory({2.0 * cfg.d, 0.0}, cfg, step, max_steps);
  double drift = 0;
  for (const auto& q : axis.points) drift = std::max(drift, std::abs(q.y()));
  m["axis_symmetry"] = absolute_metric(0.0, drift, 1e-12 * cfg.d, "symmetry: on-axis start stays on axis");
  dump(axis, "trajectory_axis.csv");
}

void run_doubleslit_fringes(Context& ctx) {
  const json& p = ctx.cfg.params;
  const auto cfg = slit_config(p);
  ds::Screen screen;
  screen.shape = p.at("screen").get<std::string>() == "line" ? ds::ScreenShape::Line : ds::ScreenShape::Arc;
  screen.distance = num(p, "D");
  screen.half_width = optional_num(p, "half_width");
  if (screen.distance / cfg.d < ds::kFarFieldRatio) {
    ctx.summary.warnings.push_back("D / d < 20: far-field fringe formula is approximate");
  }
  const auto report = ds::fringe_spacing_measured(cfg, screen, integer(p, "samples_per_fringe"));
  auto& m = ctx.summary.metrics;
  m["fringe_spacing"] = relative_metric(report.predicted, report.measured, 1e-2,
                                        "formula: half local wavelength (D lambda / d) vs oracle: intensity maxima");
  double central = report.maxima.front();
  for (double x : report.maxima) {
    if (std::abs(x) < std::abs(central)) central = x;
  }
  m["central_maximum"] = absolute_metric(0.0, central, 1e-6 * report.predicted, "symmetry: bright fringe on axis");
  export_series("x", "value", report.profile.coordinate, report.profile.intensity, ctx.file("intensity.csv"));
}

void run_box_beat(Context& ctx) {
  const json& p = ctx.cfg.params;
  const auto cfg = box_config(p);
  const auto kin = bw::box_kinematics(cfg);
  const double duration = integer(p, "beat_periods") * 2.0 * kPi / kin.omega_beat;
  const double dt = 2.0 * kPi / kin.omega_mean / integer(p, "samples_per_period");
  double probe = num(p, "probe");

  std::optional<bw::BeatAnalysis> beats;
  for (int attempt = 0; attempt < 5 && !beats; ++attempt) {
    try {
      beats = bw::analyze_beats(cfg, probe, duration, dt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateProbe) throw;
      ctx.summary.warnings.push_back("degenerate probe at x = " + format_number(probe) + ", offsetting");
      probe = std::fmod(probe + 0.0137 * cfg.W, cfg.W);
    }
  }
  if (!beats) throw Error(ErrorKind::DegenerateProbe, "no usable probe position found");

  auto& m = ctx.summary.metrics;
  m["fast_frequency"] = relative_metric(beats->predicted_fast, beats->fast, 5e-3,
                                        "formula: gamma omega0 vs oracle: spectral lines");
  m["slow_frequency"] = relative_metric(beats->predicted_slow, beats->slow, 5e-3,
                                        "formula: gamma omega0 v / c vs oracle: spectral lines");
  const auto field = bw::build_field(cfg);
  m["field_residual"] = bound_metric(wave_equation_residual(field, standard_grid(field.max_omega(), cfg.units)),
                                     1e-3, "oracle: finite-difference wave equation");

  Eigen::VectorXd times, values;
  bw::sample_probe(cfg, probe, duration, dt, times, values);
  export_series("t", "value", std::span<const double>(times.data(), times.size()),
                std::span<const double>(values.data(), values.size()), ctx.file("probe_series.csv"));
}

void run_box_states(Context& ctx) {
  const json& p = ctx.cfg.params;
  const auto cfg = box_config(p);
  const auto trace = bw::trace_states_vs_position(cfg, integer(p, "positions"));
  const auto momentum = four_momentum_of(boost_standing_wave(cfg.omega0, cfg.beta), cfg.units);
  auto& m = ctx.summary.metrics;
  m["envelope_wavenumber"] = relative_metric(momentum.momentum.norm() / cfg.units.hbar, trace.envelope_wavenumber,
                                             5e-3, "formula: p / hbar of the +v pair vs oracle: helix phase fit");
  m["helix_modulus_spread"] = bound_metric(bw::helix_modulus_spread(trace), 2e-2,
                                           "oracle: smoothed a_c^2 + a_s^2 along the cavity path");
  const auto at_rest = bw::project_internal_states(cfg, 0.0);
  m["projection_residual"] = bound_metric(at_rest.residual_norm / at_rest.field_norm, 1e-8,
                                          "oracle: least-squares state projection at t = 0");
  if (trace.resolution_warning) ctx.summary.warnings.push_back("cavity window barely resolves the envelope");

  std::vector<double> xs, cs, ss;
  for (std::size_t i = 0; i < trace.positions.size(); ++i) {
    if (!trace.valid[i]) continue;
    xs.push_back(trace.positions[i]);
    cs.push_back(trace.cosine[i]);
    ss.push_back(trace.sine[i]);
  }
  export_series("x", "value", xs, cs, ctx.file("states_cosine.csv"));
  export_series("x", "value", xs, ss, ctx.file("states_sine.csv"));
}

void run_box_quantize(Context& ctx) {
  const json& p = ctx.cfg.params;
  const auto cfg = box_config(p);
  const auto reports = bw::quantize(cfg, integer(p, "n_max"));
  auto& m = ctx.summary.metrics;
  const auto xs = linspace(0.0, cfg.W, integer(p, "envelope_samples"));
  for (const auto& r : reports) {
    const std::string n = std::to_string(r.n);
    m["momentum_n" + n] = relative_metric(r.schrodinger_momentum, r.momentum, 1e-9,
                                          "formula: n pi hbar / W vs root-solved hbar dk");
    m["ladder_n" + n] = relative_metric(r.n, r.momentum / reports.front().momentum, 1e-9,
                                        "formula: n vs p_n / p_1");
    m["energy_n" + n] = relative_metric(r.schrodinger_energy, r.kinetic_energy, r.relativistic_bound,
                                        "formula: n^2 pi^2 hbar^2 / (2 m W^2) vs (gamma - 1) m c^2");
    m["wall_left_n" + n] = absolute_metric(0.0, r.wall_left, 1e-9, "superposed envelope at x = 0");
    m["wall_right_n" + n] = absolute_metric(0.0, r.wall_right, 1e-9, "superposed envelope at x = W");
    std::vector<double> env;
    for (double x : xs) env.push_back(bw::superposed_envelope(r.k_beat, x));
    export_series("x", "value", xs, env, ctx.file("envelope_n" + n + ".csv"));
  }
}

const std::map<std::string, std::function<void(Context&)>>& pipelines() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"boost", run_boost},
      {"doubleslit-map", run_doubleslit_map},
      {"doubleslit-traj", run_doubleslit_traj},
      {"doubleslit-fringes", run_doubleslit_fringes},
      {"box-beat", run_box_beat},
      {"box-states", run_box_states},
      {"box-quantize", run_box_quantize},
  };
  return table;
}

json metric_json(const Metric& m) {
  json j;
  if (m.predicted) j["predicted"] = *m.predicted;
  if (m.measured) j["measured"] = *m.measured;
  if (m.rel_error) j["rel_error"] = *m.rel_error;
  j["tolerance"] = m.tolerance;
  j["pass"] = m.pass;
  j["provenance"] = m.provenance;
  return j;
}

Metric metric_from_json(const json& j) {
  Metric m;
  if (j.contains("predicted")) m.predicted = j.at("predicted").get<double>();
  if (j.contains("measured")) m.measured = j.at("measured").get<double>();
  if (j.contains("rel_error")) m.rel_error = j.at("rel_error").get<double>();
  m.tolerance = j.at("tolerance").get<double>();
  m.pass = j.at("pass").get<bool>();
  m.provenance = j.at("provenance").get<std::string>();
  return m;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : pipelines()) v.push_back(name);
    return v;
  }();
  return names;
}

ScenarioConfig make_config(const std::string& kind, const json& document,
                           const std::vector<std::string>& overrides, const fs::path& out_dir) {
  json params = defaults_for(kind);
  if (!document.is_null() && !document.is_object()) {
    throw Error(ErrorKind::InvalidConfig, "config document must be a JSON object");
  }
  auto assign = [&](const std::string& key, const json& value) {
    if (key == "scenario") {
      if (!value.is_string() || value.get<std::string>() != kind) {
        throw Error(ErrorKind::InvalidConfig, "config is for scenario " + value.dump() + ", not '" + kind + "'");
      }
      return;
    }
    if (!params.contains(key)) {
      throw Error(ErrorKind::InvalidConfig, "unknown parameter '" + key + "' for scenario '" + kind + "'");
    }
    check_type(key, defaults_for(kind).at(key), value);
    params[key] = value;
  };
  if (document.is_object()) {
    for (const auto& [key, value] : document.items()) assign(key, value);
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::InvalidConfig, "override '" + item + "' is not key=value");
    }
    assign(item.substr(0, eq), parse_override_value(item.substr(eq + 1)));
  }
  try {
    validate_params(kind, params);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, "scenario '" + kind + "': " + e.what());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, "scenario '" + kind + "': " + e.what());
  }
  return {kind, params, out_dir};
}

Metric relative_metric(double predicted, double measured, double tolerance, std::string provenance) {
  Metric m;
  m.predicted = predicted;
  m.measured = measured;
  m.rel_error = std::abs(measured - predicted) / std::abs(predicted);
  m.tolerance = tolerance;
  m.pass = *m.rel_error <= tolerance;
  m.provenance = std::move(provenance);
  return m;
}

Metric absolute_metric(double predicted, double measured, double tolerance, std::string provenance) {
  Metric m;
  m.predicted = predicted;
  m.measured = measured;
  m.tolerance = tolerance;
  m.pass = std::abs(measured - predicted) <= tolerance;
  m.provenance = std::move(provenance);
  return m;
}

Metric bound_metric(double measured, double tolerance, std::string provenance) {
  Metric m;
  m.measured = measured;
  m.tolerance = tolerance;
  m.pass = measured <= tolerance;
  m.provenance = std::move(provenance);
  return m;
}

bool RunSummary::all_pass() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const auto& kv) { return kv.second.pass; });
}

RunSummary run(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto it = pipelines().find(cfg.kind);
  if (it == pipelines().end()) throw Error(ErrorKind::InvalidConfig, "unknown scenario '" + cfg.kind + "'");
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + cfg.out_dir.string());

  RunSummary summary;
  summary.scenario = cfg.kind;
  summary.parameters = cfg.params;
  Context ctx{cfg, summary};
  it->second(ctx);
  summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

json to_json(const RunSummary& s) {
  json metrics = json::object();
  for (const auto& [name, m] : s.metrics) metrics[name] = metric_json(m);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["scenario"] = s.scenario;
  doc["parameters"] = s.parameters;
  doc["metrics"] = metrics;
  doc["pass"] = s.all_pass();
  doc["files"] = s.files;
  doc["warnings"] = s.warnings;
  doc["wall_clock_seconds"] = s.wall_clock_seconds;
  return doc;
}

RunSummary summary_from_json(const json& doc) {
  if (doc.at("schema_version").get<int>() != kSchemaVersion) {
    throw Error(ErrorKind::Io, "unsupported summary schema version");
  }
  RunSummary s;
  s.scenario = doc.at("scenario").get<std::string>();
  s.parameters = doc.at("parameters");
  for (const auto& [name, m] : doc.at("metrics").items()) s.metrics[name] = metric_from_json(m);
  s.files = doc.at("files").get<std::vector<std::string>>();
  s.warnings = doc.at("warnings").get<std::vector<std::string>>();
  s.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
  return s;
}

void export_summary(const RunSummary& summary, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << to_json(summary).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace qmlab::scenarios

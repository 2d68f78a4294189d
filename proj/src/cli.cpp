#include "giantqed/cli.hpp"

#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "giantqed/analytic.hpp"
#include "giantqed/bic.hpp"
#include "giantqed/csv.hpp"
#include "giantqed/dde.hpp"
#include "giantqed/field.hpp"
#include "giantqed/spectral.hpp"

namespace giantqed::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  return s;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

double parse_term(const std::string& term) {
  const auto p = term.find("pi");
  if (p == std::string::npos) return parse_number(term);
  std::string coef = term.substr(0, p), rest = term.substr(p + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1;
  if (coef == "-")
    c = -1;
  else if (!coef.empty() && coef != "+")
    c = parse_number(coef);
  double den = 1;
  if (!rest.empty()) {
    if (rest[0] != '/') throw UsageError("bad phase term: '" + term + "'");
    den = parse_number(rest.substr(1));
  }
  return c * std::numbers::pi / den;
}

}  // namespace

double parse_phase(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty phase");
  // split on '+' / '-' that start a new term
  double total = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const bool boundary = i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' &&
                                            s[i - 1] != 'E' && s[i - 1] != '*' && s[i - 1] != '/');
    if (!boundary) continue;
    std::string term = s.substr(start, i - start);
    if (!term.empty() && term[0] == '+') term = term.substr(1);
    total += parse_term(term);
    start = i;
  }
  return total;
}

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(trim(text));
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("range must look like lo:hi:step");
  Range r{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  if (!(r.step > 0) || !(r.hi >= r.lo)) throw UsageError("range needs lo <= hi and step > 0");
  return r;
}

namespace {

// One layer of system settings; later layers override earlier ones.
struct SystemSpec {
  std::optional<std::string> topology;
  std::optional<int> legs;
  std::optional<double> gamma, vg, delta_t, eta, dx, omega0, phi;

  void overlay(const SystemSpec& top) {
    if (top.topology) topology = top.topology;
    if (top.legs) legs = top.legs;
    if (top.gamma) gamma = top.gamma;
    if (top.vg) vg = top.vg;
    const int forms = bool(top.delta_t) + bool(top.eta) + bool(top.dx);
    if (forms > 1) throw UsageError("give only one of eta, dt (delta_t) and dx");
    if (forms == 1) {
      delta_t = top.delta_t;
      eta = top.eta;
      dx = top.dx;
    }
    if (top.phi) {
      phi = top.phi;
      omega0.reset();
    }
    if (top.omega0) {
      omega0 = top.omega0;
      if (!top.phi) phi.reset();
    }
  }
};

SystemSpec load_yaml(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const std::exception& e) {
    throw UsageError("cannot read config file '" + path + "': " + e.what());
  }
  const YAML::Node sys = root["system"] ? root["system"] : root;
  SystemSpec s;
  try {
    if (sys["topology"]) s.topology = sys["topology"].as<std::string>();
    if (sys["legs"]) s.legs = sys["legs"].as<int>();
    if (sys["gamma"]) s.gamma = sys["gamma"].as<double>();
    if (sys["vg"]) s.vg = sys["vg"].as<double>();
    if (sys["delta_t"]) s.delta_t = sys["delta_t"].as<double>();
    if (sys["eta"]) s.eta = sys["eta"].as<double>();
    if (sys["dx"]) s.dx = sys["dx"].as<double>();
    if (sys["omega0"]) s.omega0 = sys["omega0"].as<double>();
    if (sys["phi"]) s.phi = parse_phase(sys["phi"].as<std::string>());
  } catch (const YAML::Exception& e) {
    throw UsageError("bad value in config file '" + path + "': " + e.what());
  }
  return s;
}

SystemConfig resolve(const SystemSpec& s) {
  const double gamma = s.gamma.value_or(1.0);
  const double vg = s.vg.value_or(1.0);
  if (!(gamma > 0)) throw UsageError("gamma must be positive");
  if (!(vg > 0)) throw UsageError("vg must be positive");
  if (s.phi && s.omega0 && (s.delta_t || s.eta || s.dx))
    throw UsageError("phi conflicts with giving both omega0 and the leg spacing");
  std::optional<double> dt;
  if (s.delta_t) dt = *s.delta_t;
  if (s.eta) dt = *s.eta / gamma;
  if (s.dx) dt = *s.dx / vg;
  double omega0 = 50.0 * gamma;
  if (s.phi && s.omega0) {
    if (*s.omega0 == 0) throw UsageError("cannot back-solve the spacing with omega0 = 0");
    dt = *s.phi / *s.omega0;
    omega0 = *s.omega0;
  } else {
    if (!dt) dt = 0.15 / gamma;
    if (s.omega0) omega0 = *s.omega0;
    if (s.phi) {
      if (*dt > 0)
        omega0 = *s.phi / *dt;
      else if (*s.phi != 0)
        throw UsageError("a nonzero phi needs a nonzero leg spacing");
    }
  }
  try {
    return build_config(parse_topology(s.topology.value_or("separate")), s.legs.value_or(2), gamma,
                        *dt, omega0, vg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// options shared by every subcommand
struct SystemFlags {
  std::string config_file, topology, phi;
  int legs = 2;
  double gamma = 1, eta = 0, dt = 0, dx = 0, omega0 = 0, vg = 1;
  std::string out = ".";
  bool svg = false;
  CLI::Option *o_topology, *o_legs, *o_gamma, *o_eta, *o_dt, *o_dx, *o_phi, *o_omega0, *o_vg;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "YAML config file (section 'system')")
        ->check(CLI::ExistingFile);
    o_topology = app->add_option("--topology", topology, "separate | braided")
                     ->envname("GIANTQED_TOPOLOGY");
    o_legs = app->add_option("--legs", legs, "legs per atom")->envname("GIANTQED_LEGS");
    o_gamma = app->add_option("--gamma", gamma, "decay rate per leg")->envname("GIANTQED_GAMMA");
    o_eta = app->add_option("--eta", eta, "retardation gamma*dt")->envname("GIANTQED_ETA");
    o_dt = app->add_option("--dt", dt, "travel time between legs")->envname("GIANTQED_DELTA_T");
    o_dx = app->add_option("--dx", dx, "leg spacing")->envname("GIANTQED_DX");
    o_phi = app->add_option("--phi", phi, "propagation phase, e.g. 2pi, pi/2")
                ->envname("GIANTQED_PHI");
    o_omega0 = app->add_option("--omega0", omega0, "transition frequency")
                   ->envname("GIANTQED_OMEGA0");
    o_vg = app->add_option("--vg", vg, "group velocity")->envname("GIANTQED_VG");
    app->add_option("--out", out, "output directory");
    app->add_flag("--svg", svg, "also write SVG renderings");
  }

  SystemConfig config() const {
    SystemSpec base;
    if (!config_file.empty()) base.overlay(load_yaml(config_file));
    SystemSpec top;
    if (*o_topology) top.topology = topology;
    if (*o_legs) top.legs = legs;
    if (*o_gamma) top.gamma = gamma;
    if (*o_eta) top.eta = eta;
    if (*o_dt) top.delta_t = dt;
    if (*o_dx) top.dx = dx;
    if (*o_phi) top.phi = parse_phase(phi);
    if (*o_omega0) top.omega0 = omega0;
    if (*o_vg) top.vg = vg;
    base.overlay(top);
    return resolve(base);
  }
};

InitialState parse_state(const std::string& s) {
  if (s == "symmetric" || s == "sym" || s == "plus") return InitialState::symmetric();
  if (s == "antisymmetric" || s == "antisym" || s == "minus") return InitialState::antisymmetric();
  if (s == "a") return {cplx(1, 0), cplx(0, 0)};
  if (s == "b") return {cplx(0, 0), cplx(1, 0)};
  throw UsageError("unknown state '" + s + "' (symmetric | antisymmetric | a | b)");
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

nlohmann::json config_json(const SystemConfig& c) {
  return {{"topology", to_string(c.topology)},
          {"legs", c.legs},
          {"gamma", c.gamma},
          {"delta_t", c.delta_t},
          {"omega0", c.omega0},
          {"vg", c.vg},
          {"eta", c.eta()},
          {"phi", c.phi()}};
}

void write_manifest(const std::filesystem::path& dir, const std::string& cmd,
                    const SystemConfig& cfg, const nlohmann::json& params) {
  nlohmann::json m{{"subcommand", cmd},        {"config", config_json(cfg)},
                   {"parameters", params},     {"output_directory", dir.string()},
                   {"deterministic", true},    {"version", kVersion}};
  std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
}

// least-squares slope of -log(population)
double fit_rate(const std::vector<double>& t, const std::vector<double>& pop) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(pop[i] > 1e-12)) continue;
    const double y = std::log(pop[i]);
    n += 1;
    sx += t[i];
    sy += y;
    sxx += t[i] * t[i];
    sxy += t[i] * y;
  }
  if (n < 2) return std::nan("");
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SimulateOpts {
  std::string state = "symmetric", engine = "dde";
  double t_max = 0;
  int K = 100;
};

int cmd_simulate(const SystemFlags& f, const SimulateOpts& o, std::ostream& out) {
  const SystemConfig cfg = f.config();
  const InitialState init = parse_state(o.state);
  if (o.engine != "dde" && o.engine != "analytic" && o.engine != "both")
    throw UsageError("engine must be dde, analytic or both");
  const double t_max = o.t_max > 0 ? o.t_max : (cfg.delta_t > 0 ? 4 * cfg.delta_t : 2 / cfg.gamma);
  const auto dir = prepare_out(f.out);

  // the numeric trajectory also provides the sampling grid for the series
  const AmplitudeTrajectory traj = integrate(cfg, init, t_max, o.K);
  std::vector<double> pop(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) pop[i] = traj.population(i);
  std::vector<Series> plots;

  if (o.engine != "analytic") {
    std::ofstream os(dir / "trajectory.csv");
    write_trajectory_csv(os, traj, {"engine = dde"});
    plots.push_back({"dde", traj.t, pop});
  }
  double max_diff = 0;
  if (o.engine != "dde") {
    if (init.parity() == 0) throw UsageError("the analytic engine needs a symmetric or antisymmetric state");
    const int L = cfg.delta_t > 0 ? int(std::floor(t_max / cfg.delta_t)) + 1 : 0;
    const ExpPolySolution sol = exact_solution(cfg, init, L);
    AmplitudeTrajectory series = traj;
    std::vector<double> spop(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      series.ca[i] = evaluate_atom(sol, 0, traj.t[i]);
      series.cb[i] = evaluate_atom(sol, 1, traj.t[i]);
      spop[i] = std::norm(series.ca[i]) + std::norm(series.cb[i]);
      max_diff = std::max(max_diff, std::abs(spop[i] - pop[i]));
    }
    std::ofstream os(dir / "series.csv");
    write_trajectory_csv(os, series, {"engine = analytic"});
    std::ofstream bs(dir / "branches.csv");
    write_branches_csv(bs, sol);
    plots.push_back({"series", traj.t, spop});
    if (o.engine == "analytic") pop = spop;
  }
  if (f.svg) {
    std::ofstream os(dir / "population.svg");
    write_line_svg(os, plots, "t", "population");
  }
  out << "final_population = " << pop.back() << '\n';
  out << "fit_rate = " << fit_rate(traj.t, pop) << '\n';
  if (o.engine == "both") out << "max_abs_diff = " << max_diff << '\n';
  write_manifest(dir, "simulate", cfg,
                 {{"state", o.state}, {"engine", o.engine}, {"t_max", t_max}, {"K", o.K}});
  return kOk;
}

int cmd_decay_rates(const SystemFlags& f, const std::string& scan_text, std::ostream& out) {
  const SystemConfig cfg = f.config();
  const Range r = parse_range(scan_text);
  if (!(r.lo > 0) || r.hi > 3.0 + 1e-12) throw UsageError("scan range must lie within (0, 3]");
  const auto dir = prepare_out(f.out);
  const auto scan = scan_decay_rates(cfg, r.lo, r.hi, r.step);
  {
    std::ofstream os(dir / "decay_rates.csv");
    write_scan_csv(os, scan);
  }
  double best_p = 0, best_m = 0, xp = 0, xm = 0;
  int gaps = 0;
  for (const auto& p : scan) {
    if (!p.ok_plus || !p.ok_minus) ++gaps;
    if (p.ok_plus && p.rate_plus_nm.real() > best_p) best_p = p.rate_plus_nm.real(), xp = p.x;
    if (p.ok_minus && p.rate_minus_nm.real() > best_m) best_m = p.rate_minus_nm.real(), xm = p.x;
  }
  if (f.svg) {
    Series a{"ReG+ NM", {}, {}}, b{"ReG- NM", {}, {}}, c{"ReG+ M", {}, {}}, d{"ReG- M", {}, {}};
    for (const auto& p : scan) {
      a.x.push_back(p.x), b.x.push_back(p.x), c.x.push_back(p.x), d.x.push_back(p.x);
      a.y.push_back(p.ok_plus ? p.rate_plus_nm.real() : std::nan(""));
      b.y.push_back(p.ok_minus ? p.rate_minus_nm.real() : std::nan(""));
      c.y.push_back(p.rate_plus_m.real());
      d.y.push_back(p.rate_minus_m.real());
    }
    std::ofstream os(dir / "decay_rates.svg");
    write_line_svg(os, {a, b, c, d}, "omega0 dx / pi", "Re Gamma / gamma");
  }
  out << "points = " << scan.size() << '\n'
      << "gaps = " << gaps << '\n'
      << "max_ReG_plus_NM = " << best_p << " at " << xp << '\n'
      << "max_ReG_minus_NM = " << best_m << " at " << xm << '\n'
      << "max_ReG = " << std::max(best_p, best_m) << '\n';
  write_manifest(dir, "decay-rates", cfg, {{"scan", scan_text}});
  return kOk;
}

struct FddOpts {
  std::string state = "antisymmetric", source = "auto";
  double t_max = 0, x_span = 0;
  int nx = 241, nt = 201, K = 200;
};

int cmd_fdd(const SystemFlags& f, const FddOpts& o, std::ostream& out) {
  const SystemConfig cfg = f.config();
  const InitialState init = parse_state(o.state);
  const int p = init.parity();
  if (p == 0) throw UsageError("fdd needs a symmetric or antisymmetric state");
  if (!(cfg.delta_t > 0)) throw UsageError("fdd needs a nonzero leg spacing");
  const double t_max = o.t_max > 0 ? o.t_max : 40 * cfg.delta_t;
  const double outer = cfg.leg_position(cfg.total_legs() - 1);
  const double span = o.x_span > 0 ? o.x_span : outer + 10 * cfg.spacing();
  std::unique_ptr<AmplitudeSource> src;
  std::string source = o.source;
  if (source == "auto") source = t_max / cfg.delta_t <= 50 ? "series" : "trajectory";
  if (source == "series")
    src = std::make_unique<SeriesSource>(
        exact_solution(cfg, init, int(std::floor(t_max / cfg.delta_t)) + 1));
  else if (source == "trajectory")
    src = std::make_unique<TrajectorySource>(integrate(cfg, init, t_max, o.K));
  else
    throw UsageError("source must be auto, series or trajectory");
  if (o.nx < 2 || o.nt < 2) throw UsageError("need at least two grid points per axis");
  std::vector<double> xs(o.nx), ts(o.nt);
  for (int i = 0; i < o.nx; ++i) xs[i] = -span + 2 * span * i / (o.nx - 1);
  for (int i = 0; i < o.nt; ++i) ts[i] = t_max * i / (o.nt - 1);
  const Parity parity = p > 0 ? Parity::Symmetric : Parity::Antisymmetric;
  const FieldGrid grid = fdd(*src, cfg, parity, xs, ts);
  const auto dir = prepare_out(f.out);
  {
    std::ofstream os(dir / "fdd.csv");
    write_fdd_csv(os, grid);
  }
  if (f.svg) {
    std::ofstream os(dir / "fdd.svg");
    write_heatmap_svg(os, grid);
  }
  // trapping metrics: final-time interior vs near exterior, interior vs its own history
  double interior_peak = 0, interior_final = 0, exterior_final = 0;
  for (std::size_t it = 0; it < ts.size(); ++it)
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double v = grid.at(it, ix);
      const bool inside = std::abs(xs[ix]) < outer;
      const bool near = !inside && std::abs(xs[ix]) <= outer + 10 * cfg.spacing();
      if (inside) interior_peak = std::max(interior_peak, v);
      if (it + 1 == ts.size() && inside) interior_final = std::max(interior_final, v);
      if (it + 1 == ts.size() && near) exterior_final = std::max(exterior_final, v);
    }
  out << "interior_trapping = " << (interior_peak > 0 ? interior_final / interior_peak : 0.0)
      << '\n'
      << "exterior_interior_ratio = "
      << (interior_final > 0 ? exterior_final / interior_final : std::nan("")) << '\n';
  write_manifest(dir, "fdd", cfg,
                 {{"state", o.state}, {"t_max", t_max}, {"nx", o.nx}, {"nt", o.nt},
                  {"source", source}});
  return kOk;
}

int cmd_bic(const SystemFlags& f, std::ostream& out) {
  const SystemConfig cfg = f.config();
  const auto dir = prepare_out(f.out);
  const auto b = bic_state(cfg);
  if (!b) {
    out << "NoBic\n";
    write_manifest(dir, "bic", cfg, {{"exists", false}});
    return kOk;
  }
  const double quad = bic_field_norm(*b);
  out << "BIC condition = " << b->condition << '\n'
      << "eps_sq = " << std::norm(b->eps1) << '\n'
      << "overlap_antisymmetric = " << overlap_with_initial(*b, InitialState::antisymmetric())
      << '\n'
      << "atomic_weight = " << b->atomic_weight() << '\n'
      << "field_weight = " << b->field_weight() << '\n'
      << "field_weight_quadrature = " << quad << '\n';
  const double d = cfg.spacing();
  std::vector<double> ks;
  for (int i = -2000; i <= 2000; ++i) ks.push_back(cfg.k0() + i * 0.01 / d);
  std::ofstream os(dir / "bic_profile.csv");
  write_profile_csv(os, bic_field_profile(*b, ks));
  write_manifest(dir, "bic", cfg, {{"exists", true}});
  return kOk;
}

struct DetectOpts {
  std::string state = "antisymmetric";
  double t_max = 60, x0 = 1, switch_time = -1, dt_out = 0.01;
  std::string switch_phi;
  int K = 100;
};

int cmd_detect(const SystemFlags& f, const DetectOpts& o, std::ostream& out) {
  const SystemConfig cfg = f.config();
  const InitialState init = parse_state(o.state);
  if (!(cfg.delta_t > 0)) throw UsageError("detection needs a nonzero leg spacing");
  DriveSchedule drive = DriveSchedule::constant(cfg.omega0);
  if (o.switch_time > 0) {
    if (o.switch_phi.empty()) throw UsageError("--switch-time needs --switch-phi");
    drive.then(o.switch_time, parse_phase(o.switch_phi) / cfg.delta_t);
  }
  const TrajectorySource src(integrate_with_drive(cfg, init, drive, o.t_max, o.K));
  std::vector<double> tb;
  const double t_end = src.trajectory().t_end();
  for (long long i = 0; i * o.dt_out <= t_end; ++i) tb.push_back(i * o.dt_out);
  const DetectorRecord rec = detector_signal(src, cfg, o.x0, tb);
  const auto dir = prepare_out(f.out);
  {
    std::ofstream os(dir / "detector.csv");
    write_detector_csv(os, rec);
  }
  if (f.svg) {
    std::ofstream os(dir / "detector.svg");
    write_line_svg(os, {{"|phi_out|^2", rec.t_bar, rec.intensity}}, "t_bar", "intensity");
  }
  const double ts = o.switch_time > 0 ? o.switch_time : t_end;
  out << "released_before_switch = " << 2 * released_energy(rec, 0, ts) << '\n';
  if (o.switch_time > 0) {
    double pre_tail = 0;
    for (std::size_t i = 0; i < tb.size(); ++i)
      if (tb[i] >= 0.5 * ts && tb[i] < ts) pre_tail = std::max(pre_tail, rec.intensity[i]);
    out << "pre_switch_tail_intensity = " << pre_tail << '\n'
        << "released_after_switch = " << 2 * released_energy(rec, ts, t_end) << '\n';
  }
  const auto& tr = src.trajectory();
  out << "final_population = " << tr.population(tr.size() - 1) << '\n';
  write_manifest(dir, "detect", cfg,
                 {{"state", o.state}, {"t_max", o.t_max}, {"x0", o.x0},
                  {"switch_time", o.switch_time}, {"switch_phi", o.switch_phi}, {"K", o.K}});
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two giant atoms in a waveguide: dynamics, decay spectra, bound states, fields"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SystemFlags sim_f, dr_f, fdd_f, bic_f, det_f;
  SimulateOpts sim_o;
  auto* sim = app.add_subcommand("simulate", "atomic amplitudes in time");
  sim_f.attach(sim);
  sim->add_option("--state", sim_o.state, "symmetric | antisymmetric | a | b");
  sim->add_option("--engine", sim_o.engine, "dde | analytic | both");
  sim->add_option("--t-max", sim_o.t_max, "end time (default 4 dt)");
  sim->add_option("--K", sim_o.K, "steps per delay");

  std::string scan_text = "0.005:3.0:0.005";
  auto* dr = app.add_subcommand("decay-rates", "collective decay rates versus omega0 dx / pi");
  dr_f.attach(dr);
  dr->add_option("--scan", scan_text, "lo:hi:step in units of pi");

  FddOpts fdd_o;
  auto* fd = app.add_subcommand("fdd", "space-time field intensity map");
  fdd_f.attach(fd);
  fd->add_option("--state", fdd_o.state, "symmetric | antisymmetric");
  fd->add_option("--t-max", fdd_o.t_max, "end time (default 40 dt)");
  fd->add_option("--x-span", fdd_o.x_span, "half-width of the x window");
  fd->add_option("--nx", fdd_o.nx, "x samples");
  fd->add_option("--nt", fdd_o.nt, "t samples");
  fd->add_option("--source", fdd_o.source, "auto | series | trajectory");
  fd->add_option("--K", fdd_o.K, "steps per delay for the trajectory source");

  auto* bi = app.add_subcommand("bic", "bound state in the continuum report");
  bic_f.attach(bi);

  DetectOpts det_o;
  auto* de = app.add_subcommand("detect", "output field at a detector, optional frequency switch");
  det_f.attach(de);
  de->add_option("--state", det_o.state, "symmetric | antisymmetric | a | b");
  de->add_option("--t-max", det_o.t_max, "end time");
  de->add_option("--x0", det_o.x0, "detector distance beyond the last leg");
  de->add_option("--switch-time", det_o.switch_time, "time of the frequency switch");
  de->add_option("--switch-phi", det_o.switch_phi, "propagation phase after the switch");
  de->add_option("--sample", det_o.dt_out, "detector sampling interval");
  de->add_option("--K", det_o.K, "steps per delay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*sim) return cmd_simulate(sim_f, sim_o, out);
    if (*dr) return cmd_decay_rates(dr_f, scan_text, out);
    if (*fd) return cmd_fdd(fdd_f, fdd_o, out);
    if (*bi) return cmd_bic(bic_f, out);
    if (*de) return cmd_detect(det_f, det_o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace giantqed::cli

#include "giantqed/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace giantqed {

cplx SeriesSource::amplitude(int atom, double t) const {
  if (t < 0) return 0;
  return evaluate_atom(sol_, atom, t);
}

cplx TrajectorySource::amplitude(int atom, double t) const {
  if (t < 0) return 0;
  return traj_.amplitude(atom, t);
}

double TrajectorySource::horizon() const {
  // the last sample itself is a valid query point
  return std::nextafter(traj_.t_end(), std::numeric_limits<double>::infinity());
}

namespace {

void check_horizon(const AmplitudeSource& source, double t_needed) {
  if (!(t_needed < source.horizon()))
    throw std::out_of_range("amplitude source horizon shorter than the requested times");
}

}  // namespace

double fdd_point(const AmplitudeSource& source, const SystemConfig& cfg, Parity parity, double x,
                 double t) {
  const double sign = sign_of(parity);
  cplx sum = 0;
  for (int j = 0; j < cfg.total_legs(); ++j) {
    const double xj = cfg.leg_position(j);
    const double ret = t - std::abs(x - xj) / cfg.vg;
    if (!(ret > 0)) continue;
    // right movers for x > xj, left movers for x < xj
    const double s = cfg.atom_of_leg(j) == 0 ? 1.0 : sign;
    sum += s * source.amplitude(0, ret) * std::polar(1.0, -source.phase(ret));
  }
  return cfg.gamma * std::numbers::pi / (cfg.vg * cfg.vg) * std::norm(sum);
}

FieldGrid fdd(const AmplitudeSource& source, const SystemConfig& cfg, Parity parity,
              const std::vector<double>& x_grid, const std::vector<double>& t_grid) {
  double t_max = 0;
  for (double t : t_grid) t_max = std::max(t_max, t);
  check_horizon(source, t_max);
  FieldGrid g;
  g.x = x_grid;
  g.t = t_grid;
  g.parity = parity;
  g.intensity.resize(x_grid.size() * t_grid.size());
  for (std::size_t it = 0; it < t_grid.size(); ++it)
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix)
      g.intensity[it * x_grid.size() + ix] = fdd_point(source, cfg, parity, x_grid[ix], t_grid[it]);
  return g;
}

DetectorRecord detector_signal(const AmplitudeSource& source, const SystemConfig& cfg, double x0,
                               const std::vector<double>& t_bar) {
  if (!(x0 > 0)) throw std::invalid_argument("detector offset must be positive");
  double t_max = 0;
  for (double t : t_bar) t_max = std::max(t_max, t);
  check_horizon(source, t_max);
  DetectorRecord rec;
  rec.x0 = x0;
  rec.vg = cfg.vg;
  rec.t_bar = t_bar;
  const int last = cfg.total_legs() - 1;
  const cplx pref(0, -1.0 / std::sqrt(2 * cfg.gamma * cfg.vg));
  for (double tb : t_bar) {
    cplx sum = 0;
    if (tb >= 0) {
      const double ph_now = source.phase(tb);
      for (int j = 0; j <= last; ++j) {
        const int n = last - j;
        const double back = tb - n * cfg.delta_t;
        if (back < 0) continue;
        const int atom = cfg.atom_of_leg(j);
        sum += cfg.gamma * std::polar(1.0, ph_now - source.phase(back)) *
               source.amplitude(atom, back);
      }
    }
    rec.amplitude.push_back(pref * sum);
    rec.intensity.push_back(std::norm(pref * sum));
  }
  return rec;
}

double released_energy(const DetectorRecord& record, double t_lo, double t_hi) {
  double acc = 0;
  for (std::size_t i = 0; i + 1 < record.t_bar.size(); ++i) {
    const double a = record.t_bar[i], b = record.t_bar[i + 1];
    if (a < t_lo || b > t_hi) continue;
    acc += 0.5 * (b - a) * (record.intensity[i] + record.intensity[i + 1]);
  }
  return acc * record.vg;
}

}  // namespace giantqed

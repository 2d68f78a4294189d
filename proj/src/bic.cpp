#include "giantqed/bic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "giantqed/analytic.hpp"

namespace giantqed {

std::optional<BicState> bic_state(const SystemConfig& cfg) {
  if (cfg.legs != 2) throw std::invalid_argument("bound states are constructed for two-leg atoms");
  const auto ss = steady_state(cfg, InitialState::antisymmetric());
  if (ss.classification != SteadyClass::DarkBIC) return std::nullopt;
  BicState b;
  b.config = cfg;
  b.condition = ss.condition;
  // c(infinity) of |-> is the atomic weight 2|eps|^2
  const double eps = std::sqrt(std::abs(ss.limit) / 2.0);
  b.eps1 = eps;
  b.eps2 = -eps;
  return b;
}

double overlap_with_initial(const BicState& bic, const InitialState& init) {
  return std::norm(std::conj(bic.eps1) * init.ca0 + std::conj(bic.eps2) * init.cb0);
}

double BicState::density(double k) const {
  const double d = config.spacing();
  const double k0 = config.k0();
  const double sgn = config.topology == Topology::Separate ? 1.0 : -1.0;
  const double u = k - k0;
  double ratio;  // (sin(3kd/2) +- sin(kd/2)) / (k - k0)
  if (std::abs(u * d) < 1e-3) {
    // Taylor expansion about k0, where the numerator vanishes
    const double a = 1.5 * d, b = 0.5 * d;
    const double d1 = a * std::cos(a * k0) + sgn * b * std::cos(b * k0);
    const double d2 = -a * a * std::sin(a * k0) - sgn * b * b * std::sin(b * k0);
    const double d3 = -a * a * a * std::cos(a * k0) - sgn * b * b * b * std::cos(b * k0);
    ratio = d1 + u * d2 / 2 + u * u * d3 / 6;
  } else {
    ratio = (std::sin(1.5 * k * d) + sgn * std::sin(0.5 * k * d)) / u;
  }
  const double pref = config.gamma / (2 * std::numbers::pi * config.vg) * 4 * std::norm(eps1);
  return pref * ratio * ratio;
}

BicProfile bic_field_profile(const BicState& bic, const std::vector<double>& k_grid) {
  BicProfile p;
  p.k = k_grid;
  p.density.reserve(k_grid.size());
  p.cumulative.reserve(k_grid.size());
  double acc = 0;
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
      throw std::invalid_argument("k grid must be strictly increasing");
    p.density.push_back(bic.density(k_grid[i]));
    if (i > 0) acc += 0.5 * (k_grid[i] - k_grid[i - 1]) * (p.density[i] + p.density[i - 1]);
    p.cumulative.push_back(acc);
  }
  return p;
}

double bic_field_norm(const BicState& bic, double lambda, double cells_per_unit_kd) {
  const double d = bic.config.spacing();
  if (!(d > 0)) throw std::invalid_argument("profile needs a finite leg spacing");
  if (lambda <= 0) lambda = 200.0 / d;
  // odd cell count keeps k0 at the centre of the middle cell
  long long cells = (long long)std::ceil(2 * lambda * d * cells_per_unit_kd);
  if (cells % 2 == 0) ++cells;
  const double h = 2 * lambda / cells;
  const double k0 = bic.config.k0();
  double acc = 0;
  for (long long i = 0; i < cells; ++i) acc += bic.density(k0 - lambda + (i + 0.5) * h);
  return acc * h;
}

}  // namespace giantqed

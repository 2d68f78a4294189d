#include "giantqed/model.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace giantqed {

std::string to_string(Topology t) { return t == Topology::Separate ? "separate" : "braided"; }

Topology parse_topology(const std::string& s) {
  if (s == "separate" || s == "sep") return Topology::Separate;
  if (s == "braided" || s == "bra") return Topology::Braided;
  throw std::invalid_argument("unknown topology: " + s);
}

int SystemConfig::atom_of_leg(int j) const {
  if (topology == Topology::Separate) return j < legs ? 0 : 1;
  return j % 2;
}

std::vector<int> SystemConfig::legs_of(int atom) const {
  std::vector<int> out;
  for (int j = 0; j < total_legs(); ++j)
    if (atom_of_leg(j) == atom) out.push_back(j);
  return out;
}

double SystemConfig::leg_position(int j) const {
  return (j - 0.5 * (total_legs() - 1)) * spacing();
}

std::vector<double> SystemConfig::leg_positions(int atom) const {
  std::vector<double> out;
  for (int j : legs_of(atom)) out.push_back(leg_position(j));
  return out;
}

SystemConfig build_config(Topology topology, int legs, double gamma, double delta_t,
                          double omega0, double vg) {
  if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
  if (!(vg > 0)) throw std::invalid_argument("vg must be positive");
  if (!(delta_t >= 0)) throw std::invalid_argument("delta_t must be non-negative");
  if (legs < 1) throw std::invalid_argument("legs per atom must be >= 1");
  if (!std::isfinite(omega0)) throw std::invalid_argument("omega0 must be finite");
  SystemConfig c;
  c.topology = topology;
  c.legs = legs;
  c.gamma = gamma;
  c.delta_t = delta_t;
  c.omega0 = omega0;
  c.vg = vg;
  return c;
}

InitialState InitialState::symmetric() {
  const double s = 1.0 / std::sqrt(2.0);
  return {cplx(s, 0), cplx(s, 0)};
}

InitialState InitialState::antisymmetric() {
  const double s = 1.0 / std::sqrt(2.0);
  return {cplx(s, 0), cplx(-s, 0)};
}

int InitialState::parity(double tol) const {
  if (std::abs(ca0 - cb0) <= tol) return 1;
  if (std::abs(ca0 + cb0) <= tol) return -1;
  return 0;
}

cplx InitialState::collective(int p) const { return (ca0 + double(p) * cb0) / std::sqrt(2.0); }

DelayTable delay_table_at_phase(const SystemConfig& cfg, double phi) {
  // every ordered leg pair (i in a, j) contributes gamma/2 e^{i|i-j|phi}
  DelayTable t;
  t.max_index = cfg.max_delay();
  const auto own = cfg.legs_of(0);
  std::map<int, double> self_count, cross_count;
  for (int i : own) {
    for (int j = 0; j < cfg.total_legs(); ++j) {
      const int n = std::abs(i - j);
      if (cfg.atom_of_leg(j) == 0)
        self_count[n] += 1;
      else
        cross_count[n] += 1;
    }
  }
  for (auto [n, m] : self_count) t.self_terms[n] = std::polar(0.5 * cfg.gamma * m, n * phi);
  for (auto [n, m] : cross_count) t.cross_terms[n] = std::polar(0.5 * cfg.gamma * m, n * phi);
  return t;
}

DelayTable delay_table(const SystemConfig& cfg) { return delay_table_at_phase(cfg, cfg.phi()); }

std::vector<cplx> collective_coefficients(const DelayTable& table, int parity) {
  if (parity != 1 && parity != -1) throw std::invalid_argument("parity must be +1 or -1");
  std::vector<cplx> a(table.max_index + 1, cplx(0, 0));
  for (auto [n, v] : table.self_terms) a[n] += v;
  for (auto [n, v] : table.cross_terms) a[n] += double(parity) * v;
  return a;
}

}  // namespace giantqed

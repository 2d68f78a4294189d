#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace giantqed {

using cplx = std::complex<double>;

enum class Topology { Separate, Braided };
enum class Parity { Symmetric, Antisymmetric };
inline int sign_of(Parity p) { return p == Parity::Symmetric ? 1 : -1; }

std::string to_string(Topology t);
Topology parse_topology(const std::string& s);

// Two N-legged giant atoms on a 1D waveguide with equidistant legs.
// Atom index 0 is "a", 1 is "b". Legs are numbered left to right.
struct SystemConfig {
  Topology topology = Topology::Separate;
  int legs = 2;
  double gamma = 1.0;    // decay rate per coupling point
  double delta_t = 0.0;  // travel time between neighbouring legs
  double omega0 = 0.0;
  double vg = 1.0;

  double eta() const { return gamma * delta_t; }
  double phi() const { return omega0 * delta_t; }
  double k0() const { return omega0 / vg; }
  double spacing() const { return vg * delta_t; }
  int total_legs() const { return 2 * legs; }
  int max_delay() const { return 2 * legs - 1; }

  // atom owning leg j
  int atom_of_leg(int j) const;
  // leg indices of an atom, ascending
  std::vector<int> legs_of(int atom) const;
  // leg positions centred on the origin
  double leg_position(int j) const;
  std::vector<double> leg_positions(int atom) const;
};

SystemConfig build_config(Topology topology, int legs, double gamma, double delta_t,
                          double omega0, double vg = 1.0);

struct InitialState {
  cplx ca0{1.0, 0.0};
  cplx cb0{0.0, 0.0};

  static InitialState symmetric();
  static InitialState antisymmetric();

  // +1 / -1 for (anti)symmetric superpositions, 0 otherwise
  int parity(double tol = 1e-12) const;
  // amplitude of |+> or |->, c_p = (c_a + p c_b)/sqrt(2)
  cplx collective(int p) const;
};

// n -> coefficient multiplying c(t - n dt) in the EOM of either atom.
struct DelayTable {
  std::map<int, cplx> self_terms;
  std::map<int, cplx> cross_terms;
  int max_index = 0;
};

DelayTable delay_table(const SystemConfig& cfg);
// same structure with propagation phase phi instead of omega0*dt
DelayTable delay_table_at_phase(const SystemConfig& cfg, double phi);

// A_n = self_n + p cross_n, n = 0..max_index, for the collective amplitude of parity p
std::vector<cplx> collective_coefficients(const DelayTable& table, int parity);

}  // namespace giantqed

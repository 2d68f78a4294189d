#pragma once

#include <optional>
#include <string>
#include <vector>

#include "giantqed/model.hpp"

namespace giantqed {

// Single-excitation bound state in the continuum with antisymmetric atomic part
// eps1 = -eps2 and photon profile |phi_k|^2 (both propagation directions combined).
struct BicState {
  SystemConfig config;
  cplx eps1, eps2;
  std::string condition;  // phase class of phi

  double atomic_weight() const { return std::norm(eps1) + std::norm(eps2); }
  // closed-form photon weight 1 - |eps1|^2 - |eps2|^2
  double field_weight() const { return 1.0 - atomic_weight(); }
  // |phi_k|^2 at wavenumber k, finite at k = k0
  double density(double k) const;
};

// nullopt means no bound state exists for this configuration
std::optional<BicState> bic_state(const SystemConfig& cfg);

double overlap_with_initial(const BicState& bic, const InitialState& init);

struct BicProfile {
  std::vector<double> k;
  std::vector<double> density;     // |phi_k|^2
  std::vector<double> cumulative;  // running trapezoid integral
};

BicProfile bic_field_profile(const BicState& bic, const std::vector<double>& k_grid);

// midpoint-rule photon weight over [k0 - lambda, k0 + lambda]; lambda defaults to 200/d
double bic_field_norm(const BicState& bic, double lambda = 0.0, double cells_per_unit_kd = 20.0);

}  // namespace giantqed

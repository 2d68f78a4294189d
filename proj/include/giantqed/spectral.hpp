#pragma once

#include <stdexcept>
#include <vector>

#include "giantqed/model.hpp"

namespace giantqed {

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Single-photon scattering off the two atoms at real detuning Delta_k = k - omega0
// (J0 = gamma/2 and v_g = 1 internally; k Delta_x = (omega0 + Delta_k) dt).
struct ScatteringCoefficients {
  cplx t, r;
  double detuning = 0;
  SystemConfig config;
};

ScatteringCoefficients scattering(const SystemConfig& cfg, double detuning);

// Markovian population decay rates of |+> and |->; two-leg atoms only.
struct MarkovRates {
  cplx plus, minus;
};

MarkovRates markovian_rates(const SystemConfig& cfg);

// Characteristic function of the scattering problem (denominator of t and r) and its
// derivative with respect to the complex detuning.
cplx characteristic(const SystemConfig& cfg, cplx detuning);
cplx characteristic_derivative(const SystemConfig& cfg, cplx detuning);

// Laplace denominator s + sum_n A_n e^{-s n dt} of a parity sector, at s = -i Delta.
cplx reduced_denominator(const SystemConfig& cfg, Parity p, cplx detuning);

// Detuning of the Markovian pole, Delta = -i Gamma_M / 2.
cplx markov_pole(const SystemConfig& cfg, Parity p);
// roots of the characteristic function with e^{i Delta dt} -> 1 (a quadratic in Delta)
std::vector<cplx> markov_characteristic_roots(const SystemConfig& cfg);

struct Pole {
  cplx detuning;
  cplx rate;  // Gamma = 2 i Delta
  Parity parity = Parity::Symmetric;
  double residual = 0;
};

struct DecayRateSet {
  std::vector<Pole> poles;
  // pole of the given parity closest to target (nullptr if none)
  const Pole* nearest(Parity p, cplx target) const;
};

struct PoleOptions {
  double tol = 1e-12;
  int max_iter = 200;
  double duplicate_distance = 1e-8;
  double residual_limit = 1e-10;
};

// Newton on the characteristic function from each seed (detunings); defaults to the
// Markovian poles when seeds is empty. Throws NonConvergence if no seed converges.
DecayRateSet nonmarkovian_poles(const SystemConfig& cfg, const std::vector<cplx>& seeds = {},
                                const PoleOptions& opts = {});

// Two-pole approximation: per parity, the root that continues the Markovian pole.
struct TwoPoles {
  bool has_plus = false, has_minus = false;
  Pole plus, minus;
};

TwoPoles two_pole(const SystemConfig& cfg, const DecayRateSet& set);

struct ScanPoint {
  double x = 0;  // omega0 dt / pi
  double delta_t = 0;
  bool ok_plus = false, ok_minus = false;
  cplx rate_plus_nm, rate_minus_nm;
  cplx rate_plus_m, rate_minus_m;
  double residual_plus = 0, residual_minus = 0;
};

// Sweep x = omega0*dt/pi over [x_lo, x_hi] at fixed omega0 of the template, with
// continuation seeding. Points where a parity has no converged root are flagged, not filled.
std::vector<ScanPoint> scan_decay_rates(const SystemConfig& tmpl, double x_lo, double x_hi,
                                        double step, const PoleOptions& opts = {});

}  // namespace giantqed

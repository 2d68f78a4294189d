#pragma once

#include <vector>

#include "giantqed/model.hpp"

namespace giantqed {

// Piecewise-constant transition frequency; segment i holds omega[i] on [start[i], start[i+1]).
struct DriveSchedule {
  std::vector<double> start;
  std::vector<double> omega;

  static DriveSchedule constant(double omega0);
  DriveSchedule& then(double t_switch, double omega0);

  void validate() const;
  int segment(double t) const;
  double omega_at(double t) const;
  // accumulated phase integral of omega0 from 0 to t
  double phase(double t) const;
  // adjacent segments with equal frequency merged
  DriveSchedule normalized() const;
};

// Amplitudes in the interaction picture, c_S(t) = c(t) e^{-i Phi(t)}.
struct AmplitudeTrajectory {
  SystemConfig config;
  DriveSchedule drive;
  int K = 0;
  double h = 0;      // integration step
  int stride = 1;    // integration steps per stored sample
  std::vector<double> t;
  std::vector<cplx> ca, cb;
  // one-sided derivatives: right derivative at the sample, left derivative at the sample
  std::vector<cplx> dca_right, dcb_right, dca_left, dcb_left;

  std::size_t size() const { return t.size(); }
  double t_end() const { return t.empty() ? 0.0 : t.back(); }
  double population(std::size_t i) const { return std::norm(ca[i]) + std::norm(cb[i]); }
  // cubic Hermite interpolation between samples; atom 0 = a, 1 = b
  cplx amplitude(int atom, double time) const;
};

struct IntegrateOptions {
  int output_stride = 1;
};

AmplitudeTrajectory integrate(const SystemConfig& cfg, const InitialState& init, double t_max,
                              int K, const IntegrateOptions& opts = {});

AmplitudeTrajectory integrate_with_drive(const SystemConfig& cfg, const InitialState& init,
                                         const DriveSchedule& schedule, double t_max, int K,
                                         const IntegrateOptions& opts = {});

// Photon amplitudes phi_R(omega, t), phi_L(omega, t) of right/left movers.
struct FieldSpectrum {
  double time = 0;
  double omega_ref = 0;  // omega0 of the first drive segment
  std::vector<double> omega;
  std::vector<cplx> right, left;
  // g^2 * sum over legs of (|c(0)|^2 + |c(t)|^2): large-detuning tail weight
  double tail_weight = 0;

  // sum over chiralities of the integral of |phi|^2 over the grid plus the analytic tail
  double norm(bool tail_correction = true) const;
};

// uniform grid centred on omega0 with half-width lambda, fine enough to resolve
// the spectral structure at time t
std::vector<double> omega_grid(const SystemConfig& cfg, double t, double lambda = 0.0,
                               double oversample = 2.0);

FieldSpectrum field_amplitudes(const AmplitudeTrajectory& traj, const std::vector<double>& omega,
                               double t);

}  // namespace giantqed

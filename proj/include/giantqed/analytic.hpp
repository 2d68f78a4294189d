#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "giantqed/model.hpp"

namespace giantqed {

struct OutOfHorizon : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Collective amplitude c_p(t) = sum_l Theta(t - l dt) e^{-A0 (t - l dt)} P_l(t - l dt)
// for a (anti)symmetric initial state, in the interaction picture.
struct ExpPolySolution {
  SystemConfig config;
  InitialState initial;
  int parity = 1;
  cplx c0;                                 // collective amplitude at t = 0
  cplx base_rate;                          // A0, absorbed into the exponential
  std::vector<std::vector<cplx>> branches; // P_l as coefficients of tau^j

  int max_branch() const { return int(branches.size()) - 1; }
  // first time at which the truncated series is no longer exact
  double horizon() const;
};

ExpPolySolution exact_solution(const SystemConfig& cfg, const InitialState& init, int L_max);

// collective amplitude; throws OutOfHorizon beyond the truncation horizon
cplx evaluate(const ExpPolySolution& sol, double t);
// single-atom amplitude c_a (atom 0) or c_b (atom 1)
cplx evaluate_atom(const ExpPolySolution& sol, int atom, double t);

enum class SteadyClass { Radiant, DarkBIC };

struct SteadyStateReport {
  cplx limit;  // collective amplitude as t -> infinity
  SteadyClass classification = SteadyClass::Radiant;
  std::string condition;  // which phase class phi falls into
  double population() const { return std::norm(limit); }
};

SteadyStateReport steady_state(const SystemConfig& cfg, const InitialState& init);

// "2n*pi", "(2n+1)*pi" or "generic"
std::string phase_class(double phi, double tol = 1e-9);

// Markovian collective population decay rate including the first-order retardation
// correction, 2 sum A_n / (1 - dt sum n A_n); valid for (2N-1) eta << 1.
cplx markovian_effective_rate(const SystemConfig& cfg, const InitialState& init);
cplx markovian_effective_rate(const SystemConfig& cfg, int parity);

}  // namespace giantqed

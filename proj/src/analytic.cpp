#include "giantqed/analytic.hpp"

#include <cmath>
#include <numbers>

namespace giantqed {

namespace {

int require_parity(const InitialState& init) {
  const int p = init.parity();
  if (p == 0)
    throw std::invalid_argument("exact series requires a symmetric or antisymmetric initial state");
  return p;
}

// integral from 0 to tau of a polynomial in tau
std::vector<cplx> integrate_poly(const std::vector<cplx>& p) {
  std::vector<cplx> out(p.size() + 1, cplx(0, 0));
  for (std::size_t j = 0; j < p.size(); ++j) out[j + 1] = p[j] / double(j + 1);
  return out;
}

cplx horner(const std::vector<cplx>& p, double x) {
  cplx acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double ExpPolySolution::horizon() const {
  if (config.delta_t == 0) return std::numeric_limits<double>::infinity();
  return (max_branch() + 1) * config.delta_t;
}

ExpPolySolution exact_solution(const SystemConfig& cfg, const InitialState& init, int L_max) {
  if (L_max < 0) throw std::invalid_argument("L_max must be non-negative");
  ExpPolySolution sol;
  sol.config = cfg;
  sol.initial = init;
  sol.parity = require_parity(init);
  sol.c0 = init.collective(sol.parity);
  const auto A = collective_coefficients(delay_table(cfg), sol.parity);

  if (cfg.delta_t == 0) {
    // all delays collapse onto the instantaneous term
    cplx total = 0;
    for (auto v : A) total += v;
    sol.base_rate = total;
    sol.branches = {{sol.c0}};
    return sol;
  }

  sol.base_rate = A[0];
  sol.branches.assign(L_max + 1, {});
  sol.branches[0] = {sol.c0};
  for (int l = 1; l <= L_max; ++l) {
    std::vector<cplx> acc(1, cplx(0, 0));
    for (int n = 1; n < int(A.size()) && n <= l; ++n) {
      if (A[n] == cplx(0, 0)) continue;
      const auto& prev = sol.branches[l - n];
      if (prev.size() > acc.size()) acc.resize(prev.size(), cplx(0, 0));
      for (std::size_t j = 0; j < prev.size(); ++j) acc[j] -= A[n] * prev[j];
    }
    auto p = integrate_poly(acc);
    while (p.size() > 1 && p.back() == cplx(0, 0)) p.pop_back();
    sol.branches[l] = std::move(p);
  }
  return sol;
}

cplx evaluate(const ExpPolySolution& sol, double t) {
  if (t < 0) return 0;
  if (t >= sol.horizon()) throw OutOfHorizon("time beyond the truncated series horizon");
  const double dt = sol.config.delta_t;
  if (dt == 0) return std::exp(-sol.base_rate * t) * sol.c0;
  const int last = std::min(sol.max_branch(), int(std::floor(t / dt)));
  cplx acc = 0;
  for (int l = 0; l <= last; ++l) {
    const double tau = t - l * dt;
    if (tau < 0) continue;
    acc += std::exp(-sol.base_rate * tau) * horner(sol.branches[l], tau);
  }
  return acc;
}

cplx evaluate_atom(const ExpPolySolution& sol, int atom, double t) {
  const cplx c = evaluate(sol, t) / std::sqrt(2.0);
  return atom == 0 ? c : double(sol.parity) * c;
}

std::string phase_class(double phi, double tol) {
  const double x = phi / std::numbers::pi;
  const double r = std::round(x);
  if (std::abs(x - r) > tol) return "generic";
  return std::fmod(std::abs(r), 2.0) == 0 ? "2n*pi" : "(2n+1)*pi";
}

SteadyStateReport steady_state(const SystemConfig& cfg, const InitialState& init) {
  const int p = require_parity(init);
  const auto A = collective_coefficients(delay_table(cfg), p);
  cplx d0 = 0, d1 = 0;
  for (std::size_t n = 0; n < A.size(); ++n) {
    d0 += A[n];
    d1 += double(n) * A[n];
  }
  SteadyStateReport rep;
  rep.condition = phase_class(cfg.phi());
  const double scale = cfg.gamma * cfg.legs * cfg.legs;
  // final value theorem: s c(s) at s -> 0 is c0 / D'(0) when D(0) = 0, else 0
  if (std::abs(d0) <= 1e-9 * scale) {
    rep.classification = SteadyClass::DarkBIC;
    rep.limit = init.collective(p) / (1.0 - cfg.delta_t * d1);
  } else {
    rep.classification = SteadyClass::Radiant;
    rep.limit = 0;
  }
  return rep;
}

cplx markovian_effective_rate(const SystemConfig& cfg, int parity) {
  const auto A = collective_coefficients(delay_table(cfg), parity);
  cplx d0 = 0, d1 = 0;
  for (std::size_t n = 0; n < A.size(); ++n) {
    d0 += A[n];
    d1 += double(n) * A[n];
  }
  return 2.0 * d0 / (1.0 - cfg.delta_t * d1);
}

cplx markovian_effective_rate(const SystemConfig& cfg, const InitialState& init) {
  return markovian_effective_rate(cfg, require_parity(init));
}

}  // namespace giantqed

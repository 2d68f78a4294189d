#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "giantqed/field.hpp"

using namespace giantqed;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

SystemConfig at_phase(Topology top, double eta, double phi) {
  return build_config(top, 2, 1.0, eta, phi / eta);
}

Parity parity_of(const InitialState& s) {
  return s.parity() > 0 ? Parity::Symmetric : Parity::Antisymmetric;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

// F(delta) = integral over [0, t] of c_a(tau) e^{i delta tau}, in closed form from the
// exponential-polynomial branches.
cplx series_transform(const ExpPolySolution& s, double t, double delta) {
  const double dt = s.config.delta_t;
  const cplx beta = I * delta - s.base_rate;
  cplx acc = 0;
  for (int l = 0; l <= s.max_branch() && l * dt < t; ++l) {
    const double T = t - l * dt;
    const cplx eb = std::exp(beta * T);
    cplx Ik = (eb - 1.0) / beta;
    cplx sum = s.branches[l][0] * Ik;
    double Tk = 1;
    for (std::size_t k = 1; k < s.branches[l].size(); ++k) {
      Tk *= T;
      Ik = (Tk * eb - double(k) * Ik) / beta;
      sum += s.branches[l][k] * Ik;
    }
    acc += std::polar(1.0, delta * l * dt) * sum;
  }
  return acc / std::sqrt(2.0);
}

// Field at (x, t) as the frequency integral of the emitted photon amplitudes of every leg,
// both propagation directions, E = (1/2pi) sum_j s_j sum_pm int d(delta) F(delta)
// e^{i(omega0 + delta)(pm(x - x_j) - t)}. The slowly decaying part
// S = [c(t) e^{i delta t} - c(0)] / (i delta - 1) is integrated analytically, the O(delta^-2)
// remainder by trapezoid on [-lambda, lambda].
double omega_integral_intensity(const ExpPolySolution& sol, double x, double t, double lambda,
                                double h) {
  const auto& cfg = sol.config;
  const double sgn = sol.parity;
  const cplx ct = evaluate_atom(sol, 0, t), c0 = evaluate_atom(sol, 0, 0);
  std::vector<double> a;
  std::vector<cplx> weight;
  for (int j = 0; j < cfg.total_legs(); ++j) {
    const double s = cfg.atom_of_leg(j) == 0 ? 1.0 : sgn;
    const double u = x - cfg.leg_position(j);
    for (double pm : {1.0, -1.0}) {
      a.push_back(pm * u - t);
      weight.push_back(s * std::polar(1.0, cfg.omega0 * (pm * u - t)));
    }
  }
  cplx E = 0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double am = a[m];
    const cplx analytic = ct * (-2 * pi * (t + am < 0 ? std::exp(t + am) : 0.0)) -
                          c0 * (-2 * pi * (am < 0 ? std::exp(am) : 0.0));
    E += weight[m] * analytic;
  }
  const long n = long(lambda / h);
  for (long i = -n; i <= n; ++i) {
    const double dl = i * h;
    const cplx rem =
        series_transform(sol, t, dl) - (ct * std::polar(1.0, dl * t) - c0) / (I * dl - 1.0);
    cplx k = 0;
    for (std::size_t m = 0; m < a.size(); ++m) k += weight[m] * std::polar(1.0, dl * a[m]);
    E += (i == -n || i == n ? 0.5 : 1.0) * h * rem * k;
  }
  E /= 2 * pi;
  return cfg.gamma * pi / (cfg.vg * cfg.vg) * std::norm(E);
}

double spatial_integral(const AmplitudeSource& src, const SystemConfig& cfg, Parity p, double t) {
  const double xo = 1.5 * cfg.spacing() + cfg.vg * t + 0.01;
  const int n = 200000;
  const double h = 2 * xo / n;
  double acc = 0;
  for (int i = 0; i <= n; ++i)
    acc += (i == 0 || i == n ? 0.5 : 1.0) * fdd_point(src, cfg, p, -xo + i * h, t);
  return acc * h;
}

}  // namespace

TEST_CASE("vacuum at t = 0 and causality outside the light cone") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    for (auto init : {InitialState::symmetric(), InitialState::antisymmetric()}) {
      auto cfg = at_phase(top, 0.2, 2 * pi);
      SeriesSource src(exact_solution(cfg, init, 12));
      auto x = linspace(-3, 3, 301);
      auto t = linspace(0, 2.0, 41);
      auto g = fdd(src, cfg, parity_of(init), x, t);
      const double outer = 1.5 * cfg.spacing();
      for (std::size_t it = 0; it < t.size(); ++it) {
        for (std::size_t ix = 0; ix < x.size(); ++ix) {
          const double I = g.at(it, ix);
          CHECK(I >= 0);
          if (it == 0) CHECK(I <= 1e-12);
          if (std::abs(x[ix]) > outer + cfg.vg * t[it]) CHECK(I <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("intensity is mirror symmetric") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    for (auto init : {InitialState::symmetric(), InitialState::antisymmetric()}) {
      auto cfg = at_phase(top, 0.2, 1.3 * pi);
      SeriesSource src(exact_solution(cfg, init, 20));
      for (double t : {0.13, 0.5, 1.7, 3.3})
        for (double x : {0.01, 0.07, 0.2, 0.33, 1.0, 2.9}) {
          const double r = fdd_point(src, cfg, parity_of(init), x, t);
          const double l = fdd_point(src, cfg, parity_of(init), -x, t);
          CHECK(std::abs(r - l) <= 1e-12 * (1 + r));
        }
    }
  }
}

TEST_CASE("delta reduction matches the frequency-integral form") {
  auto cfg = at_phase(Topology::Separate, 0.15, 2 * pi);
  auto sol = exact_solution(cfg, InitialState::symmetric(), 4);
  SeriesSource src(sol);
  const double d = cfg.spacing();
  struct Point {
    double x, t;
  };
  for (auto [x, t] : {Point{2 * d, 1.7 * cfg.delta_t}, Point{0.2 * d, 2.4 * cfg.delta_t},
                      Point{-1.1 * d, 0.9 * cfg.delta_t}}) {
    const double direct = fdd_point(src, cfg, Parity::Symmetric, x, t);
    const double oracle = omega_integral_intensity(sol, x, t, 1e4, 0.05);
    REQUIRE(direct > 0);
    CHECK(std::abs(oracle - direct) < 1e-4 * direct);
  }
}

TEST_CASE("series and trajectory sources give the same map") {
  auto cfg = at_phase(Topology::Braided, 0.2, 2 * pi);
  auto init = InitialState::antisymmetric();
  SeriesSource series(exact_solution(cfg, init, 20));
  TrajectorySource traj(integrate(cfg, init, 3.0, 200));
  for (double t : {0.25, 1.1, 2.9})
    for (double x : {-0.5, -0.1, 0.05, 0.27, 1.3}) {
      const double a = fdd_point(series, cfg, Parity::Antisymmetric, x, t);
      const double b = fdd_point(traj, cfg, Parity::Antisymmetric, x, t);
      CHECK(std::abs(a - b) < 1e-6 * (1 + a));
    }
}

TEST_CASE("horizon and argument checks") {
  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  SeriesSource src(exact_solution(cfg, InitialState::symmetric(), 4));
  const std::vector<double> x{0.0};
  CHECK_NOTHROW(fdd(src, cfg, Parity::Symmetric, x, {0.0, 0.99}));
  CHECK_THROWS_AS(fdd(src, cfg, Parity::Symmetric, x, {0.0, 1.0}), std::out_of_range);
  CHECK_THROWS_AS(detector_signal(src, cfg, 1.0, {0.0, 1.0}), std::out_of_range);
  CHECK_THROWS_AS(detector_signal(src, cfg, 0.0, {0.1}), std::invalid_argument);
  TrajectorySource traj(integrate(cfg, InitialState::symmetric(), 2.0, 50));
  CHECK_NOTHROW(fdd(traj, cfg, Parity::Symmetric, x, {2.0}));
  CHECK_THROWS_AS(fdd(traj, cfg, Parity::Symmetric, x, {2.01}), std::out_of_range);
}

TEST_CASE("wavefronts leave the coupling points at the start only") {
  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  SeriesSource src(exact_solution(cfg, InitialState::symmetric(), 10));
  const double t = 0.55, h = 1e-5;
  auto x = linspace(-1.0, 1.0, 200001);
  std::vector<double> I;
  for (double xi : x) I.push_back(fdd_point(src, cfg, Parity::Symmetric, xi, t));
  std::vector<double> fronts;
  for (int j = 0; j < cfg.total_legs(); ++j)
    for (double s : {-1.0, 1.0}) fronts.push_back(cfg.leg_position(j) + s * cfg.vg * t);
  int jumps = 0;
  for (std::size_t i = 2; i + 1 < x.size(); ++i) {
    const double step = std::abs(I[i] - I[i - 1]);
    const double local = std::abs(I[i - 1] - I[i - 2]) + std::abs(I[i + 1] - I[i]);
    if (step > 1e-3 && step > 50 * local) {
      ++jumps;
      double best = 1e9;
      for (double f : fronts) best = std::min(best, std::abs(x[i] - f));
      CHECK(best < 2 * h);
    }
  }
  CHECK(jumps >= 4);
}

TEST_CASE("late-time field of the dark configurations stays between the legs") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    auto cfg = at_phase(top, 0.2, 2 * pi);
    const double t = 40 * cfg.delta_t;
    TrajectorySource src(integrate(cfg, InitialState::antisymmetric(), t, 100));
    const double d = cfg.spacing(), outer = 1.5 * d;
    double interior = 0, exterior = 0, initial = 0;
    for (double x : linspace(-outer - 10 * d, outer + 10 * d, 2001)) {
      const double I = fdd_point(src, cfg, Parity::Antisymmetric, x, t);
      if (std::abs(x) < outer)
        interior = std::max(interior, I);
      else
        exterior = std::max(exterior, I);
      initial = std::max(initial, fdd_point(src, cfg, Parity::Antisymmetric, x, 0.5 * d));
    }
    CHECK(exterior < 1e-6 * interior);
    CHECK(exterior / interior < 1e-4);
    CHECK(interior > 1e-2 * initial);
  }
}

TEST_CASE("symmetric state empties the inter-leg region into outgoing bursts") {
  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  const double t = 40 * cfg.delta_t;
  TrajectorySource src(integrate(cfg, InitialState::symmetric(), t, 100));
  const double outer = 1.5 * cfg.spacing();
  double interior = 0, burst = 0, initial = 0;
  for (double x : linspace(-outer - t, outer + t, 8001)) {
    const double I = fdd_point(src, cfg, Parity::Symmetric, x, t);
    if (std::abs(x) < outer)
      interior = std::max(interior, I);
    else
      burst = std::max(burst, I);
    initial = std::max(initial, fdd_point(src, cfg, Parity::Symmetric, x, 0.5 * cfg.spacing()));
  }
  CHECK(interior < 1e-6 * initial);
  CHECK(burst > 1e-2 * initial);
}

TEST_CASE("spatial integral of the intensity tracks the emitted probability") {
  for (auto init : {InitialState::symmetric(), InitialState::antisymmetric()}) {
    for (auto top : {Topology::Separate, Topology::Braided}) {
      auto cfg = at_phase(top, 0.2, 2 * pi);
      auto tr = integrate(cfg, init, 8.0, 100);
      TrajectorySource src(tr);
      for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double emitted =
            1 - std::norm(tr.amplitude(0, t)) - std::norm(tr.amplitude(1, t));
        const double integral = spatial_integral(src, cfg, parity_of(init), t) /
                                (2 * pi * cfg.gamma / cfg.vg);
        CHECK(std::abs(integral - emitted) < 0.02 * emitted);
      }
    }
  }
}

TEST_CASE("detector signal") {
  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  auto init = InitialState::antisymmetric();
  TrajectorySource src(integrate(cfg, init, 60.0, 100));
  auto tb = linspace(-1.0, 60.0, 6101);
  auto rec = detector_signal(src, cfg, 1.0, tb);
  REQUIRE(rec.intensity.size() == tb.size());
  double late = 0, early = 0;
  for (std::size_t i = 0; i < tb.size(); ++i) {
    if (tb[i] < 0) CHECK(rec.amplitude[i] == cplx(0, 0));
    CHECK(rec.intensity[i] == doctest::Approx(std::norm(rec.amplitude[i])));
    if (tb[i] > 30) late = std::max(late, rec.intensity[i]);
    if (tb[i] >= 0 && tb[i] < 1) early = std::max(early, rec.intensity[i]);
  }
  CHECK(late < 1e-6);
  CHECK(early > 1e-2);
  // both directions together carry away everything not held by the bound state
  const double released = released_energy(rec, 0, 60);
  CHECK(2 * released == doctest::Approx(1 - 0.625).epsilon(1e-3));
}

TEST_CASE("radiant state releases its full excitation") {
  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  TrajectorySource src(integrate(cfg, InitialState::symmetric(), 20.0, 100));
  auto rec = detector_signal(src, cfg, 2.0, linspace(0, 20, 20001));
  CHECK(2 * released_energy(rec, 0, 20) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("switching the frequency releases the trapped photon") {
  const double eta = 0.2, ts = 20;
  auto cfg = at_phase(Topology::Separate, eta, 2 * pi);
  auto drive = DriveSchedule::constant(cfg.omega0).then(ts, (2 * pi + pi / 2) / eta);
  auto traj = integrate_with_drive(cfg, InitialState::antisymmetric(), drive, 60.0, 100);
  const double trapped = std::norm(traj.amplitude(0, ts)) + std::norm(traj.amplitude(1, ts));
  CHECK(trapped == doctest::Approx(0.390625).epsilon(1e-3));
  TrajectorySource src(std::move(traj));
  auto tb = linspace(0, 59.99, 6000);
  auto rec = detector_signal(src, cfg, 1.0, tb);
  double pre = 0, post = 0;
  for (std::size_t i = 0; i < tb.size(); ++i) {
    if (tb[i] >= 10 && tb[i] < ts) pre = std::max(pre, rec.intensity[i]);
    if (tb[i] > ts) post = std::max(post, rec.intensity[i]);
  }
  CHECK(pre < 1e-6);
  CHECK(post > 1e-3);
  // atoms plus the photon stored between the legs, 1/(1 + 3 eta)
  const double after = 2 * released_energy(rec, ts, 60);
  CHECK(after == doctest::Approx(1 / (1 + 3 * eta)).epsilon(0.05));
  CHECK(2 * released_energy(rec, 0, ts) == doctest::Approx(3 * eta / (1 + 3 * eta)).epsilon(0.01));
}

TEST_CASE("released energy bookkeeping") {
  DetectorRecord zero;
  zero.t_bar = linspace(0, 10, 101);
  zero.amplitude.assign(101, 0.0);
  zero.intensity.assign(101, 0.0);
  CHECK(released_energy(zero, 0, 10) == 0.0);

  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  TrajectorySource src(integrate(cfg, InitialState::symmetric(), 40.0, 100));
  auto rec = detector_signal(src, cfg, 1.0, linspace(0, 40, 4001));
  const double e20 = released_energy(rec, 0, 20);
  const double e40 = released_energy(rec, 0, 40);
  CHECK(std::abs(e40 - e20) < 1e-9);
  CHECK(released_energy(rec, 0, 80) == e40);
  CHECK(released_energy(rec, 0, 1) + released_energy(rec, 1, 40) == doctest::Approx(e40));
}

#include "giantqed/dde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace giantqed {

DriveSchedule DriveSchedule::constant(double omega0) { return DriveSchedule{{0.0}, {omega0}}; }

DriveSchedule& DriveSchedule::then(double t_switch, double omega0) {
  start.push_back(t_switch);
  omega.push_back(omega0);
  validate();
  return *this;
}

void DriveSchedule::validate() const {
  if (start.empty() || start.size() != omega.size())
    throw std::invalid_argument("drive schedule needs matching, non-empty segment lists");
  if (start.front() != 0.0) throw std::invalid_argument("drive schedule must start at t=0");
  for (std::size_t i = 1; i < start.size(); ++i)
    if (!(start[i] > start[i - 1]))
      throw std::invalid_argument("drive switch times must be strictly increasing");
  for (double w : omega)
    if (!std::isfinite(w)) throw std::invalid_argument("drive frequency must be finite");
}

int DriveSchedule::segment(double t) const {
  auto it = std::upper_bound(start.begin(), start.end(), t);
  return std::max(0, int(it - start.begin()) - 1);
}

double DriveSchedule::omega_at(double t) const { return omega[segment(t)]; }

double DriveSchedule::phase(double t) const {
  double acc = 0;
  const int s = segment(t);
  for (int i = 0; i < s; ++i) acc += omega[i] * (start[i + 1] - start[i]);
  return acc + omega[s] * (t - start[s]);
}

DriveSchedule DriveSchedule::normalized() const {
  validate();
  DriveSchedule out{{start[0]}, {omega[0]}};
  for (std::size_t i = 1; i < start.size(); ++i) {
    if (omega[i] == out.omega.back()) continue;
    out.start.push_back(start[i]);
    out.omega.push_back(omega[i]);
  }
  return out;
}

cplx AmplitudeTrajectory::amplitude(int atom, double time) const {
  if (t.empty()) throw std::out_of_range("empty trajectory");
  const double tol = 1e-12 * std::max(1.0, t.back());
  if (time < -tol || time > t.back() + tol) throw std::out_of_range("time outside trajectory");
  const auto& y = atom == 0 ? ca : cb;
  const auto& dr = atom == 0 ? dca_right : dcb_right;
  const auto& dl = atom == 0 ? dca_left : dcb_left;
  if (t.size() == 1) return y[0];
  std::size_t i = std::upper_bound(t.begin(), t.end(), time) - t.begin();
  i = std::clamp<std::size_t>(i, 1, t.size() - 1) - 1;
  const double H = t[i + 1] - t[i];
  const double s = std::clamp((time - t[i]) / H, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * H * dr[i] +
         (-2 * s3 + 3 * s2) * y[i + 1] + (s3 - s2) * H * dl[i + 1];
}

namespace {

struct Coeffs {
  std::vector<cplx> self, cross;  // index n = 0..max delay
};

Coeffs coeffs_from(const DelayTable& tab) {
  Coeffs c{std::vector<cplx>(tab.max_index + 1), std::vector<cplx>(tab.max_index + 1)};
  for (auto [n, v] : tab.self_terms) c.self[n] = v;
  for (auto [n, v] : tab.cross_terms) c.cross[n] = v;
  return c;
}

// coefficients seen at time tau; windows that straddle a switch use the accumulated phase
class CoefficientModel {
 public:
  CoefficientModel(const SystemConfig& cfg, const DriveSchedule& drive)
      : cfg_(cfg), drive_(drive), dt_(cfg.delta_t) {
    for (double w : drive.omega) {
      SystemConfig c = cfg;
      c.omega0 = w;
      per_segment_.push_back(coeffs_from(delay_table(c)));
    }
    magnitude_ = coeffs_from(delay_table_at_phase(cfg, 0.0));
  }

  bool constant() const { return per_segment_.size() == 1; }

  void at(double tau, Coeffs& out) const {
    const int s = drive_.segment(tau);
    const Coeffs& base = per_segment_[s];
    if (constant()) {
      out = base;
      return;
    }
    out = base;
    const double phase_now = drive_.phase(tau);
    for (std::size_t n = 1; n < base.self.size(); ++n) {
      const double back = tau - n * dt_;
      if (back < 0 || drive_.segment(back) == s) continue;
      const double dphi = phase_now - drive_.phase(back);
      out.self[n] = std::polar(std::abs(magnitude_.self[n]), dphi);
      out.cross[n] = std::polar(std::abs(magnitude_.cross[n]), dphi);
    }
  }

 private:
  SystemConfig cfg_;
  DriveSchedule drive_;
  double dt_;
  std::vector<Coeffs> per_segment_;
  Coeffs magnitude_;
};

AmplitudeTrajectory run(const SystemConfig& cfg_in, const InitialState& init,
                        const DriveSchedule& schedule, double t_max, int K,
                        const IntegrateOptions& opts) {
  if (K < 1) throw std::invalid_argument("K must be a positive number of steps per delay");
  if (!(t_max >= 0)) throw std::invalid_argument("t_max must be non-negative");
  if (opts.output_stride < 1) throw std::invalid_argument("output stride must be >= 1");
  const SystemConfig& cfg = cfg_in;
  const DriveSchedule drive = schedule.normalized();
  const bool delayed = cfg.delta_t > 0;
  const double h = delayed ? cfg.delta_t / K : 1.0 / (K * cfg.gamma);
  if (!(h > 0)) throw std::invalid_argument("step size must be positive");

  const int max_n = cfg.max_delay();
  CoefficientModel model(cfg, drive);

  // zero delay: every term is instantaneous
  auto collapse = [&](Coeffs& c) {
    if (delayed) return;
    for (int n = 1; n <= max_n; ++n) {
      c.self[0] += c.self[n];
      c.cross[0] += c.cross[n];
      c.self[n] = c.cross[n] = 0;
    }
  };

  const long long steps = t_max > 0 ? (long long)std::ceil(t_max / h - 1e-9) : 0;
  const long long lag_unit = delayed ? K : 0;
  const std::size_t ring = delayed ? std::size_t(max_n) * K + 2 : 2;

  std::vector<cplx> ya(ring), yb(ring), dra(ring), drb(ring), dla(ring), dlb(ring);
  auto slot = [&](long long j) { return std::size_t(j % (long long)ring); };

  AmplitudeTrajectory out;
  out.config = cfg;
  out.drive = drive;
  out.K = K;
  out.h = h;
  out.stride = opts.output_stride;
  const std::size_t expected = std::size_t(steps / opts.output_stride) + 2;
  for (auto* v : {&out.ca, &out.cb, &out.dca_right, &out.dcb_right, &out.dca_left, &out.dcb_left})
    v->reserve(expected);
  out.t.reserve(expected);

  cplx a = init.ca0, b = init.cb0;
  ya[0] = a;
  yb[0] = b;

  Coeffs c0, c1, c2;
  model.at(0.0, c0);
  collapse(c0);
  const bool constant = model.constant();
  if (constant) c1 = c2 = c0;

  auto hermite_mid = [&](std::size_t i0, std::size_t i1, const std::vector<cplx>& y,
                         const std::vector<cplx>& dr, const std::vector<cplx>& dl) {
    return 0.5 * (y[i0] + y[i1]) + (h / 8.0) * (dr[i0] - dl[i1]);
  };

  // initial left derivative is undefined; use the right one
  cplx dl_a_prev, dl_b_prev;

  for (long long j = 0; j <= steps; ++j) {
    const double tj = j * h;
    if (j == steps) {
      // final sample: only the left derivative exists
      if (j == 0) {
        cplx fa = -(c0.self[0] * a), fb = -(c0.self[0] * b);
        dl_a_prev = fa;
        dl_b_prev = fb;
      }
      out.t.push_back(tj);
      out.ca.push_back(a);
      out.cb.push_back(b);
      out.dca_right.push_back(dl_a_prev);
      out.dcb_right.push_back(dl_b_prev);
      out.dca_left.push_back(dl_a_prev);
      out.dcb_left.push_back(dl_b_prev);
      break;
    }
    if (!constant) {
      model.at(tj, c0);
      model.at(tj + 0.5 * h, c1);
      model.at(tj + h, c2);
      collapse(c0);
      collapse(c1);
      collapse(c2);
    }

    // history sums at the start, middle and end of the step
    cplx ha0 = 0, hb0 = 0, ha1 = 0, hb1 = 0, ha2 = 0, hb2 = 0;
    if (delayed) {
      for (int n = 1; n <= max_n; ++n) {
        const long long off = j - n * lag_unit;
        if (off < 0) break;
        const std::size_t i0 = slot(off), i1 = slot(off + 1);
        const cplx a0 = ya[i0], b0 = yb[i0], a2 = ya[i1], b2 = yb[i1];
        const cplx a1 = hermite_mid(i0, i1, ya, dra, dla);
        const cplx b1 = hermite_mid(i0, i1, yb, drb, dlb);
        ha0 += c0.self[n] * a0 + c0.cross[n] * b0;
        hb0 += c0.self[n] * b0 + c0.cross[n] * a0;
        ha1 += c1.self[n] * a1 + c1.cross[n] * b1;
        hb1 += c1.self[n] * b1 + c1.cross[n] * a1;
        ha2 += c2.self[n] * a2 + c2.cross[n] * b2;
        hb2 += c2.self[n] * b2 + c2.cross[n] * a2;
      }
    }
    const cplx s0 = c0.self[0], s1 = c1.self[0], s2 = c2.self[0];
    const cplx x0 = c0.cross[0], x1 = c1.cross[0], x2 = c2.cross[0];

    const cplx k1a = -(s0 * a + x0 * b + ha0), k1b = -(s0 * b + x0 * a + hb0);
    cplx ta = a + 0.5 * h * k1a, tb = b + 0.5 * h * k1b;
    const cplx k2a = -(s1 * ta + x1 * tb + ha1), k2b = -(s1 * tb + x1 * ta + hb1);
    ta = a + 0.5 * h * k2a;
    tb = b + 0.5 * h * k2b;
    const cplx k3a = -(s1 * ta + x1 * tb + ha1), k3b = -(s1 * tb + x1 * ta + hb1);
    ta = a + h * k3a;
    tb = b + h * k3b;
    const cplx k4a = -(s2 * ta + x2 * tb + ha2), k4b = -(s2 * tb + x2 * ta + hb2);

    const std::size_t cur = slot(j);
    dra[cur] = k1a;
    drb[cur] = k1b;
    if (j == 0) {
      dla[cur] = k1a;
      dlb[cur] = k1b;
      dl_a_prev = k1a;
      dl_b_prev = k1b;
    }
    if (j % opts.output_stride == 0) {
      out.t.push_back(tj);
      out.ca.push_back(a);
      out.cb.push_back(b);
      out.dca_right.push_back(k1a);
      out.dcb_right.push_back(k1b);
      out.dca_left.push_back(dl_a_prev);
      out.dcb_left.push_back(dl_b_prev);
    }

    a += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    b += (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()))
      throw std::runtime_error("integration diverged");

    // left derivative at the end of the step, same history window
    dl_a_prev = -(s2 * a + x2 * b + ha2);
    dl_b_prev = -(s2 * b + x2 * a + hb2);
    const std::size_t nxt = slot(j + 1);
    ya[nxt] = a;
    yb[nxt] = b;
    dla[nxt] = dl_a_prev;
    dlb[nxt] = dl_b_prev;
  }
  return out;
}

}  // namespace

AmplitudeTrajectory integrate(const SystemConfig& cfg, const InitialState& init, double t_max,
                              int K, const IntegrateOptions& opts) {
  return run(cfg, init, DriveSchedule::constant(cfg.omega0), t_max, K, opts);
}

AmplitudeTrajectory integrate_with_drive(const SystemConfig& cfg, const InitialState& init,
                                         const DriveSchedule& schedule, double t_max, int K,
                                         const IntegrateOptions& opts) {
  return run(cfg, init, schedule, t_max, K, opts);
}

double FieldSpectrum::norm(bool tail_correction) const {
  double acc = 0;
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    const double f0 = std::norm(right[i]) + std::norm(left[i]);
    const double f1 = std::norm(right[i + 1]) + std::norm(left[i + 1]);
    acc += 0.5 * (omega[i + 1] - omega[i]) * (f0 + f1);
  }
  if (tail_correction && omega.size() > 1) {
    const double hi = omega.back() - omega_ref, lo = omega_ref - omega.front();
    if (hi > 0 && lo > 0) acc += 2.0 * tail_weight * (1.0 / hi + 1.0 / lo);
  }
  return acc;
}

std::vector<double> omega_grid(const SystemConfig& cfg, double t, double lambda,
                               double oversample) {
  if (lambda <= 0) lambda = cfg.delta_t > 0 ? 40.0 / cfg.delta_t : 400.0 * cfg.gamma;
  const double span = t + cfg.max_delay() * cfg.delta_t;
  double dw = span > 0 ? std::numbers::pi / (span * oversample) : lambda / 100.0;
  dw = std::min(dw, lambda / 100.0);
  const long long half = (long long)std::ceil(lambda / dw);
  std::vector<double> w;
  w.reserve(2 * half + 1);
  for (long long i = -half; i <= half; ++i) w.push_back(cfg.omega0 + i * dw);
  return w;
}

namespace {

// integral over [0,H] of a linear interpolant times e^{i delta s}: weights of the two end values
void filon_weights(double delta, double H, cplx& w0, cplx& w1) {
  const double th = delta * H;
  cplx e0, e1;
  if (std::abs(th) < 1e-2) {
    cplx term = 1.0, s0 = 0, s1 = 0;
    double fact = 1.0;
    for (int k = 0; k < 8; ++k) {
      if (k > 0) {
        term *= cplx(0, th);
        fact *= k;
      }
      s0 += term / (fact * (k + 1));
      s1 += term / (fact * (k + 2));
    }
    e0 = H * s0;
    e1 = H * s1;
  } else {
    const cplx eit = std::polar(1.0, th);
    const cplx ith(0, th);
    e0 = H * (eit - 1.0) / ith;
    e1 = H * (eit / ith + (eit - 1.0) / (th * th));
  }
  w0 = e0 - e1;
  w1 = e1;
}

}  // namespace

FieldSpectrum field_amplitudes(const AmplitudeTrajectory& traj, const std::vector<double>& omega,
                               double t) {
  if (traj.t.empty()) throw std::invalid_argument("empty trajectory");
  const double tol = 1e-12 * std::max(1.0, traj.t_end());
  if (t < 0 || t > traj.t_end() + tol) throw std::out_of_range("time outside trajectory");
  const SystemConfig& cfg = traj.config;

  FieldSpectrum spec;
  spec.time = t;
  spec.omega_ref = traj.drive.omega.front();
  spec.omega = omega;
  spec.right.assign(omega.size(), 0);
  spec.left.assign(omega.size(), 0);

  // nodes up to t, plus the partial interval ending at t
  std::vector<double> tau;
  std::vector<cplx> ga, gb;
  const bool varying = traj.drive.omega.size() > 1;
  auto rephase = [&](double s) {
    return varying ? std::polar(1.0, -(traj.drive.phase(s) - spec.omega_ref * s)) : cplx(1, 0);
  };
  for (std::size_t i = 0; i < traj.t.size() && traj.t[i] <= t + tol; ++i) {
    tau.push_back(traj.t[i]);
    const cplx r = rephase(traj.t[i]);
    ga.push_back(traj.ca[i] * r);
    gb.push_back(traj.cb[i] * r);
  }
  if (tau.back() < t - tol) {
    tau.push_back(t);
    const cplx r = rephase(t);
    ga.push_back(traj.amplitude(0, t) * r);
    gb.push_back(traj.amplitude(1, t) * r);
  }

  const double g = std::sqrt(cfg.gamma / (4 * std::numbers::pi));
  const auto legs_a = cfg.leg_positions(0), legs_b = cfg.leg_positions(1);
  spec.tail_weight = g * g * (legs_a.size() * (std::norm(ga.front()) + std::norm(ga.back())) +
                              legs_b.size() * (std::norm(gb.front()) + std::norm(gb.back())));
  if (tau.size() < 2) return spec;

  // uniform interior step, possibly shorter final interval
  const double H = tau[1] - tau[0];
  std::size_t uniform = tau.size() - 1;
  if (std::abs((tau.back() - tau[tau.size() - 2]) - H) > 1e-9 * H) uniform -= 1;

  for (std::size_t w = 0; w < omega.size(); ++w) {
    const double delta = omega[w] - spec.omega_ref;
    cplx w0, w1;
    filon_weights(delta, H, w0, w1);
    // sum_i z^i (w0 g_i + w1 g_{i+1}) from the single sum F = sum_{i<=U} z^i g_i
    const cplx rot = std::polar(1.0, delta * H);
    cplx z = 1.0, fa = 0, fb = 0;
    for (std::size_t i = 0; i <= uniform; ++i) {
      fa += z * ga[i];
      fb += z * gb[i];
      z *= rot;
      if ((i & 1023) == 1023) z = std::polar(1.0, delta * H * double(i + 1));
    }
    const cplx zu = std::polar(1.0, delta * H * double(uniform));
    cplx ia = 0, ib = 0;
    if (uniform > 0) {
      ia = w0 * (fa - zu * ga[uniform]) + w1 * (fa - ga[0]) / rot;
      ib = w0 * (fb - zu * gb[uniform]) + w1 * (fb - gb[0]) / rot;
    }
    for (std::size_t i = uniform; i + 1 < tau.size(); ++i) {
      cplx v0, v1;
      filon_weights(delta, tau[i + 1] - tau[i], v0, v1);
      const cplx zi = std::polar(1.0, delta * tau[i]);
      ia += zi * (v0 * ga[i] + v1 * ga[i + 1]);
      ib += zi * (v0 * gb[i] + v1 * gb[i + 1]);
    }
    const double k = omega[w] / cfg.vg;
    cplx sr = 0, sl = 0;
    for (double x : legs_a) {
      sr += std::polar(1.0, -k * x) * ia;
      sl += std::polar(1.0, k * x) * ia;
    }
    for (double x : legs_b) {
      sr += std::polar(1.0, -k * x) * ib;
      sl += std::polar(1.0, k * x) * ib;
    }
    spec.right[w] = cplx(0, -g) * sr;
    spec.left[w] = cplx(0, -g) * sl;
  }
  return spec;
}

}  // namespace giantqed

#include "giantqed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace giantqed {

namespace {

const cplx I(0, 1);

void require_two_legs(const SystemConfig& cfg) {
  if (cfg.legs != 2) throw std::invalid_argument("closed forms exist for two-leg atoms only");
}

// 1 + e^{ia} and 1 - e^{ia} in half-angle form, accurate near a = n pi
cplx one_plus(double a) { return 2.0 * std::cos(a / 2) * std::polar(1.0, a / 2); }
cplx one_minus(double a) { return -2.0 * I * std::sin(a / 2) * std::polar(1.0, a / 2); }

cplx phase_factor(const SystemConfig& cfg, cplx detuning) {
  return std::exp(I * (cfg.omega0 + detuning) * cfg.delta_t);
}

}  // namespace

ScatteringCoefficients scattering(const SystemConfig& cfg, double detuning) {
  require_two_legs(cfg);
  const double J = cfg.gamma / 2;
  const double D = detuning;
  const double a = (cfg.omega0 + detuning) * cfg.delta_t;
  const cplx E = std::polar(1.0, a), E2 = E * E;
  // The denominator is -D+ D- with both factors written through 1 +- e^{i n a}, so the
  // removable zeros at a = n pi, D = 0 cancel exactly.
  const cplx Dp = -I * D + J * one_plus(a) * (2.0 + E + E2);
  ScatteringCoefficients s;
  s.detuning = detuning;
  s.config = cfg;
  if (cfg.topology == Topology::Separate) {
    const cplx Dm = -I * D + J * one_minus(a) * one_plus(a) * (2.0 + E);
    const cplx q = -one_minus(a) * one_plus(a) * J - I * E * D;
    s.t = q * q / (E2 * Dp * Dm);
    s.r = one_plus(a) * one_plus(a) * J *
          (-2.0 * J * one_minus(3 * a) * one_plus(a) + I * D * one_plus(4 * a)) / (Dp * Dm);
  } else {
    const cplx Dm = -I * D + J * one_minus(a) * (2.0 - E + E2);
    const cplx m2 = one_minus(2 * a), p2 = one_plus(2 * a);
    s.t = -(m2 * m2 * J * J - 2.0 * I * one_minus(4 * a) * J * D + E2 * D * D) / (E2 * Dp * Dm);
    s.r = p2 * p2 * J * (-2.0 * J * m2 + I * D * p2) / (Dp * Dm);
  }
  return s;
}

MarkovRates markovian_rates(const SystemConfig& cfg) {
  require_two_legs(cfg);
  const double g = cfg.gamma;
  const double phi = cfg.phi();
  auto e = [&](int n) { return std::polar(1.0, n * phi); };
  MarkovRates m;
  m.plus = (2.0 + 3.0 * e(1) + 2.0 * e(2) + e(3)) * g;
  if (cfg.topology == Topology::Separate)
    m.minus = (2.0 + e(1) - 2.0 * e(2) - e(3)) * g;
  else
    m.minus = (2.0 + 2.0 * e(2) - 3.0 * e(1) - e(3)) * g;
  return m;
}

cplx reduced_denominator(const SystemConfig& cfg, Parity p, cplx detuning) {
  const auto A = collective_coefficients(delay_table(cfg), sign_of(p));
  const cplx s = -I * detuning;
  cplx acc = s;
  for (std::size_t n = 0; n < A.size(); ++n) acc += A[n] * std::exp(-s * double(n) * cfg.delta_t);
  return acc;
}

namespace {

cplx reduced_denominator_derivative(const SystemConfig& cfg, Parity p, cplx detuning) {
  const auto A = collective_coefficients(delay_table(cfg), sign_of(p));
  const cplx s = -I * detuning;
  cplx acc = 1.0;
  for (std::size_t n = 1; n < A.size(); ++n)
    acc -= double(n) * cfg.delta_t * A[n] * std::exp(-s * double(n) * cfg.delta_t);
  return -I * acc;
}

}  // namespace

cplx characteristic(const SystemConfig& cfg, cplx D) {
  if (cfg.legs != 2)
    return -reduced_denominator(cfg, Parity::Symmetric, D) *
           reduced_denominator(cfg, Parity::Antisymmetric, D);
  const double J = cfg.gamma / 2;
  const cplx E = phase_factor(cfg, D);
  const cplx E2 = E * E, E3 = E2 * E, E4 = E2 * E2, E5 = E4 * E, E6 = E3 * E3;
  if (cfg.topology == Topology::Separate)
    return J * J * (E6 + 4.0 * E5 + 6.0 * E4 + 4.0 * E3 - 3.0 * E2 - 8.0 * E - 4.0) +
           4.0 * I * J * D * (1.0 + E) + D * D;
  return J * J * (E6 + 2.0 * E4 + E2 - 4.0) + 4.0 * I * J * D * (1.0 + E2) + D * D;
}

cplx characteristic_derivative(const SystemConfig& cfg, cplx D) {
  if (cfg.legs != 2) {
    const cplx dp = reduced_denominator(cfg, Parity::Symmetric, D);
    const cplx dm = reduced_denominator(cfg, Parity::Antisymmetric, D);
    return -(reduced_denominator_derivative(cfg, Parity::Symmetric, D) * dm +
             dp * reduced_denominator_derivative(cfg, Parity::Antisymmetric, D));
  }
  const double J = cfg.gamma / 2;
  const double dt = cfg.delta_t;
  const cplx E = phase_factor(cfg, D);
  const cplx E2 = E * E, E3 = E2 * E, E4 = E2 * E2, E5 = E4 * E;
  const cplx dE = I * dt * E;  // dE/dDelta
  if (cfg.topology == Topology::Separate)
    return J * J * (6.0 * E5 + 20.0 * E4 + 24.0 * E3 + 12.0 * E2 - 6.0 * E - 8.0) * dE +
           4.0 * I * J * (1.0 + E) + 4.0 * I * J * D * dE + 2.0 * D;
  return J * J * (6.0 * E5 + 8.0 * E3 + 2.0 * E) * dE + 4.0 * I * J * (1.0 + E2) +
         4.0 * I * J * D * 2.0 * E * dE + 2.0 * D;
}

cplx markov_pole(const SystemConfig& cfg, Parity p) {
  const auto A = collective_coefficients(delay_table(cfg), sign_of(p));
  cplx sum = 0;
  for (auto a : A) sum += a;
  // s = -sum A, Delta = i s, Gamma = -2 s
  return I * (-sum);
}

std::vector<cplx> markov_characteristic_roots(const SystemConfig& cfg) {
  require_two_legs(cfg);
  const double J = cfg.gamma / 2;
  const cplx E = std::polar(1.0, cfg.phi());
  const cplx E2 = E * E, E3 = E2 * E, E4 = E2 * E2, E5 = E4 * E, E6 = E3 * E3;
  // Delta^2 + b Delta + c = 0
  cplx b, c;
  if (cfg.topology == Topology::Separate) {
    b = 4.0 * I * J * (1.0 + E);
    c = J * J * (E6 + 4.0 * E5 + 6.0 * E4 + 4.0 * E3 - 3.0 * E2 - 8.0 * E - 4.0);
  } else {
    b = 4.0 * I * J * (1.0 + E2);
    c = J * J * (E6 + 2.0 * E4 + E2 - 4.0);
  }
  // cancellation-free form: q = -(b + sign * sqrt(disc)) / 2, roots q and c / q
  cplx disc = std::sqrt(b * b - 4.0 * c);
  if (std::real(std::conj(b) * disc) < 0) disc = -disc;
  const cplx q = -0.5 * (b + disc);
  if (q == cplx(0, 0)) return {0.0, 0.0};
  return {q, c / q};
}

const Pole* DecayRateSet::nearest(Parity p, cplx target) const {
  const Pole* best = nullptr;
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& pole : poles) {
    if (pole.parity != p) continue;
    const double d = std::abs(pole.detuning - target);
    if (d < dist) {
      dist = d;
      best = &pole;
    }
  }
  return best;
}

namespace {

bool newton(const SystemConfig& cfg, cplx x, const PoleOptions& opts, cplx& root) {
  cplx f = characteristic(cfg, x);
  for (int it = 0; it < opts.max_iter; ++it) {
    const cplx df = characteristic_derivative(cfg, x);
    if (df == cplx(0, 0) || !std::isfinite(std::abs(df))) return false;
    cplx step = f / df;
    cplx xn = x - step;
    cplx fn = characteristic(cfg, xn);
    // halve overshooting steps
    for (int k = 0; k < 30 && !(std::abs(fn) < std::abs(f)) && std::abs(step) > opts.tol; ++k) {
      step *= 0.5;
      xn = x - step;
      fn = characteristic(cfg, xn);
    }
    x = xn;
    f = fn;
    if (!std::isfinite(std::abs(x))) return false;
    if (std::abs(step) <= opts.tol * std::max(1.0, std::abs(x))) {
      root = x;
      return std::abs(f) < opts.residual_limit;
    }
  }
  return false;
}

// Newton on a single parity sector
bool polish(const SystemConfig& cfg, Parity p, cplx x, cplx& root) {
  for (int it = 0; it < 50; ++it) {
    const cplx step =
        reduced_denominator(cfg, p, x) / reduced_denominator_derivative(cfg, p, x);
    x -= step;
    if (!std::isfinite(std::abs(x))) return false;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  root = x;
  return std::abs(reduced_denominator(cfg, p, x)) < 1e-10;
}

}  // namespace

DecayRateSet nonmarkovian_poles(const SystemConfig& cfg, const std::vector<cplx>& seeds,
                                const PoleOptions& opts) {
  if (opts.tol < 1e-12) throw std::invalid_argument("tolerance below 1e-12");
  std::vector<cplx> start = seeds;
  if (start.empty())
    start = {markov_pole(cfg, Parity::Symmetric), markov_pole(cfg, Parity::Antisymmetric)};
  DecayRateSet set;
  auto add = [&](cplx root, Parity p) {
    for (const auto& q : set.poles)
      if (q.parity == p && std::abs(q.detuning - root) < opts.duplicate_distance) return;
    Pole pole;
    pole.detuning = root;
    pole.rate = 2.0 * I * root;
    pole.residual = std::abs(characteristic(cfg, root));
    pole.parity = p;
    if (pole.residual < opts.residual_limit) set.poles.push_back(pole);
  };
  const double scale = cfg.gamma * cfg.legs * cfg.legs;
  for (cplx s : start) {
    cplx root;
    if (!newton(cfg, s, opts, root)) continue;
    const double dp = std::abs(reduced_denominator(cfg, Parity::Symmetric, root));
    const double dm = std::abs(reduced_denominator(cfg, Parity::Antisymmetric, root));
    add(root, dp <= dm ? Parity::Symmetric : Parity::Antisymmetric);
    // a root shared by both sectors (double root of the product) belongs to both
    if (std::max(dp, dm) < 1e-5 * scale) {
      for (Parity p : {Parity::Symmetric, Parity::Antisymmetric}) {
        cplx r;
        if (polish(cfg, p, root, r)) add(r, p);
      }
    }
  }
  if (set.poles.empty()) throw NonConvergence("no seed converged to a characteristic root");
  return set;
}

TwoPoles two_pole(const SystemConfig& cfg, const DecayRateSet& set) {
  TwoPoles tp;
  if (auto p = set.nearest(Parity::Symmetric, markov_pole(cfg, Parity::Symmetric))) {
    tp.has_plus = true;
    tp.plus = *p;
  }
  if (auto p = set.nearest(Parity::Antisymmetric, markov_pole(cfg, Parity::Antisymmetric))) {
    tp.has_minus = true;
    tp.minus = *p;
  }
  return tp;
}

std::vector<ScanPoint> scan_decay_rates(const SystemConfig& tmpl, double x_lo, double x_hi,
                                        double step, const PoleOptions& opts) {
  if (!(step > 0) || !(x_hi >= x_lo) || !(x_lo > 0))
    throw std::invalid_argument("scan range must satisfy 0 < lo <= hi and step > 0");
  if (!(tmpl.omega0 > 0)) throw std::invalid_argument("scan needs omega0 > 0");
  const long long count = (long long)std::floor((x_hi - x_lo) / step + 1e-9) + 1;
  std::vector<ScanPoint> out;
  out.reserve(count);
  std::vector<cplx> previous;
  for (long long i = 0; i < count; ++i) {
    const double x = x_lo + i * step;
    SystemConfig cfg = tmpl;
    cfg.delta_t = x * std::numbers::pi / tmpl.omega0;
    ScanPoint pt;
    pt.x = x;
    pt.delta_t = cfg.delta_t;
    const MarkovRates m = markovian_rates(cfg);
    pt.rate_plus_m = m.plus;
    pt.rate_minus_m = m.minus;

    std::vector<cplx> seeds;
    for (Parity p : {Parity::Symmetric, Parity::Antisymmetric}) {
      const cplx mp = markov_pole(cfg, p);
      seeds.push_back(mp);
      for (double a : {-4.0, -2.0, 2.0, 4.0})
        for (double b : {-4.0, -2.0, 2.0, 4.0}) seeds.push_back(mp + cplx(a, b) * cfg.gamma);
    }
    seeds.insert(seeds.end(), previous.begin(), previous.end());

    DecayRateSet set;
    try {
      set = nonmarkovian_poles(cfg, seeds, opts);
    } catch (const NonConvergence&) {
      out.push_back(pt);
      previous.clear();
      continue;
    }
    const TwoPoles tp = two_pole(cfg, set);
    if (tp.has_plus) {
      pt.ok_plus = true;
      pt.rate_plus_nm = tp.plus.rate;
      pt.residual_plus = tp.plus.residual;
    }
    if (tp.has_minus) {
      pt.ok_minus = true;
      pt.rate_minus_nm = tp.minus.rate;
      pt.residual_minus = tp.minus.residual;
    }
    // carry the roots closest to the Markov poles into the next point
    std::vector<Pole> ranked = set.poles;
    const cplx mp = markov_pole(cfg, Parity::Symmetric), mm = markov_pole(cfg, Parity::Antisymmetric);
    auto dist = [&](const Pole& p) {
      return std::min(std::abs(p.detuning - mp), std::abs(p.detuning - mm));
    };
    std::sort(ranked.begin(), ranked.end(),
              [&](const Pole& a, const Pole& b) { return dist(a) < dist(b); });
    previous.clear();
    for (std::size_t k = 0; k < ranked.size() && k < 12; ++k) previous.push_back(ranked[k].detuning);
    out.push_back(pt);
  }
  return out;
}

}  // namespace giantqed

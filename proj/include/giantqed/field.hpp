#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "giantqed/analytic.hpp"
#include "giantqed/dde.hpp"
#include "giantqed/model.hpp"

namespace giantqed {

// Interaction-picture atomic amplitudes at arbitrary times, plus the accumulated
// phase Phi(t) that maps them to the lab frame.
class AmplitudeSource {
 public:
  virtual ~AmplitudeSource() = default;
  // zero for t < 0
  virtual cplx amplitude(int atom, double t) const = 0;
  // amplitudes are valid for t < horizon
  virtual double horizon() const = 0;
  virtual double phase(double t) const = 0;
};

class SeriesSource : public AmplitudeSource {
 public:
  explicit SeriesSource(ExpPolySolution sol) : sol_(std::move(sol)) {}
  cplx amplitude(int atom, double t) const override;
  double horizon() const override { return sol_.horizon(); }
  double phase(double t) const override { return sol_.config.omega0 * t; }

 private:
  ExpPolySolution sol_;
};

class TrajectorySource : public AmplitudeSource {
 public:
  explicit TrajectorySource(AmplitudeTrajectory traj) : traj_(std::move(traj)) {}
  cplx amplitude(int atom, double t) const override;
  double horizon() const override;
  double phase(double t) const override { return traj_.drive.phase(t); }
  const AmplitudeTrajectory& trajectory() const { return traj_; }

 private:
  AmplitudeTrajectory traj_;
};

// Field intensity I(x, t) in units of the emitted-field scale; row i holds time t[i].
struct FieldGrid {
  std::vector<double> x, t;
  std::vector<double> intensity;  // size t.size() * x.size()
  Parity parity = Parity::Symmetric;

  double at(std::size_t it, std::size_t ix) const { return intensity[it * x.size() + ix]; }
};

// I(x,t) = (gamma pi / v^2) |sum over legs of retarded amplitudes|^2 with atom b's amplitude
// taken as +-c_a according to parity.
FieldGrid fdd(const AmplitudeSource& source, const SystemConfig& cfg, Parity parity,
              const std::vector<double>& x_grid, const std::vector<double>& t_grid);

// single point of the map
double fdd_point(const AmplitudeSource& source, const SystemConfig& cfg, Parity parity, double x,
                 double t);

struct DetectorRecord {
  double x0 = 0;  // distance beyond the rightmost leg
  double vg = 1;
  std::vector<double> t_bar;
  std::vector<cplx> amplitude;
  std::vector<double> intensity;
};

// right-going output field, normalised so that vg * |phi_out|^2 is the photon flux
DetectorRecord detector_signal(const AmplitudeSource& source, const SystemConfig& cfg, double x0,
                               const std::vector<double>& t_bar);

// trapezoid integral of vg |phi_out|^2 over samples inside [t_lo, t_hi]
double released_energy(const DetectorRecord& record, double t_lo, double t_hi);

}  // namespace giantqed

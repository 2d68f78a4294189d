#include "giantqed/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace giantqed {

namespace {

// shortest representation that round-trips, so outputs are reproducible byte for byte
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> config_comments(const SystemConfig& cfg) {
  return {"topology = " + to_string(cfg.topology), "legs = " + std::to_string(cfg.legs),
          "gamma = " + num(cfg.gamma),            "delta_t = " + num(cfg.delta_t),
          "omega0 = " + num(cfg.omega0),          "vg = " + num(cfg.vg),
          "eta = " + num(cfg.eta()),              "phi = " + num(cfg.phi())};
}

void write_trajectory_csv(std::ostream& os, const AmplitudeTrajectory& traj,
                          const std::vector<std::string>& comments) {
  for (const auto& c : config_comments(traj.config)) os << "# " << c << '\n';
  os << "# K = " << traj.K << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "t,re_ca,im_ca,re_cb,im_cb,pop_a,pop_b\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << num(traj.t[i]) << ',' << num(traj.ca[i].real()) << ',' << num(traj.ca[i].imag()) << ','
       << num(traj.cb[i].real()) << ',' << num(traj.cb[i].imag()) << ','
       << num(std::norm(traj.ca[i])) << ',' << num(std::norm(traj.cb[i])) << '\n';
  }
}

void write_branches_csv(std::ostream& os, const ExpPolySolution& sol) {
  os << "l,j,re_p,im_p\n";
  for (std::size_t l = 0; l < sol.branches.size(); ++l)
    for (std::size_t j = 0; j < sol.branches[l].size(); ++j)
      os << l << ',' << j << ',' << num(sol.branches[l][j].real()) << ','
         << num(sol.branches[l][j].imag()) << '\n';
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& scan) {
  os << "omega0_dx_over_pi,ReG_plus_NM,ImG_plus_NM,ReG_minus_NM,ImG_minus_NM,ReG_plus_M,"
        "ReG_minus_M,residual_plus,residual_minus\n";
  const std::string gap = "nan";
  for (const auto& p : scan) {
    os << num(p.x) << ',';
    if (p.ok_plus)
      os << num(p.rate_plus_nm.real()) << ',' << num(p.rate_plus_nm.imag()) << ',';
    else
      os << gap << ',' << gap << ',';
    if (p.ok_minus)
      os << num(p.rate_minus_nm.real()) << ',' << num(p.rate_minus_nm.imag()) << ',';
    else
      os << gap << ',' << gap << ',';
    os << num(p.rate_plus_m.real()) << ',' << num(p.rate_minus_m.real()) << ','
       << (p.ok_plus ? num(p.residual_plus) : gap) << ','
       << (p.ok_minus ? num(p.residual_minus) : gap) << '\n';
  }
}

void write_profile_csv(std::ostream& os, const BicProfile& profile) {
  os << "k,phi_k_sq,cumulative_norm\n";
  for (std::size_t i = 0; i < profile.k.size(); ++i)
    os << num(profile.k[i]) << ',' << num(profile.density[i]) << ',' << num(profile.cumulative[i])
       << '\n';
}

void write_fdd_csv(std::ostream& os, const FieldGrid& grid) {
  os << "x,t,I\n";
  for (std::size_t it = 0; it < grid.t.size(); ++it)
    for (std::size_t ix = 0; ix < grid.x.size(); ++ix)
      os << num(grid.x[ix]) << ',' << num(grid.t[it]) << ',' << num(grid.at(it, ix)) << '\n';
}

void write_detector_csv(std::ostream& os, const DetectorRecord& rec) {
  os << "t_bar,re_phi,im_phi,intensity\n";
  for (std::size_t i = 0; i < rec.t_bar.size(); ++i)
    os << num(rec.t_bar[i]) << ',' << num(rec.amplitude[i].real()) << ','
       << num(rec.amplitude[i].imag()) << ',' << num(rec.intensity[i]) << '\n';
}

namespace {

constexpr double kW = 640, kH = 400, kPad = 50;

const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};
  return colors[i % 5];
}

}  // namespace

void write_line_svg(std::ostream& os, const std::vector<Series>& series, const std::string& xlabel,
                    const std::string& ylabel) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double x) { return kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad
     << "\" height=\"" << kH - 2 * kPad << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    os << "<polyline fill=\"none\" stroke=\"" << palette(k) << "\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); ++i)
      if (std::isfinite(series[k].y[i]))
        os << px(series[k].x[i]) << ',' << py(series[k].y[i]) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << kW - kPad - 120 << "\" y=\"" << kPad + 16 * (k + 1) << "\" fill=\""
       << palette(k) << "\" font-size=\"12\">" << series[k].label << "</text>\n";
  }
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" font-size=\"12\">" << xlabel
     << "</text>\n<text x=\"8\" y=\"" << kH / 2 << "\" font-size=\"12\">" << ylabel
     << "</text>\n<text x=\"" << kPad << "\" y=\"" << kH - kPad + 14 << "\" font-size=\"10\">"
     << num(x0) << "</text>\n<text x=\"" << kW - kPad << "\" y=\"" << kH - kPad + 14
     << "\" font-size=\"10\">" << num(x1) << "</text>\n<text x=\"4\" y=\"" << kPad
     << "\" font-size=\"10\">" << num(y1) << "</text>\n</svg>\n";
}

void write_heatmap_svg(std::ostream& os, const FieldGrid& grid) {
  const std::size_t nx = grid.x.size(), nt = grid.t.size();
  double peak = 0;
  for (double v : grid.intensity) peak = std::max(peak, v);
  if (!(peak > 0)) peak = 1;
  const double cw = (kW - 2 * kPad) / std::max<std::size_t>(nx, 1);
  const double ch = (kH - 2 * kPad) / std::max<std::size_t>(nt, 1);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t it = 0; it < nt; ++it)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = std::sqrt(grid.at(it, ix) / peak);  // sqrt scale shows faint fronts
      const int r = int(255 * std::min(1.0, 2 * v)), b = int(255 * std::max(0.0, 1 - 2 * v));
      const int g = int(255 * std::max(0.0, 2 * v - 1));
      os << "<rect x=\"" << kPad + ix * cw << "\" y=\"" << kH - kPad - (it + 1) * ch
         << "\" width=\"" << cw + 0.5 << "\" height=\"" << ch + 0.5 << "\" fill=\"rgb(" << r << ','
         << g << ',' << b << ")\"/>\n";
    }
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" font-size=\"12\">x</text>\n"
     << "<text x=\"8\" y=\"" << kH / 2 << "\" font-size=\"12\">t</text>\n</svg>\n";
}

}  // namespace giantqed

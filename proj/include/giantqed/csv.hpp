#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "giantqed/analytic.hpp"
#include "giantqed/bic.hpp"
#include "giantqed/dde.hpp"
#include "giantqed/field.hpp"
#include "giantqed/spectral.hpp"

namespace giantqed {

// "# key = value" comment lines describing a configuration
std::vector<std::string> config_comments(const SystemConfig& cfg);

void write_trajectory_csv(std::ostream& os, const AmplitudeTrajectory& traj,
                          const std::vector<std::string>& comments = {});
void write_branches_csv(std::ostream& os, const ExpPolySolution& sol);
void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& scan);
void write_profile_csv(std::ostream& os, const BicProfile& profile);
void write_fdd_csv(std::ostream& os, const FieldGrid& grid);
void write_detector_csv(std::ostream& os, const DetectorRecord& rec);

struct Series {
  std::string label;
  std::vector<double> x, y;
};

// minimal line plot and heat map renderings
void write_line_svg(std::ostream& os, const std::vector<Series>& series, const std::string& xlabel,
                    const std::string& ylabel);
void write_heatmap_svg(std::ostream& os, const FieldGrid& grid);

}  // namespace giantqed

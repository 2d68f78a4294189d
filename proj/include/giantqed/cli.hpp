#pragma once

#include <ostream>
#include <string>

#include "giantqed/model.hpp"

namespace giantqed::cli {

inline constexpr const char* kVersion = "giantqed 1.0.0";

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3 };

// "2pi", "pi/2", "-3*pi", "2pi+pi/2", "1.25" -> radians
double parse_phase(const std::string& text);

// lo:hi:step
struct Range {
  double lo = 0, hi = 0, step = 0;
};
Range parse_range(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace giantqed::cli

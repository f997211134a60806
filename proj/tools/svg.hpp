#pragma once

#include <string>
#include <vector>

// Minimal line-chart writer for sweep output.

namespace diqkd::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_svg(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label);

}  // namespace diqkd::cli

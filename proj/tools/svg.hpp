#pragma once

#include <string>
#include <vector>

namespace hessbound::cli {

struct Bar {
  std::string label;
  double value;
};

struct BarGroup {
  std::string title;
  std::vector<Bar> bars;
};

struct Series {
  std::string label;
  std::vector<double> x, y;
};

std::string bar_chart(const std::string& title, const std::vector<BarGroup>& groups);
std::string line_chart(const std::string& title, const std::string& xlabel, const std::vector<Series>& series,
                       bool log_y = false);

}  // namespace hessbound::cli

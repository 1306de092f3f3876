#pragma once

#include <functional>
#include <vector>

namespace banachlab {

struct CircleMax {
  double theta = 0.0;
  double value = 0.0;
};

// Maximizes a continuous function on [0, 2pi).  Dense grid scan followed by
// golden-section polish around the best cells; extra breakpoints (angles
// where the function may kink) are merged into the grid.
CircleMax circle_maximize(const std::function<double(double)>& f,
                          int grid = 2048,
                          const std::vector<double>& breakpoints = {});

}  // namespace banachlab

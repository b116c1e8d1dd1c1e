#pragma once

#include <vector>

namespace pdm {

struct Grid {
    double left = 0.0;
    double right = 1.0;
    int points = 3;

    double spacing() const { return (right - left) / (points - 1); }
    double x(int i) const { return i == points - 1 ? right : left + i * spacing(); }
    // throws ParameterError on fewer than 3 points or an empty interval
    void validate() const;
};

// Samples on the nodes of a grid.
struct GridFunction {
    double left = 0.0;
    double right = 0.0;
    double spacing = 0.0;
    std::vector<double> x;
    std::vector<double> values;
};

}  // namespace pdm

#pragma once

#include <cmath>
#include <limits>

namespace caustic {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double v) const { return v >= lo && v <= hi; }
    bool contains_open(double v) const { return v > lo && v < hi; }
    double width() const { return hi - lo; }
};

inline double sgn(double v) { return (v > 0) - (v < 0); }

}  // namespace caustic

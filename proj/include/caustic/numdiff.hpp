#pragma once

#include <algorithm>
#include <cmath>

namespace caustic::numdiff {

inline double step(double x, double rel = 1e-5) { return rel * std::max(1.0, std::abs(x)); }

template <class F>
auto d1(const F& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2 * h);
}

template <class F>
auto d2(const F& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace caustic::numdiff

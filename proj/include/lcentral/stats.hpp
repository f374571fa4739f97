#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "lcentral/arith.hpp"

namespace lcentral {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw precondition_error("fit_line: length mismatch");
    if (xs.size() < 2) throw precondition_error("fit_line: need at least two points");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw precondition_error("fit_line: degenerate abscissae");
    return {sxy / sxx, my - sxy / sxx * mx, xs.size()};
}

/// Slope of log(y) against log(x). Points with y <= 0 are dropped.
inline LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (xs[i] <= 0 || ys[i] <= 0) continue;
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    return fit_line(lx, ly);
}

}  // namespace lcentral

#pragma once

#include <cmath>

namespace graphdist::detail {

// Golden-section search for the minimum of f on [0, 1]. Returns the best
// point seen (0 included) and its value in best_f, so a step is never worse
// than staying put even when f is not unimodal.
template <typename F>
double golden_section(F&& f, double& best_f, int iterations = 48) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    double best_t = 0.0;
    best_f = f(0.0);
    auto keep = [&](double t, double v) {
        if (v < best_f) {
            best_f = v;
            best_t = t;
        }
    };
    keep(1.0, f(1.0));
    for (int it = 0; it < iterations; ++it) {
        keep(x1, f1);
        keep(x2, f2);
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    keep(x1, f1);
    keep(x2, f2);
    return best_t;
}

}  // namespace graphdist::detail

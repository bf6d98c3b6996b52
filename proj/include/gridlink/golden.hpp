#pragma once

#include <cmath>
#include <utility>

namespace gridlink {

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi],
/// stopping once the bracket is narrower than `tol`.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    if (hi < lo) std::swap(lo, hi);

    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc <= fd ? ScalarMinimum{c, fc, evals} : ScalarMinimum{d, fd, evals};
}

}  // namespace gridlink

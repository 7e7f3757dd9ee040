#ifndef PHASEFRONT_SRC_ROOT_SOLVE_HPP_
#define PHASEFRONT_SRC_ROOT_SOLVE_HPP_

#include <cmath>
#include <utility>

namespace phasefront::detail {

// Bisection on a bracket with F(lo)*F(hi) <= 0, refined by a few secant
// steps. Guaranteed convergence beats Newton fragility near the phi jump.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double flo, double fhi,
                   double xtol) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    double a = lo, b = hi, fa = flo, fb = fhi;
    while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    // Secant polish, kept inside the bracket.
    double x0 = a, x1 = b, f0 = fa, f1 = fb;
    for (int i = 0; i < 4; ++i) {
        const double denom = f1 - f0;
        if (denom == 0.0) break;
        double x2 = x1 - f1 * (x1 - x0) / denom;
        if (!(x2 > a && x2 < b)) break;
        const double f2 = f(x2);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (f2 == 0.0) break;
    }
    return std::abs(f1) <= std::abs(f0) ? x1 : x0;
}

}  // namespace phasefront::detail

#endif  // PHASEFRONT_SRC_ROOT_SOLVE_HPP_

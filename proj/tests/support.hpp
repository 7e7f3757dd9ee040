#ifndef PHASEFRONT_TESTS_SUPPORT_HPP_
#define PHASEFRONT_TESTS_SUPPORT_HPP_

// Test-only oracles: independent brute-force routes (quadrature, dense grid
// scans) used to freeze expected values before trusting the solvers.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "phasefront/riemann_full.hpp"

namespace testsupport {

using namespace phasefront;

inline MaterialLaw reference_law() { return MaterialLaw(4.0, 1.0, 1.0, 2.0); }

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double tol, int depth = 24) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    std::function<double(double, double, double, double, double, double, int)>
        rec = [&](double x0, double x2, double f0, double f1, double f2,
                  double acc, int d) -> double {
        const double x1 = 0.5 * (x0 + x2);
        const double xl = 0.5 * (x0 + x1), xr = 0.5 * (x1 + x2);
        const double fl = f(xl), fr = f(xr);
        const double left = (x1 - x0) / 6.0 * (f0 + 4.0 * fl + f1);
        const double right = (x2 - x1) / 6.0 * (f1 + 4.0 * fr + f2);
        if (d <= 0 || std::abs(left + right - acc) < 15.0 * tol)
            return left + right + (left + right - acc) / 15.0;
        return rec(x0, x1, f0, fl, f1, left, d - 1) +
               rec(x1, x2, f1, fr, f2, right, d - 1);
    };
    return rec(a, b, fa, fm, fb, whole, depth);
}

// Quadrature route for the energy (integral of sigma from 0 to w).
inline double energy_quadrature(const MaterialLaw& law, double w) {
    return simpson([&](double y) { return law.sigma(y); }, 0.0, w, 1e-13);
}

// Quadrature route for the dissipation rate integral.
inline double dissipation_quadrature(const MaterialLaw& law, double wl,
                                     double wr) {
    const double mid = 0.5 * (law.sigma(wl) + law.sigma(wr));
    return simpson([&](double y) { return law.sigma(y) - mid; }, wl, wr,
                   1e-13);
}

// Dense-grid + bisection route for the subsonic boundary speed (independent
// of the production root solver). Returns 0 when theta(0) falls inside the
// jump of phi.
inline double scan_subsonic_speed(const MaterialLaw& law,
                                  const KineticFunction& kf, double h,
                                  long grid = 1000000) {
    const double c3 = law.c3();
    auto theta = [&](double V) {
        const double g = (c3 + V) * (law.c1() - V) /
                         ((law.c1() + V) * (c3 - V));
        return law.half_dk() * (law.wM() * law.wm() - g * h * h);
    };
    auto scan_half = [&](double lo, double hi) -> double {
        double xp = lo;
        double fp = theta(xp) - kf.eval(xp);
        for (long i = 1; i <= grid; ++i) {
            const double x = lo + (hi - lo) * i / grid;
            const double fx = theta(x) - kf.eval(x);
            if ((fp < 0.0) != (fx < 0.0) || fx == 0.0) {
                double a = xp, b = x, fa = fp;
                for (int k = 0; k < 200; ++k) {
                    const double mm = 0.5 * (a + b);
                    const double fmv = theta(mm) - kf.eval(mm);
                    if ((fa < 0.0) == (fmv < 0.0)) {
                        a = mm;
                        fa = fmv;
                    } else {
                        b = mm;
                    }
                }
                return 0.5 * (a + b);
            }
            xp = x;
            fp = fx;
        }
        return std::nan("");
    };
    const double t0 = theta(0.0);
    if (t0 > kf.at_zero_plus())
        return scan_half(1e-12 * c3, std::min(c3 * (1.0 - 1e-12), kf.domain_max()));
    if (t0 < kf.at_zero_minus())
        return scan_half(std::max(-c3 * (1.0 - 1e-10), kf.domain_min()), -1e-12 * c3);
    return 0.0;
}

// Dense scan for the supersonic speed in [c3, c1[ straight from the jump
// conditions (no closed form): residual of the second RH relation after the
// first eliminates the velocities.
inline double scan_supersonic_speed(const MaterialLaw& law, double wR,
                                    double h, long grid = 1000000) {
    const double c1 = law.c1(), c3 = law.c3();
    auto resid = [&](double V) {
        const double wl = ((V - c3) * wR + (c1 + c3) * h) / (c1 + V);
        return V * V * (wR - wl) - (c3 * c3 * wR - c1 * c1 * wl);
    };
    double xp = c3, fp = resid(xp);
    if (fp == 0.0) return c3;
    for (long i = 1; i <= grid; ++i) {
        const double x = c3 + (c1 * (1 - 1e-12) - c3) * i / grid;
        const double fx = resid(x);
        if ((fp < 0.0) != (fx < 0.0) || fx == 0.0) {
            double a = xp, b = x, fa = fp;
            for (int k = 0; k < 200; ++k) {
                const double m = 0.5 * (a + b);
                const double fm = resid(m);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        }
        xp = x;
        fp = fx;
    }
    throw std::runtime_error("scan_supersonic_speed: no root in [c3, c1[");
}

// Brute-force grid search for the two boundary speeds of a nucleation fan,
// iteratively refined; independent of the production Newton polish.
struct GridPair {
    double Vl, Vr;
};

inline GridPair grid_search_nucleation(const MaterialLaw& law,
                                       const KineticFunction& kf,
                                       const State& uL, const State& uR,
                                       double h, Phase outer, long n0 = 2000,
                                       int refinements = 6) {
    const double c3 = law.c3();
    const bool p1 = outer == Phase::phase1;
    const double cP = p1 ? law.c1() : law.c3();
    const double kP = cP * cP;
    const double kQ = p1 ? law.k3() : law.k1();
    auto resid = [&](double Vl, double Vr) {
        const double alpha = (kP - Vl * Vl) / (kQ - Vl * Vl);
        const double beta = (kQ - Vr * Vr) / (kP - Vr * Vr);
        const double w1 =
            2.0 * cP * h /
            ((cP + Vl) + (Vr - Vl) * alpha + (cP - Vr) * alpha * beta);
        const double w2 = alpha * w1;
        const double w3 = beta * w2;
        const double prod = law.wM() * law.wm();
        const double r1 = law.half_dk() * (prod - w1 * w2) -
                          kf.eval(p1 ? Vl : -Vl);
        const double r2 = law.half_dk() * (prod - w2 * w3) -
                          kf.eval(p1 ? -Vr : Vr);
        return std::max(std::abs(r1), std::abs(r2));
    };
    double lo_l = -c3 * (1 - 1e-9), hi_l = -1e-9 * c3;
    double lo_r = 1e-9 * c3, hi_r = c3 * (1 - 1e-9);
    GridPair best{-0.5 * c3, 0.5 * c3};
    long n = n0;
    for (int pass = 0; pass <= refinements; ++pass) {
        double best_val = 1e300;
        for (long i = 0; i <= n; ++i) {
            const double Vl = lo_l + (hi_l - lo_l) * i / n;
            for (long j = 0; j <= n; ++j) {
                const double Vr = lo_r + (hi_r - lo_r) * j / n;
                const double r = resid(Vl, Vr);
                if (r < best_val) {
                    best_val = r;
                    best = {Vl, Vr};
                }
            }
        }
        const double span_l = (hi_l - lo_l) * 2.0 / n;
        const double span_r = (hi_r - lo_r) * 2.0 / n;
        lo_l = std::max(-c3 * (1 - 1e-12), best.Vl - span_l);
        hi_l = std::min(-1e-12 * c3, best.Vl + span_l);
        lo_r = std::max(1e-12 * c3, best.Vr - span_r);
        hi_r = std::min(c3 * (1 - 1e-12), best.Vr + span_r);
        n = 120;
    }
    return best;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(gen);
    }
};

// Random off-spinodal states with reasonable ranges for the reference law.
inline State random_phase1(Rng& rng) {
    return {rng.uniform(-1.5, 1.5), rng.uniform(-0.8, 1.0)};
}
inline State random_phase3(Rng& rng) {
    return {rng.uniform(-1.5, 1.5), rng.uniform(2.0, 4.5)};
}

}  // namespace testsupport

#endif  // PHASEFRONT_TESTS_SUPPORT_HPP_

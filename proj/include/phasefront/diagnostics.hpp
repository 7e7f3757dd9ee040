#ifndef PHASEFRONT_DIAGNOSTICS_HPP_
#define PHASEFRONT_DIAGNOSTICS_HPP_

#include <optional>
#include <vector>

#include "phasefront/glimm.hpp"

namespace phasefront {

// Wave strengths of a Riemann fan, measured as signed jumps of w. E1 is the
// left-contact family, E2 the right-contact family, E0 the phase boundary
// (E2 = 0 by convention for a supersonic boundary, which has no right
// contact). In characteristic mode (V* = c3) a supersonic boundary is
// virtually split into an E0 and an E2 part so both stay C1 through h = 0.
struct WaveStrengths {
    double E0 = 0.0;
    double E1 = 0.0;
    double E2 = 0.0;
    std::optional<double> V;
};

WaveStrengths wave_strengths(const MaterialLaw& law, const KineticFunction& kf,
                             const WaveFan& fan, bool characteristic_mode);

// Glimm functionals on the canonical mesh curve between levels n and n+1:
// L = total small-wave strength, B = boundary strength, Q = the linear
// interaction potential (right-family waves left of the boundary plus
// left-family waves right of it, with the supersonic catch-up term).
struct FunctionalReport {
    double L = 0.0;
    double B = 0.0;
    double Q = 0.0;
    double K = 0.0;
    double G = 0.0;     // L + K Q
    double Bfun = 0.0;  // B + K Q
};

FunctionalReport level_functionals(const GlimmRun& run, std::size_t strip,
                                   double K);

// Smallest power-of-two K <= Kmax for which L + K Q and B + K Q are
// non-increasing across every consecutive strip pair of the run.
std::optional<double> smallest_monotone_K(const GlimmRun& run, double Kmax);

// Deviation of a level from the sharp two-state profile tilde-u (the base
// states on either side of chi).
struct TvReport {
    double tv = 0.0;   // total variation of u^h - tilde-u
    double sup = 0.0;  // sup norm of the same
};

TvReport tv_monitor_level(const GlimmRun& run, std::size_t level);

// Exact L1 distance between the piecewise-constant levels of two runs on
// identical grids.
double l1_distance_levels(const GlimmRun& a, const GlimmRun& b,
                          std::size_t level);

// L1 modulus ||u^h(t_n) - u^h(t_m)|| of one run (staggered grids merged
// exactly).
double l1_modulus(const GlimmRun& run, std::size_t n, std::size_t m);

// Exact L1 distance between two Riemann fans at time t over [A, B].
double fan_l1_distance(const WaveFan& fa, const WaveFan& fb, double t,
                       double A, double B);

// L1 distance between a run level and an exact Riemann fan at the level time.
double l1_run_vs_fan(const GlimmRun& run, const WaveFan& fan,
                     std::size_t level, double A, double B);

// Total variation of the initial data over the open window (a, b), boundary
// jumps at the endpoints excluded; |dv| + |dw| metric.
double initial_tv(const PiecewiseInitial& init, double a, double b);
// Same for the linear combination cv*v + cw*w.
double initial_tv_linear(const PiecewiseInitial& init, double cv, double cw,
                         double a, double b);

// Perturbation sizes controlling the stability bounds: N1 = TV of the data
// on both sides of the jump (plus the sup-norm deviation in the
// characteristic case), N2 the sup-norm deviation from the base states.
double initial_N1(const GlimmRun& run);
double initial_N2(const GlimmRun& run);

// Per-slab slopes chi-dot and their total variation on [0, T].
double boundary_speed_tv(const GlimmRun& run, double T);
// Initial-data bound of the same quantity: TV of the outgoing left
// Riemann invariant v - c1 w on the left window plus TV of the data on the
// right window (plus N in the characteristic case).
double boundary_speed_tv_rhs(const GlimmRun& run, double T);

// Kinetic-relation defect of slab n; supersonic slabs report no value.
std::optional<double> kinetic_residual_slab(const GlimmRun& run,
                                            std::size_t n);
double max_kinetic_residual(const GlimmRun& run);

// Smooth nonnegative space-time bump used to test the entropy inequality.
struct BumpTest {
    double t0 = 0.5, x0 = 0.0;
    double rt = 0.25, rx = 0.5;
    double amplitude = 1.0;

    double value(double t, double x) const;
    double dt(double t, double x) const;
    double dx(double t, double x) const;
    double norm() const;  // sup |phi| + sup |phi_t| + sup |phi_x|
};

// Discrete pairing of d_t U + d_x F with the test function (midpoint rule on
// the mesh). Nonpositive up to O(h) sampling error for admissible runs.
double entropy_pairing(const GlimmRun& run, const BumpTest& bump);

// Weak residual of the conservation laws themselves against the test
// function; tends to zero with h.
double weak_residual(const GlimmRun& run, const BumpTest& bump);

struct LevelDiag {
    std::size_t n = 0;
    double t = 0.0;
    double L = 0.0, B = 0.0, Q = 0.0, G = 0.0;
    double tv = 0.0, sup = 0.0;
    double chidot = 0.0;
    double kinetic_residual = 0.0;
    double entropy_pairing_local = 0.0;
};

std::vector<LevelDiag> per_level_diagnostics(const GlimmRun& run, double K);

}  // namespace phasefront

#endif  // PHASEFRONT_DIAGNOSTICS_HPP_

#ifndef PHASEFRONT_RIEMANN_FULL_HPP_
#define PHASEFRONT_RIEMANN_FULL_HPP_

#include <stdexcept>

#include "phasefront/kinetics.hpp"
#include "phasefront/material.hpp"
#include "phasefront/wave_fan.hpp"

namespace phasefront {

// Raised when a Riemann problem has no admissible solution (averaged strain
// out of range) or an internal root solve fails to converge.
struct no_solution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Averaged strain h = (c(wL) wL + c(wR) wR + vR - vL) / (c(wL) + c(wR)).
// Governs the case dispatch: reduces to the mid-state strain for same-phase
// data and to the boundary driving strain for cross-phase data.
double averaged_strain(const MaterialLaw& law, const State& uL,
                       const State& uR);

// Speed of the subsonic phase boundary driven by averaged strain h > 0:
// the root of theta(V) = phi(V) with
//   theta(V) = (k1-k3)/2 {wM wm - (c3+V)(c1-V) / ((c1+V)(c3-V)) h^2}.
// theta is strictly decreasing and phi nondecreasing, so the root is unique.
// When theta(0) falls inside the jump of phi at 0 the boundary is stationary
// and V = 0 is returned.
double solve_subsonic_speed(const MaterialLaw& law, const KineticFunction& kf,
                            double h);

// Whole-space case solvers. uL/uR phases and the range of h are preconditions
// enforced by solve_riemann's dispatch.
WaveFan solve_case_1a1(const MaterialLaw& law, const KineticFunction& kf,
                       const State& uL, const State& uR, double h);
WaveFan solve_case_1a2(const MaterialLaw& law, const KineticFunction& kf,
                       const State& uL, const State& uR, double h);
WaveFan solve_case_1b1(const MaterialLaw& law, const State& uL,
                       const State& uR, double h);
WaveFan solve_case_1b2(const MaterialLaw& law, const KineticFunction& kf,
                       const State& uL, const State& uR, double h);

// Admissible solution of the Riemann problem for arbitrary off-spinodal
// data. Same-phase phase-3 data and reversed-phase data are handled by the
// phase-3 analogues of the 1b cases and by the reflection x -> -x.
WaveFan solve_riemann(const MaterialLaw& law, const KineticFunction& kf,
                      const State& uL, const State& uR);

// Two states joined by a single phase boundary of the requested speed;
// used to set up propagating-boundary experiments. The left state is in
// phase 1 for Vstar > -c3... for Vstar in ]-c3,0[ u ]0,c1[ the pair carries
// the kinetic relation; |Vstar| in [c3,c1[ gives a supersonic boundary.
// Vstar in ]-c1,-c3] is built by reflection (phase 3 on the left).
std::pair<State, State> pure_boundary_states(const MaterialLaw& law,
                                             const KineticFunction& kf,
                                             double Vstar, double vL = 0.0);

}  // namespace phasefront

#endif  // PHASEFRONT_RIEMANN_FULL_HPP_

#ifndef PHASEFRONT_RIEMANN_HALF_HPP_
#define PHASEFRONT_RIEMANN_HALF_HPP_

#include "phasefront/riemann_full.hpp"

namespace phasefront {

enum class Side { left, right };

// Mirror image of the trace used to enforce the fixed-end condition v = 0.
State mirror_state(const State& u);

// Averaged strain seen by the wall: w0 + v0/c(w0) at a left end,
// w0 - v0/c(w0) at a right end.
double boundary_averaged_strain(const MaterialLaw& law, const State& u0,
                                Side side);

// Riemann problem in a half space with a fixed end. For a left end the fan
// covers x > 0 with nonnegative wave speeds and the leftmost state is the
// wall trace; a right end is solved by reflection, giving nonpositive speeds
// with the wall trace rightmost. Depending on the wall criterion the fan is
// a single outgoing contact (no nucleation), or a subsonic phase boundary
// followed by the contact; the nucleated boundary can be stationary when the
// critical strain differs from the phase limit.
WaveFan solve_half(const MaterialLaw& law, const KineticFunction& kf,
                   const State& u0, Side side);

// Trace of the half-space fan at the wall (satisfies v = 0 exactly).
const State& wall_trace(const WaveFan& fan, Side side);

}  // namespace phasefront

#endif  // PHASEFRONT_RIEMANN_HALF_HPP_

#ifndef PHASEFRONT_WAVE_FAN_HPP_
#define PHASEFRONT_WAVE_FAN_HPP_

#include <vector>

#include "phasefront/kinetics.hpp"
#include "phasefront/material.hpp"

namespace phasefront {

enum class WaveKind {
    contact_left,         // speed -c1 or -c3
    contact_right,        // speed +c1 or +c3
    boundary_subsonic,    // phase boundary, |V| < c3
    boundary_supersonic,  // phase boundary, |V| >= c3
};

bool is_boundary(WaveKind k);

struct Wave {
    double speed = 0.0;
    WaveKind kind = WaveKind::contact_left;
};

// Self-similar solution of a Riemann problem: constant states separated by
// waves of strictly increasing speed. states.size() == waves.size() + 1;
// a constant solution has a single state and no waves.
struct WaveFan {
    std::vector<State> states;
    std::vector<Wave> waves;

    // State at x/t = s, taking the left limit at wave lines (the u(.-0)
    // convention used when sampling).
    const State& eval(double s) const;

    const State& left() const { return states.front(); }
    const State& right() const { return states.back(); }

    // Index of the phase boundary wave, or -1 if none.
    int boundary_index() const;

    // (v,w) -> (-v,w), x -> -x. Reverses the fan and negates all speeds.
    WaveFan reflected() const;
};

struct FanCheck {
    double max_rh_residual = 0.0;       // normalized Rankine-Hugoniot defect
    double max_kinetic_residual = 0.0;  // on subsonic boundaries
    double max_entropy_excess = 0.0;    // positive part of -V[U]+[F]
    bool speeds_ordered = true;
    bool phases_consistent = true;      // contacts same-phase, boundaries cross
    bool ok(double rh_tol = 1e-10, double kin_tol = 1e-9,
            double ent_tol = 1e-12) const {
        return max_rh_residual <= rh_tol && max_kinetic_residual <= kin_tol &&
               max_entropy_excess <= ent_tol && speeds_ordered &&
               phases_consistent;
    }
};

// Verifies jump conditions, wave ordering, the phase pattern, the kinetic
// relation on subsonic boundaries and the entropy inequality on every wave.
FanCheck check_fan(const MaterialLaw& law, const KineticFunction& kf,
                   const WaveFan& fan);

}  // namespace phasefront

#endif  // PHASEFRONT_WAVE_FAN_HPP_

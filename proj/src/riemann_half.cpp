#include "phasefront/riemann_half.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "root_solve.hpp"

namespace phasefront {

namespace {

bool nearly_equal(const State& a, const State& b) {
    const double tol = 1e-11 * (1.0 + std::abs(a.v) + std::abs(a.w));
    return std::abs(a.v - b.v) <= tol && std::abs(a.w - b.w) <= tol;
}

void prune_right_contact(WaveFan& fan) {
    while (!fan.waves.empty() && !is_boundary(fan.waves.back().kind) &&
           nearly_equal(fan.states[fan.states.size() - 2], fan.states.back())) {
        fan.states.erase(fan.states.end() - 2);
        fan.waves.pop_back();
    }
}

// Dissipation rate across the wall boundary as a function of its speed,
// eliminating the states through the jump conditions and v_wall = 0. The
// wall-side state is in the nucleated phase; `cn` is the sound speed of the
// outer (data) phase and `co` of the nucleated one.
double theta_wall(const MaterialLaw& law, double h0, double cn, double co,
                  double V) {
    const double ko = co * co;
    const double g = cn * cn * h0 * h0 * (cn + V) * (ko - V * V) /
                     ((cn - V) * (ko + V * cn) * (ko + V * cn));
    return law.half_dk() * (law.wM() * law.wm() - g);
}

struct WallStates {
    double wminus;  // strain of the nucleated wall region
    double wplus;   // strain between boundary and outgoing contact
    double vplus;
};

WallStates wall_states(double h0, double cn, double co, double V) {
    const double ko = co * co;
    WallStates s;
    s.wminus = cn * h0 * (cn + V) / (ko + V * cn);
    s.wplus = cn * h0 * (ko - V * V) / ((cn - V) * (ko + V * cn));
    s.vplus = -V * (s.wplus - s.wminus);
    return s;
}

WaveFan solve_left(const MaterialLaw& law, const KineticFunction& kf,
                   const State& u0) {
    law.require_off_spinodal(u0, "solve_half");
    const Phase p0 = law.phase(u0.w);
    const double c3 = law.c3();
    const double h0 = boundary_averaged_strain(law, u0, Side::left);

    const bool in_phase3 = p0 == Phase::phase3;
    const double c_data = in_phase3 ? law.c3() : law.c1();

    // No nucleation: a single contact carries the data to the wall state
    // (0, h0). Ties at the critical strain stay in phase.
    const bool stays = in_phase3 ? h0 >= law.wmcr() : h0 <= law.wMcr();
    if (stays) {
        if (!in_phase3 && h0 <= -1.0)
            throw no_solution_error("riemann half 2b1: h0 <= -1");
        WaveFan fan;
        fan.states = {{0.0, h0}, u0};
        fan.waves = {{c_data, WaveKind::contact_right}};
        prune_right_contact(fan);
        return fan;
    }

    // Nucleation at the wall: solve theta_wall(V) = phi(+-V) for the
    // boundary speed, the sign of the phi argument set by which phase sits
    // left of the boundary (the nucleated one).
    const double cn = c_data;
    const double co = in_phase3 ? law.c1() : law.c3();
    const double phi_lo = kf.at_zero_minus();
    const double phi_hi = kf.at_zero_plus();
    const double th0 = theta_wall(law, h0, cn, co, 0.0);

    double V;
    if (in_phase3) {
        // Nucleated phase 1 at the wall; kinetic relation with phase-1 left:
        // theta_wall(V) = phi(V), theta decreasing in V.
        if (th0 > phi_hi) {
            auto g = [&](double V_) {
                return theta_wall(law, h0, cn, co, V_) - kf.eval(V_);
            };
            const double lo = 1e-15 * c3;
            const double hi =
                std::min(c3 * (1.0 - 1e-12), kf.domain_max());
            const double fhi = g(hi);
            if (!(fhi < 0.0))
                throw no_solution_error("riemann half 2a2: no subsonic root");
            V = detail::bisect_root(g, lo, hi, th0 - phi_hi, fhi, 1e-13 * c3);
        } else if (th0 >= phi_lo) {
            V = 0.0;  // stationary boundary pinned at the wall
        } else {
            throw no_solution_error(
                "riemann half 2a2: dissipation below the admissible band");
        }
    } else {
        // Nucleated phase 3 at the wall; phase-3 left of the boundary:
        // theta_wall(V) = phi(-V), theta increasing in V.
        if (th0 < phi_lo) {
            auto g = [&](double V_) {
                return theta_wall(law, h0, cn, co, V_) - kf.eval(-V_);
            };
            const double lo = 1e-15 * c3;
            const double hi =
                std::min(c3 * (1.0 - 1e-12), -kf.domain_min());
            const double fhi = g(hi);
            if (!(fhi > 0.0))
                throw no_solution_error("riemann half 2b2: no subsonic root");
            V = detail::bisect_root(g, lo, hi, th0 - phi_lo, fhi, 1e-13 * c3);
        } else if (th0 <= phi_hi) {
            V = 0.0;
        } else {
            throw no_solution_error(
                "riemann half 2b2: dissipation above the admissible band");
        }
    }

    WallStates s = wall_states(h0, cn, co, V);
    // Maximal dissipation pins the strain between boundary and contact onto
    // the phase edge; snap rounding back onto it.
    const double edge = in_phase3 ? law.wm() : law.wM();
    if (std::abs(s.wplus - edge) <= 1e-9 * std::max(1.0, edge)) {
        s.wplus = edge;
        s.vplus = -V * (s.wplus - s.wminus);
    }
    const Phase nucleated = in_phase3 ? Phase::phase1 : Phase::phase3;
    if (s.wminus <= -1.0 || s.wplus <= -1.0 ||
        law.phase(s.wminus) != nucleated || law.phase(s.wplus) != p0)
        throw no_solution_error(
            "riemann half: no admissible wall solution (h0=" +
            std::to_string(h0) + ")");

    WaveFan fan;
    fan.states = {{0.0, s.wminus}, {s.vplus, s.wplus}, u0};
    fan.waves = {{V, WaveKind::boundary_subsonic},
                 {c_data, WaveKind::contact_right}};
    prune_right_contact(fan);
    return fan;
}

}  // namespace

State mirror_state(const State& u) { return mirrored(u); }

double boundary_averaged_strain(const MaterialLaw& law, const State& u0,
                                Side side) {
    law.require_off_spinodal(u0, "boundary_averaged_strain");
    const double c = law.wave_speed(u0.w);
    return side == Side::left ? u0.w + u0.v / c : u0.w - u0.v / c;
}

WaveFan solve_half(const MaterialLaw& law, const KineticFunction& kf,
                   const State& u0, Side side) {
    if (side == Side::left) return solve_left(law, kf, u0);
    return solve_left(law, kf, mirror_state(u0)).reflected();
}

const State& wall_trace(const WaveFan& fan, Side side) {
    if (side == Side::left) {
        std::size_t i = 0;
        while (i < fan.waves.size() && fan.waves[i].speed <= 0.0) ++i;
        return fan.states[i];
    }
    std::size_t i = fan.waves.size();
    while (i > 0 && fan.waves[i - 1].speed >= 0.0) --i;
    return fan.states[i];
}

}  // namespace phasefront

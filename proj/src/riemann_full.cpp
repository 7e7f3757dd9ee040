#include "phasefront/riemann_full.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "root_solve.hpp"

namespace phasefront {

namespace {

bool nearly_equal(const State& a, const State& b) {
    const double tol = 1e-11 * (1.0 + std::abs(a.v) + std::abs(a.w));
    return std::abs(a.v - b.v) <= tol && std::abs(a.w - b.w) <= tol;
}

// Drop zero-strength edge contacts so that degenerate data reproduces its
// states bit-exactly (the Glimm scheme relies on this to keep an unperturbed
// boundary free of numerical debris).
void prune_edges(WaveFan& fan) {
    while (!fan.waves.empty() && !is_boundary(fan.waves.front().kind) &&
           nearly_equal(fan.states[0], fan.states[1])) {
        fan.states.erase(fan.states.begin() + 1);
        fan.waves.erase(fan.waves.begin());
    }
    while (!fan.waves.empty() && !is_boundary(fan.waves.back().kind) &&
           nearly_equal(fan.states[fan.states.size() - 2], fan.states.back())) {
        fan.states.erase(fan.states.end() - 2);
        fan.waves.pop_back();
    }
}

double theta_whole(const MaterialLaw& law, double h, double V) {
    const double c1 = law.c1(), c3 = law.c3();
    const double g = (c3 + V) * (c1 - V) / ((c1 + V) * (c3 - V));
    return law.half_dk() * (law.wM() * law.wm() - g * h * h);
}

// The maximally dissipative kinetic function pins intermediate strains
// exactly onto a phase edge; root-solve rounding may leave them a few ulp
// inside the spinodal. Snap back onto the edge.
double snap_edge(double w, double edge) {
    return std::abs(w - edge) <= 1e-9 * std::max(1.0, std::abs(edge)) ? edge
                                                                      : w;
}

// Phase-parametrized version of case 1b1 / 1c1: two contacts at the outer
// characteristic speed with midstate (vL + c(h - wL), h).
WaveFan same_phase_contacts(const MaterialLaw& law, const State& uL,
                            const State& uR, double h, Phase outer) {
    const double c =
        outer == Phase::phase1 ? law.c1() : law.c3();
    const State mid{uL.v + c * (h - uL.w), h};
    WaveFan fan;
    fan.states = {uL, mid, uR};
    fan.waves = {{-c, WaveKind::contact_left}, {c, WaveKind::contact_right}};
    prune_edges(fan);
    return fan;
}

struct NucleationStates {
    double w1, w2, w3, v1, v2, v3;
};

// States of the two-boundary fan given the boundary speeds. outer = phase of
// uL,uR; the inner sliver is in the opposite phase. All six jump conditions
// hold by construction.
NucleationStates nucleation_states(const MaterialLaw& law, const State& uL,
                                   double h, Phase outer, double Vl,
                                   double Vr) {
    const bool p1 = outer == Phase::phase1;
    const double cP = p1 ? law.c1() : law.c3();
    const double kP = p1 ? law.k1() : law.k3();
    const double kQ = p1 ? law.k3() : law.k1();
    const double alpha = (kP - Vl * Vl) / (kQ - Vl * Vl);
    const double beta = (kQ - Vr * Vr) / (kP - Vr * Vr);
    NucleationStates s;
    s.w1 = 2.0 * cP * h /
           ((cP + Vl) + (Vr - Vl) * alpha + (cP - Vr) * alpha * beta);
    s.w2 = alpha * s.w1;
    s.w3 = beta * s.w2;
    s.v1 = uL.v + cP * (s.w1 - uL.w);
    s.v2 = s.v1 - Vl * (s.w2 - s.w1);
    s.v3 = s.v2 - Vr * (s.w3 - s.w2);
    return s;
}

// Kinetic residual pair of the two-boundary fan. The left boundary has the
// outer phase on its left, the right boundary has the inner phase on its
// left; both reduce to phi evaluated on the same sign half-axis.
std::array<double, 2> nucleation_residuals(const MaterialLaw& law,
                                           const KineticFunction& kf,
                                           const NucleationStates& s,
                                           Phase outer, double Vl, double Vr) {
    const double prod = law.wM() * law.wm();
    const double r1 = law.half_dk() * (prod - s.w1 * s.w2);
    const double r2 = law.half_dk() * (prod - s.w2 * s.w3);
    const double s1 = outer == Phase::phase1 ? Vl : -Vl;
    const double s2 = outer == Phase::phase1 ? -Vr : Vr;
    return {r1 - kf.eval(s1), r2 - kf.eval(s2)};
}

WaveFan solve_nucleation(const MaterialLaw& law, const KineticFunction& kf,
                         const State& uL, const State& uR, double h,
                         Phase outer) {
    const double c3 = law.c3();
    const double lo = 1e-13 * c3;
    const double hi =
        std::min({c3 * (1.0 - 1e-12), -kf.domain_min(), kf.domain_max()});
    const double scale = std::max(1.0, law.half_dk() * law.wM() * law.wm());

    // The two kinetic relations coincide on the diagonal Vl = -Vr, which
    // carries the solution; solve there first.
    auto diag = [&](double V) {
        const NucleationStates s =
            nucleation_states(law, uL, h, outer, -V, V);
        return nucleation_residuals(law, kf, s, outer, -V, V)[1];
    };
    const double flo = diag(lo), fhi = diag(hi);
    if ((flo < 0.0) == (fhi < 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "riemann: no nucleated solution (h=" << h << ", uL=(" << uL.v
            << "," << uL.w << "), uR=(" << uR.v << "," << uR.w
            << "), residuals " << flo << " .. " << fhi << ")";
        throw no_solution_error(msg.str());
    }
    double Vr = detail::bisect_root(diag, lo, hi, flo, fhi, 1e-13 * c3);
    double Vl = -Vr;

    // Newton polish treating the speeds as independent unknowns, with
    // damping and the quadrant as a trust region.
    auto res = [&](double a, double b) {
        return nucleation_residuals(
            law, kf, nucleation_states(law, uL, h, outer, a, b), outer, a, b);
    };
    auto norm = [](const std::array<double, 2>& r) {
        return std::max(std::abs(r[0]), std::abs(r[1]));
    };
    std::array<double, 2> r = res(Vl, Vr);
    for (int it = 0; it < 25 && norm(r) > 1e-12 * scale; ++it) {
        const double d = 1e-8 * c3;
        const auto ra = res(Vl + d, Vr);
        const auto rb = res(Vl, Vr + d);
        const double j11 = (ra[0] - r[0]) / d, j12 = (rb[0] - r[0]) / d;
        const double j21 = (ra[1] - r[1]) / d, j22 = (rb[1] - r[1]) / d;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        double da = (-r[0] * j22 + r[1] * j12) / det;
        double db = (-r[1] * j11 + r[0] * j21) / det;
        double step = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, step *= 0.5) {
            const double a = std::clamp(Vl + step * da, -hi, -lo);
            const double b = std::clamp(Vr + step * db, lo, hi);
            const auto rn = res(a, b);
            if (norm(rn) < norm(r)) {
                Vl = a;
                Vr = b;
                r = rn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (norm(r) > 1e-11 * scale)
        throw no_solution_error(
            "riemann: nucleation solve did not converge (residuals " +
            std::to_string(r[0]) + ", " + std::to_string(r[1]) + ")");

    NucleationStates s = nucleation_states(law, uL, h, outer, Vl, Vr);
    const double edge = outer == Phase::phase1 ? law.wM() : law.wm();
    if (s.w1 != snap_edge(s.w1, edge) || s.w3 != snap_edge(s.w3, edge)) {
        // Rescale the whole strain chain (it is proportional to w1) so the
        // outer states sit exactly on the edge, then rebuild the v chain.
        const double f = edge / s.w1;
        s.w1 = edge;
        s.w2 *= f;
        s.w3 = snap_edge(s.w3 * f, edge);
        s.v1 = uL.v + (outer == Phase::phase1 ? law.c1() : law.c3()) *
                          (s.w1 - uL.w);
        s.v2 = s.v1 - Vl * (s.w2 - s.w1);
        s.v3 = s.v2 - Vr * (s.w3 - s.w2);
    }
    const Phase inner = outer == Phase::phase1 ? Phase::phase3 : Phase::phase1;
    if (s.w1 <= -1.0 || s.w2 <= -1.0 || law.phase(s.w1) != outer ||
        law.phase(s.w3) != outer || law.phase(s.w2) != inner)
        throw no_solution_error(
            "riemann: nucleated states leave their phases (h=" +
            std::to_string(h) + ")");

    const double c = outer == Phase::phase1 ? law.c1() : law.c3();
    WaveFan fan;
    fan.states = {uL, {s.v1, s.w1}, {s.v2, s.w2}, {s.v3, s.w3}, uR};
    fan.waves = {{-c, WaveKind::contact_left},
                 {Vl, WaveKind::boundary_subsonic},
                 {Vr, WaveKind::boundary_subsonic},
                 {c, WaveKind::contact_right}};
    prune_edges(fan);
    return fan;
}

}  // namespace

double averaged_strain(const MaterialLaw& law, const State& uL,
                       const State& uR) {
    law.require_off_spinodal(uL, "averaged_strain");
    law.require_off_spinodal(uR, "averaged_strain");
    const double cl = law.wave_speed(uL.w);
    const double cr = law.wave_speed(uR.w);
    return (cl * uL.w + cr * uR.w + uR.v - uL.v) / (cl + cr);
}

double solve_subsonic_speed(const MaterialLaw& law, const KineticFunction& kf,
                            double h) {
    if (!(h > 0.0))
        throw std::domain_error("solve_subsonic_speed: requires h > 0");
    const double c3 = law.c3();
    const double theta0 = theta_whole(law, h, 0.0);
    const double phi_lo = kf.at_zero_minus();
    const double phi_hi = kf.at_zero_plus();
    auto g = [&](double V) { return theta_whole(law, h, V) - kf.eval(V); };

    if (theta0 > phi_hi) {
        const double lo = 1e-15 * c3;
        const double hi = std::min(c3 * (1.0 - 1e-12), kf.domain_max());
        const double fhi = g(hi);
        if (!(fhi < 0.0))
            throw no_solution_error(
                "solve_subsonic_speed: root pinned at the sonic edge");
        return detail::bisect_root(g, lo, hi, theta0 - phi_hi, fhi,
                                   1e-13 * c3);
    }
    if (theta0 < phi_lo) {
        const double lo = std::max(-c3 * (1.0 - 1e-12), kf.domain_min());
        const double hi = -1e-15 * c3;
        const double flo = g(lo);
        if (!(flo > 0.0))
            throw no_solution_error(
                "solve_subsonic_speed: no bracket below zero "
                "(kinetic table too short or inadmissible)");
        return detail::bisect_root(g, lo, hi, flo, theta0 - phi_lo,
                                   1e-13 * c3);
    }
    // theta(0) sits inside the jump of phi: the boundary does not move.
    return 0.0;
}

WaveFan solve_case_1a1(const MaterialLaw& law, const KineticFunction& kf,
                       const State& uL, const State& uR, double h) {
    const double c1 = law.c1(), c3 = law.c3();
    const double V = solve_subsonic_speed(law, kf, h);
    const double wl = snap_edge((c3 + V) / (c1 + V) * h, law.wM());
    const double wr = snap_edge((c1 - V) / (c3 - V) * h, law.wm());
    const State um{uL.v + c1 * (wl - uL.w), wl};
    const State up{uR.v + c3 * (uR.w - wr), wr};
    if (law.phase(wl) != Phase::phase1 || law.phase(wr) != Phase::phase3)
        throw no_solution_error(
            "riemann 1a1: intermediate states leave their phases");
    WaveFan fan;
    fan.states = {uL, um, up, uR};
    fan.waves = {{-c1, WaveKind::contact_left},
                 {V, WaveKind::boundary_subsonic},
                 {c3, WaveKind::contact_right}};
    prune_edges(fan);
    return fan;
}

WaveFan solve_case_1a2(const MaterialLaw& law, const KineticFunction& kf,
                       const State& uL, const State& uR, double h) {
    (void)kf;  // no kinetic relation on supersonic boundaries
    const double c1 = law.c1(), c3 = law.c3();
    const double wR = uR.w;
    // Root of the jump-condition quadratic in [c3, c1[; the quadratic
    // factors against the spurious root V = -c1, leaving a linear solve.
    const double V = (c3 * wR - c1 * h) / (wR - h);
    if (!(V >= c3 && V < c1))
        throw no_solution_error("riemann 1a2: supersonic speed out of range");
    const double wl = (c3 + V) / (c1 + V) * h;
    if (wl <= -1.0) {
        const double disc = std::sqrt(c3 * c3 * wR * wR +
                                      (c1 * c1 + c3 * c3) * wR + c1 * c1);
        const double h_inf = (c3 * wR - c1 - disc) / (c1 + c3);
        throw no_solution_error(
            "riemann 1a2: no solution, h=" + std::to_string(h) +
            " <= h_inf=" + std::to_string(h_inf));
    }
    const State um{uL.v - c1 * uL.w + (c3 + V) / (c1 + V) * c1 * h, wl};
    WaveFan fan;
    fan.states = {uL, um, uR};
    fan.waves = {{-c1, WaveKind::contact_left},
                 {V, WaveKind::boundary_supersonic}};
    prune_edges(fan);
    return fan;
}

WaveFan solve_case_1b1(const MaterialLaw& law, const State& uL,
                       const State& uR, double h) {
    return same_phase_contacts(law, uL, uR, h, Phase::phase1);
}

WaveFan solve_case_1b2(const MaterialLaw& law, const KineticFunction& kf,
                       const State& uL, const State& uR, double h) {
    return solve_nucleation(law, kf, uL, uR, h, Phase::phase1);
}

WaveFan solve_riemann(const MaterialLaw& law, const KineticFunction& kf,
                      const State& uL, const State& uR) {
    law.require_off_spinodal(uL, "solve_riemann");
    law.require_off_spinodal(uR, "solve_riemann");
    const Phase pL = law.phase(uL.w);
    const Phase pR = law.phase(uR.w);

    if (pL == Phase::phase3 && pR == Phase::phase1) {
        const WaveFan fan =
            solve_riemann(law, kf, mirrored(uR), mirrored(uL));
        return fan.reflected();
    }

    const double h = averaged_strain(law, uL, uR);
    if (pL == Phase::phase1 && pR == Phase::phase3)
        return h > 0.0 ? solve_case_1a1(law, kf, uL, uR, h)
                       : solve_case_1a2(law, kf, uL, uR, h);

    if (pL == Phase::phase1) {  // both phase 1
        if (h <= -1.0)
            throw no_solution_error(
                "riemann 1b: no solution, h=" + std::to_string(h) + " <= -1");
        // A tie h = wM stays in phase: the initiation criterion prefers no
        // new phase whenever a one-phase solution exists. The tie window has
        // a tolerance: a strain excess below it would nucleate a sliver
        // thinner than the root-solver resolution.
        const double tol = 1e-12 * std::max(1.0, law.wM());
        if (h <= law.wM() + tol)
            return solve_case_1b1(law, uL, uR, std::min(h, law.wM()));
        return solve_case_1b2(law, kf, uL, uR, h);
    }

    // both phase 3
    const double tol = 1e-12 * std::max(1.0, law.wm());
    if (h >= law.wm() - tol)
        return same_phase_contacts(law, uL, uR, std::max(h, law.wm()),
                                   Phase::phase3);
    return solve_nucleation(law, kf, uL, uR, h, Phase::phase3);
}

std::pair<State, State> pure_boundary_states(const MaterialLaw& law,
                                             const KineticFunction& kf,
                                             double Vstar, double vL) {
    const double c1 = law.c1(), c3 = law.c3();
    if (!(std::abs(Vstar) < c1))
        throw std::domain_error("pure_boundary_states: |V*| must be < c1");
    if (Vstar == 0.0)
        throw std::domain_error(
            "pure_boundary_states: stationary boundary has no unique pair");
    if (Vstar <= -c3) {
        auto [a, b] = pure_boundary_states(law, kf, -Vstar, -vL);
        return {mirrored(b), mirrored(a)};
    }

    double wl, wr;
    if (Vstar < c3) {
        const double phi = kf.eval(Vstar);
        const double prod = law.wM() * law.wm() - phi / law.half_dk();
        const double ratio =
            (c3 * c3 - Vstar * Vstar) / (c1 * c1 - Vstar * Vstar);
        wl = snap_edge(std::sqrt(prod * ratio), law.wM());
        wr = snap_edge(wl / ratio, law.wm());
    } else if (Vstar == c3) {
        wl = 0.0;
        wr = kf.limit_strain_at_c3();
    } else {
        wr = 1.25 * law.wm();
        wl = wr * (c3 * c3 - Vstar * Vstar) / (c1 * c1 - Vstar * Vstar);
        if (wl <= -1.0)
            throw no_solution_error(
                "pure_boundary_states: supersonic left strain below -1");
    }
    const State uL{vL, wl};
    const State uR{vL - Vstar * (wr - wl), wr};
    return {uL, uR};
}

}  // namespace phasefront

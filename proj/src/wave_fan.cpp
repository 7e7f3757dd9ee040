#include "phasefront/wave_fan.hpp"

#include <algorithm>
#include <cmath>

namespace phasefront {

bool is_boundary(WaveKind k) {
    return k == WaveKind::boundary_subsonic ||
           k == WaveKind::boundary_supersonic;
}

const State& WaveFan::eval(double s) const {
    std::size_t i = 0;
    while (i < waves.size() && waves[i].speed < s) ++i;
    return states[i];
}

int WaveFan::boundary_index() const {
    for (std::size_t i = 0; i < waves.size(); ++i)
        if (is_boundary(waves[i].kind)) return static_cast<int>(i);
    return -1;
}

WaveFan WaveFan::reflected() const {
    WaveFan out;
    out.states.reserve(states.size());
    out.waves.reserve(waves.size());
    for (auto it = states.rbegin(); it != states.rend(); ++it)
        out.states.push_back({-it->v, it->w});
    for (auto it = waves.rbegin(); it != waves.rend(); ++it) {
        WaveKind k = it->kind;
        if (k == WaveKind::contact_left) k = WaveKind::contact_right;
        else if (k == WaveKind::contact_right) k = WaveKind::contact_left;
        out.waves.push_back({-it->speed, k});
    }
    return out;
}

FanCheck check_fan(const MaterialLaw& law, const KineticFunction& kf,
                   const WaveFan& fan) {
    FanCheck r;
    if (fan.states.size() != fan.waves.size() + 1) {
        r.phases_consistent = false;
        return r;
    }
    for (std::size_t i = 0; i < fan.waves.size(); ++i) {
        const State& a = fan.states[i];
        const State& b = fan.states[i + 1];
        const Wave& wv = fan.waves[i];
        if (i > 0 && !(fan.waves[i - 1].speed < wv.speed))
            r.speeds_ordered = false;

        const double sa = law.sigma(a.w);
        const double sb = law.sigma(b.w);
        const double scale = std::max({1.0, std::abs(sa), std::abs(sb)});
        const double rh1 = wv.speed * (b.w - a.w) + (b.v - a.v);
        const double rh2 = wv.speed * (b.v - a.v) + (sb - sa);
        r.max_rh_residual = std::max(
            r.max_rh_residual,
            std::max(std::abs(rh1), std::abs(rh2)) / scale);

        const Phase pa = law.phase(a.w);
        const Phase pb = law.phase(b.w);
        if (is_boundary(wv.kind)) {
            if (pa == pb) r.phases_consistent = false;
        } else {
            if (pa != pb) r.phases_consistent = false;
        }

        const double rate = entropy_dissipation_rate(law, a, b);
        if (wv.kind == WaveKind::boundary_subsonic) {
            r.max_kinetic_residual = std::max(
                r.max_kinetic_residual,
                kinetic_relation_residual(kf, wv.speed, pa, rate));
        }
        // Entropy measure coefficient along the wave is -V[U]+[F] = -V*rate;
        // admissibility requires it to be non-positive.
        const double coeff = -wv.speed * rate;
        r.max_entropy_excess =
            std::max(r.max_entropy_excess, coeff / scale);
    }
    return r;
}

}  // namespace phasefront

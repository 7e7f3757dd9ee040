#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "phasefront/riemann_half.hpp"
#include "support.hpp"

using namespace phasefront;
using testsupport::reference_law;

namespace {

const MaterialLaw kLaw = reference_law();
const KineticFunction kMax = KineticFunction::max_dissipation(kLaw);

void require_good_half(const WaveFan& fan, Side side) {
    const FanCheck c = check_fan(kLaw, kMax, fan);
    CHECK(c.max_rh_residual <= 1e-10);
    CHECK(c.max_kinetic_residual <= 1e-9);
    CHECK(c.speeds_ordered);
    CHECK(c.phases_consistent);
    CHECK(wall_trace(fan, side).v == 0.0);
    for (const auto& w : fan.waves)
        CHECK((side == Side::left ? w.speed >= 0.0 : w.speed <= 0.0));
}

// Independent oracle: dense scan of the wall dissipation equation derived
// directly from RH + v(wall)=0.
double scan_wall_speed(const MaterialLaw& law, const KineticFunction& kf,
                       double h0, bool data_phase3) {
    const double cn = data_phase3 ? law.c3() : law.c1();
    const double co = data_phase3 ? law.c1() : law.c3();
    const double ko = co * co;
    auto theta = [&](double V) {
        const double g = cn * cn * h0 * h0 * (cn + V) * (ko - V * V) /
                         ((cn - V) * (ko + V * cn) * (ko + V * cn));
        return law.half_dk() * (law.wM() * law.wm() - g);
    };
    auto f = [&](double V) {
        return theta(V) - (data_phase3 ? kf.eval(V) : kf.eval(-V));
    };
    const long n = 400000;
    const double lo = 1e-9, hi = law.c3() * (1 - 1e-9);
    double xp = lo, fp = f(xp);
    for (long i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double fx = f(x);
        if ((fp < 0.0) != (fx < 0.0)) {
            double a = xp, b = x, fa = fp;
            for (int k = 0; k < 200; ++k) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
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
    return 0.0;
}

}  // namespace

TEST_CASE("mirror state") {
    CHECK(mirror_state({0.3, 2.1}).v == -0.3);
    CHECK(mirror_state({0.3, 2.1}).w == 2.1);
    CHECK(mirror_state({0.0, 1.9}).v == 0.0);
    const State u{0.7, 2.3};
    const State twice = mirror_state(mirror_state(u));
    CHECK(twice.v == u.v);
    CHECK(twice.w == u.w);
}

TEST_CASE("boundary averaged strain") {
    CHECK(boundary_averaged_strain(kLaw, {0.5, 2.0}, Side::left) ==
          doctest::Approx(2.5).epsilon(1e-15));
    CHECK(boundary_averaged_strain(kLaw, {0.0, 2.7}, Side::left) == 2.7);
    CHECK(boundary_averaged_strain(kLaw, {-0.4, 0.8}, Side::left) ==
          doctest::Approx(0.6).epsilon(1e-15));
    // right end flips the velocity sign (mirror convention)
    CHECK(boundary_averaged_strain(kLaw, {-0.5, 2.0}, Side::right) ==
          doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("case 2a1: data stays in phase 3") {
    const WaveFan fan = solve_half(kLaw, kMax, {0.5, 2.0}, Side::left);
    REQUIRE(fan.states.size() == 2);
    CHECK(fan.states[0].v == 0.0);
    CHECK(fan.states[0].w == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(fan.waves[0].speed == kLaw.c3());
    require_good_half(fan, Side::left);

    // equilibrium data: empty fan
    const WaveFan still = solve_half(kLaw, kMax, {0.0, 2.4}, Side::left);
    CHECK(still.waves.empty());
    CHECK(still.states[0].v == 0.0);
    CHECK(still.states[0].w == 2.4);
}

TEST_CASE("case 2a2: wall nucleates phase 1") {
    const State u0{-1.5, 2.2};  // h0 = 0.7 < wmcr
    const WaveFan fan = solve_half(kLaw, kMax, u0, Side::left);
    REQUIRE(fan.states.size() == 3);
    require_good_half(fan, Side::left);
    CHECK(kLaw.phase(fan.states[0].w) == Phase::phase1);
    CHECK(kLaw.phase(fan.states[1].w) == Phase::phase3);
    CHECK(fan.waves[0].kind == WaveKind::boundary_subsonic);
    const double V = fan.waves[0].speed;
    CHECK(V > 0.0);
    CHECK(V == doctest::Approx(scan_wall_speed(kLaw, kMax, 0.7, true))
                   .epsilon(1e-8));
    // with maximal dissipation the strain behind the contact is pinned at wm
    CHECK(fan.states[1].w == 2.0);

    // data already at w = wm makes the outgoing contact degenerate
    const WaveFan degen = solve_half(kLaw, kMax, {-1.5, 2.0}, Side::left);
    CHECK(degen.states.size() == 2);
    CHECK(degen.waves[0].kind == WaveKind::boundary_subsonic);
    CHECK(degen.states[1].w == 2.0);
    CHECK(degen.states[1].v == -1.5);

    // the whole-space problem with mirrored data restricts to the same fan
    const WaveFan whole = solve_riemann(kLaw, kMax, mirror_state(u0), u0);
    REQUIRE(whole.states.size() == 5);
    CHECK(whole.states[2].v == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(whole.states[2].w ==
          doctest::Approx(fan.states[0].w).epsilon(1e-10));
    CHECK(whole.waves[2].speed == doctest::Approx(V).epsilon(1e-10));
    CHECK(whole.states[3].v ==
          doctest::Approx(fan.states[1].v).epsilon(1e-10));
}

TEST_CASE("case 2b1: data stays in phase 1") {
    const WaveFan fan = solve_half(kLaw, kMax, {-0.4, 0.8}, Side::left);
    REQUIRE(fan.states.size() == 2);
    CHECK(fan.states[0].w == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(fan.waves[0].speed == kLaw.c1());
    require_good_half(fan, Side::left);
    CHECK_THROWS_AS(solve_half(kLaw, kMax, {-4.5, 0.8}, Side::left),
                    no_solution_error);  // h0 <= -1
}

TEST_CASE("case 2b2: wall nucleates phase 3") {
    const State u0{1.5, 0.5};  // h0 = 1.25 > wMcr
    const WaveFan fan = solve_half(kLaw, kMax, u0, Side::left);
    REQUIRE(fan.states.size() == 3);
    require_good_half(fan, Side::left);
    CHECK(kLaw.phase(fan.states[0].w) == Phase::phase3);
    CHECK(kLaw.phase(fan.states[1].w) == Phase::phase1);
    const double V = fan.waves[0].speed;
    CHECK(V > 0.0);
    CHECK(V == doctest::Approx(scan_wall_speed(kLaw, kMax, 1.25, false))
                   .epsilon(1e-8));
    CHECK(fan.states[1].w == 1.0);  // pinned at wM by maximal dissipation
    CHECK(fan.waves[1].speed == kLaw.c1());

    // reflection principle against the mirrored whole-space problem
    const WaveFan whole = solve_riemann(kLaw, kMax, mirror_state(u0), u0);
    REQUIRE(whole.states.size() == 5);
    CHECK(whole.states[2].v == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(whole.states[2].w ==
          doctest::Approx(fan.states[0].w).epsilon(1e-10));
}

TEST_CASE("stationary wall boundary when the critical strain exceeds wm") {
    const MaterialLaw law(4.0, 1.0, 1.0, 2.0, 1.0, 2.5);
    const KineticFunction kf = KineticFunction::max_dissipation(law);
    const State u0{0.2, 2.0};  // h0 = 2.2 in [wm, wmcr[
    const WaveFan fan = solve_half(law, kf, u0, Side::left);
    REQUIRE(fan.states.size() == 3);
    CHECK(fan.waves[0].speed == 0.0);
    CHECK(fan.states[0].w == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(fan.states[1].v == 0.0);
    CHECK(fan.states[1].w == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(wall_trace(fan, Side::left).v == 0.0);
    const FanCheck c = check_fan(law, kf, fan);
    CHECK(c.max_rh_residual <= 1e-10);
    CHECK(c.max_kinetic_residual <= 1e-9);  // inside the jump band at V=0
}

TEST_CASE("right end mirrors the left end") {
    const State u0{-0.5, 2.0};  // mirrored h0 = 2.5 >= wmcr
    const WaveFan fan = solve_half(kLaw, kMax, u0, Side::right);
    REQUIRE(fan.states.size() == 2);
    CHECK(fan.waves[0].speed == -kLaw.c3());
    CHECK(wall_trace(fan, Side::right).v == 0.0);
    CHECK(wall_trace(fan, Side::right).w == doctest::Approx(2.5));
    require_good_half(fan, Side::right);

    // nucleating case on the right
    const WaveFan nfan = solve_half(kLaw, kMax, {1.5, 2.2}, Side::right);
    REQUIRE(nfan.states.size() == 3);
    CHECK(nfan.waves.back().kind == WaveKind::boundary_subsonic);
    CHECK(nfan.waves.back().speed < 0.0);
    require_good_half(nfan, Side::right);
}

TEST_CASE("L1 distance of wall solutions is Lipschitz in the data") {
    testsupport::Rng rng(41);
    const double A = 0.25, B = 2.0, t = 1.0;
    double worst = 0.0;
    int used = 0;
    while (used < 60) {
        const State a = testsupport::random_phase3(rng);
        const State b{a.v + rng.uniform(-0.04, 0.04),
                      a.w + rng.uniform(-0.04, 0.04)};
        if (kLaw.phase(b.w) != Phase::phase3) continue;
        const double ha = boundary_averaged_strain(kLaw, a, Side::left);
        const double hb = boundary_averaged_strain(kLaw, b, Side::left);
        // stay within one case region
        if ((ha < kLaw.wmcr()) != (hb < kLaw.wmcr())) continue;
        if (ha <= 0.05 || hb <= 0.05) continue;
        WaveFan fa, fb;
        try {
            fa = solve_half(kLaw, kMax, a, Side::left);
            fb = solve_half(kLaw, kMax, b, Side::left);
        } catch (const no_solution_error&) {
            continue;
        }
        double dist = 0.0;
        {
            std::vector<double> cuts{A, B};
            for (const auto& w : fa.waves) cuts.push_back(w.speed * t);
            for (const auto& w : fb.waves) cuts.push_back(w.speed * t);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double lo = std::max(A, cuts[i]);
                const double hi = std::min(B, cuts[i + 1]);
                if (hi <= lo) continue;
                const State sa = fa.eval(0.5 * (lo + hi) / t);
                const State sb = fb.eval(0.5 * (lo + hi) / t);
                dist += (std::abs(sa.v - sb.v) + std::abs(sa.w - sb.w)) *
                        (hi - lo);
            }
        }
        const double du = std::abs(a.v - b.v) + std::abs(a.w - b.w);
        const double denom =
            du * (B + kLaw.c1() * t - std::max(0.0, A - kLaw.c1() * t));
        if (denom > 1e-12) worst = std::max(worst, dist / denom);
        ++used;
    }
    CHECK(worst > 0.0);
    CHECK(worst < 20.0);
}

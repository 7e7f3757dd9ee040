#include "phasefront/glimm.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phasefront {

namespace {

constexpr std::uint64_t kLcgMul = 6364136223846793005ull;
constexpr std::uint64_t kLcgAdd = 1442695040888963407ull;

double lcg_to_open_interval(std::uint64_t x) {
    // 53 significant bits, offset half a step: lands strictly inside ]-1,1[.
    const double u = (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
    return 2.0 * u - 1.0;
}

}  // namespace

double van_der_corput(std::uint64_t n) {
    double u = 0.0;
    double f = 0.5;
    while (n) {
        if (n & 1ull) u += f;
        f *= 0.5;
        n >>= 1;
    }
    return 2.0 * u - 1.0;
}

SampleSequence::SampleSequence(SequenceKind kind, std::uint64_t seed)
    : kind_(kind), state_(seed) {}

double SampleSequence::value(std::uint64_t n) {
    if (kind_ == SequenceKind::van_der_corput) return van_der_corput(n);
    state_ = kLcgMul * state_ + kLcgAdd;
    return lcg_to_open_interval(state_);
}

State PiecewiseInitial::at(double x) const {
    if (segments.empty()) return x < 0.0 ? left_tail : right_tail;
    if (x < segments.front().x0) return left_tail;
    if (x >= segments.back().x1) return right_tail;
    auto it = std::upper_bound(segments.begin(), segments.end(), x,
                               [](double xx, const InitialSegment& s) {
                                   return xx < s.x1;
                               });
    const InitialSegment& s = *it;
    const double d = x - s.x0;
    return {s.v + s.dv * d, s.w + s.dw * d};
}

State PiecewiseInitial::mean(double a, double b) const {
    std::vector<double> cuts;
    if (segments.empty()) {
        if (a < 0.0 && 0.0 < b) cuts.push_back(0.0);
    } else {
        for (const auto& s : segments) {
            if (a < s.x0 && s.x0 < b) cuts.push_back(s.x0);
            if (a < s.x1 && s.x1 < b) cuts.push_back(s.x1);
        }
        std::sort(cuts.begin(), cuts.end());
    }
    // A cell inside one affine piece averages to the midpoint value, bit
    // exact for constant pieces.
    if (cuts.empty()) return at(0.5 * (a + b));
    cuts.insert(cuts.begin(), a);
    cuts.push_back(b);
    double sv = 0.0, sw = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi <= lo) continue;
        const State mid = at(0.5 * (lo + hi));
        sv += mid.v * (hi - lo);
        sw += mid.w * (hi - lo);
    }
    return {sv / (b - a), sw / (b - a)};
}

std::optional<double> PiecewiseInitial::phase_jump(
    const MaterialLaw& law) const {
    std::optional<double> jump;
    auto note = [&](double x, Phase pl, Phase pr) {
        if (pl == Phase::spinodal || pr == Phase::spinodal)
            throw std::invalid_argument(
                "initial data touches the spinodal region");
        if (pl == pr) return;
        if (jump)
            throw std::invalid_argument(
                "initial data has more than one phase jump");
        jump = x;
    };
    if (segments.empty()) {
        note(0.0, law.phase(left_tail.w), law.phase(right_tail.w));
        return jump;
    }
    note(segments.front().x0, law.phase(left_tail.w),
         law.phase(at(segments.front().x0).w));
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const InitialSegment& s = segments[i];
        const double w0 = s.w;
        const double w1 = s.w + s.dw * (s.x1 - s.x0);
        if (law.phase(w0) != law.phase(w1))
            throw std::invalid_argument(
                "initial segment crosses the spinodal region");
        note(s.x1, law.phase(w1),
             i + 1 < segments.size() ? law.phase(segments[i + 1].w)
                                     : law.phase(right_tail.w));
    }
    return jump;
}

std::pair<double, double> PiecewiseInitial::perturbation_support() const {
    if (segments.empty()) return {0.0, 0.0};
    return {std::min(0.0, segments.front().x0),
            std::max(0.0, segments.back().x1)};
}

PiecewiseInitial PiecewiseInitial::riemann(const State& uL, const State& uR) {
    PiecewiseInitial init;
    init.left_tail = uL;
    init.right_tail = uR;
    return init;
}

PiecewiseInitial PiecewiseInitial::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("initial table: cannot open " + path);
    // Rows "x v w": value (v,w) holds from x to the next row's x. The first
    // row also provides the left tail, the last row the right tail.
    std::vector<std::array<double, 3>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, v, w;
        if (ls >> x >> v >> w) rows.push_back({x, v, w});
    }
    if (rows.size() < 2)
        throw std::invalid_argument("initial table: needs at least two rows");
    PiecewiseInitial init;
    init.left_tail = {rows.front()[1], rows.front()[2]};
    init.right_tail = {rows.back()[1], rows.back()[2]};
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (!(rows[i + 1][0] > rows[i][0]))
            throw std::invalid_argument(
                "initial table: abscissas must increase");
        init.segments.push_back(
            {rows[i][0], rows[i + 1][0], rows[i][1], rows[i][2], 0.0, 0.0});
    }
    return init;
}

PiecewiseInitial perturbed_boundary(const MaterialLaw& law,
                                    const KineticFunction& kf,
                                    const PerturbSpec& spec) {
    auto [uL, uR] = pure_boundary_states(law, kf, spec.Vstar);
    PiecewiseInitial init;
    init.left_tail = uL;
    init.right_tail = uR;

    std::uint64_t s = spec.seed * kLcgMul + kLcgAdd;
    auto uniform = [&]() {
        s = kLcgMul * s + kLcgAdd;
        return lcg_to_open_interval(s);  // in ]-1,1[
    };

    const double c1 = law.c1();
    auto add_side = [&](bool left) {
        if (spec.family != PerturbFamily::both && !left) return;
        const State base = left ? uL : uR;
        const double lo = left ? -spec.support : spec.gap;
        const double hi = left ? -spec.gap : spec.support;
        const double step = (hi - lo) / spec.pieces;
        // Bases can sit exactly on a phase edge (w+ = wm for the maximally
        // dissipative boundary); force strain steps toward the interior.
        const Phase ph = law.phase(base.w);
        const bool force_up = ph == Phase::phase3 && base.w - law.wm() < 1e-9;
        const bool force_dn = ph == Phase::phase1 && law.wM() - base.w < 1e-9;
        for (int i = 0; i < spec.pieces; ++i) {
            double dv = 0.0, dw = 0.0;
            switch (spec.family) {
                case PerturbFamily::both:
                    dv = uniform();
                    dw = uniform();
                    break;
                case PerturbFamily::left_outgoing:
                    dw = uniform();
                    dv = c1 * dw;
                    break;
                case PerturbFamily::left_incoming:
                    dw = uniform();
                    dv = -c1 * dw;
                    break;
            }
            // At a pinned edge the steps must head into the phase interior
            // and the velocity step must obey |dv| <= c |dw|, otherwise the
            // averaged strain of neighbouring cells leaves the phase and
            // spurious nucleation fans appear.
            if (force_up || force_dn) {
                dw = force_up ? std::abs(dw) : -std::abs(dw);
                const double c = law.wave_speed(base.w);
                dv = c * uniform() * dw;
            }
            if (spec.family == PerturbFamily::left_outgoing) dv = c1 * dw;
            if (spec.family == PerturbFamily::left_incoming) dv = -c1 * dw;
            init.segments.push_back({lo + i * step, lo + (i + 1) * step,
                                     base.v + dv, base.w + dw, 0.0, 0.0});
        }
        if (left) {
            // Close the gap next to the boundary with the base state so the
            // jump at 0 stays exactly (uL*, uR*).
            init.segments.push_back({-spec.gap, 0.0, base.v, base.w, 0.0, 0.0});
        } else {
            init.segments.insert(
                init.segments.begin() +
                    (spec.family == PerturbFamily::both ? spec.pieces + 1 : 0),
                {0.0, spec.gap, base.v, base.w, 0.0, 0.0});
        }
    };
    add_side(true);
    add_side(false);

    // Scale the raw staircase so the total variation of the deviation equals
    // the requested amplitude, then clamp strains into their phases.
    PiecewiseInitial raw = init;
    double tv = 0.0;
    auto jump = [&](const State& a, const State& b) {
        return std::abs(b.v - a.v) + std::abs(b.w - a.w);
    };
    State prev = raw.left_tail;
    for (const auto& seg : raw.segments) {
        tv += jump(prev, {seg.v, seg.w});
        prev = {seg.v, seg.w};
    }
    tv += jump(prev, raw.right_tail);
    // The deviation TV excludes the boundary jump itself.
    tv -= jump(raw.left_tail, raw.right_tail) > 0.0
              ? std::abs(uR.v - uL.v) + std::abs(uR.w - uL.w)
              : 0.0;
    const double scale = tv > 0.0 ? spec.amplitude / tv : 0.0;
    for (std::size_t i = 0; i < init.segments.size(); ++i) {
        const bool left = init.segments[i].x1 <= 0.0;
        const State base = left ? uL : uR;
        init.segments[i].v = base.v + (raw.segments[i].v - base.v) * scale;
        init.segments[i].w = base.w + (raw.segments[i].w - base.w) * scale;
    }
    return init;
}

LevelRecord project_initial(const MaterialLaw& law,
                            const PiecewiseInitial& init, double h, long m0,
                            long ncell) {
    LevelRecord lvl;
    lvl.t = 0.0;
    lvl.m0 = m0;
    lvl.cells.reserve(ncell);
    const auto jump = init.phase_jump(law);
    for (long j = 0; j < ncell; ++j) {
        const double a = (m0 + 2 * j) * h;
        const double b = a + 2.0 * h;
        State cell;
        if (jump && *jump > a + 1e-12 * h && *jump < b - 1e-12 * h) {
            // One-sided average; the jump is snapped to the nearest edge.
            if (*jump - a <= b - *jump)
                cell = init.mean(*jump, b);
            else
                cell = init.mean(a, *jump);
        } else {
            cell = init.mean(a, b);
        }
        if (law.phase(cell.w) == Phase::spinodal)
            throw std::invalid_argument(
                "project_initial: cell average fell into the spinodal at x=" +
                std::to_string(0.5 * (a + b)));
        lvl.cells.push_back(cell);
    }
    return lvl;
}

State Strip::cell_value(double x) const {
    const long m0 = level->m0;
    const double left_edge = m0 * h;
    const long j = static_cast<long>(std::floor((x - left_edge) / (2.0 * h)));
    if (j < 0) return tailL;
    if (j >= static_cast<long>(level->cells.size())) return tailR;
    return level->cells[j];
}

State Strip::eval(double x, double dt) const {
    if (domain == DomainKind::half) {
        if (side == Side::left && x < wall_x)
            return mirrored(eval(2.0 * wall_x - x, dt));
        if (side == Side::right && x > wall_x)
            return mirrored(eval(2.0 * wall_x - x, dt));
    }
    const double reach = law->c1() * dt;
    auto it = std::lower_bound(fan_x.begin(), fan_x.end(), x);
    for (long k = static_cast<long>(it - fan_x.begin()) - 1;
         k <= static_cast<long>(it - fan_x.begin()); ++k) {
        if (k < 0 || k >= static_cast<long>(fan_x.size())) continue;
        if (std::abs(x - fan_x[k]) <= reach)
            return fans[k].eval((x - fan_x[k]) / dt);
    }
    return cell_value(x);
}

Strip advance_strip(const GlimmRun& run, std::size_t n, int threads) {
    const LevelRecord& lvl = run.levels.at(n);
    const MaterialLaw& law = run.law;
    const KineticFunction& kf = run.kf;
    const double h = run.cfg.h;
    const long C = static_cast<long>(lvl.cells.size());
    const bool wall_left =
        run.cfg.domain == DomainKind::half && run.cfg.side == Side::left;
    const bool wall_right =
        run.cfg.domain == DomainKind::half && run.cfg.side == Side::right;
    const double wall_x = wall_left ? 0.0 : run.cfg.xmax;

    Strip strip;
    strip.law = &law;
    strip.h = h;
    strip.tau = run.tau;
    strip.level = &lvl;
    strip.tailL = run.tailL;
    strip.tailR = run.tailR;
    strip.domain = run.cfg.domain;
    strip.wall_x = wall_x;
    strip.side = run.cfg.side;

    struct Job {
        double x;
        long left_cell;  // -1 = left tail; C = right tail; -2 = wall
    };
    std::vector<Job> jobs;
    for (long i = 0; i <= C; ++i) {
        const double x = (lvl.m0 + 2 * i) * h;
        if (wall_left && x <= wall_x + 1e-12 * h) continue;
        if (wall_right && x >= wall_x - 1e-12 * h) continue;
        jobs.push_back({x, i - 1});
    }
    if (wall_left) jobs.insert(jobs.begin(), {wall_x, -2});
    if (wall_right) jobs.push_back({wall_x, -2});

    strip.fan_x.resize(jobs.size());
    strip.fans.resize(jobs.size());
    std::string error;
    std::atomic<bool> failed{false};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) \
    if (threads > 1)
#endif
    for (long idx = 0; idx < static_cast<long>(jobs.size()); ++idx) {
        if (failed.load(std::memory_order_relaxed)) continue;
        const Job& job = jobs[idx];
        strip.fan_x[idx] = job.x;
        try {
            if (job.left_cell == -2) {
                const State& u0 =
                    wall_left ? lvl.cells.front() : lvl.cells.back();
                strip.fans[idx] = solve_half(
                    law, kf, u0, wall_left ? Side::left : Side::right);
            } else {
                const State& a =
                    job.left_cell < 0 ? run.tailL : lvl.cells[job.left_cell];
                const State& b = job.left_cell + 1 >= C
                                     ? run.tailR
                                     : lvl.cells[job.left_cell + 1];
                strip.fans[idx] = solve_riemann(law, kf, a, b);
            }
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!failed.exchange(true)) {
                    error = "strip " + std::to_string(n) + ", interface x=" +
                            std::to_string(job.x) + ": " + e.what();
                }
            }
        }
    }
    if (failed) throw no_solution_error(error);
    return strip;
}

LevelRecord sample_step(const Strip& strip, const LevelRecord& level,
                        double a, double t_next) {
    LevelRecord next;
    next.t = t_next;
    next.m0 = (level.m0 & 1) ? level.m0 + 1 : level.m0 - 1;
    const long ncell = static_cast<long>(level.cells.size());
    next.cells.reserve(ncell);
    const double h = strip.h;
    for (long j = 0; j < ncell; ++j) {
        const double center = (next.m0 + 2 * j + 1) * h;
        double xs = center + a * h;
        // The cell straddling a wall is physically its in-domain half; fold
        // the sample point back inside (|a| is again equidistributed).
        if (strip.domain == DomainKind::half) {
            if (strip.side == Side::left && xs < strip.wall_x)
                xs = 2.0 * strip.wall_x - xs;
            if (strip.side == Side::right && xs > strip.wall_x)
                xs = 2.0 * strip.wall_x - xs;
        }
        next.cells.push_back(strip.eval(xs, strip.tau));
    }
    return next;
}

namespace {

// Reflection x -> xmax - x of the initial data, used to run right-end walls
// in left-wall coordinates.
PiecewiseInitial reflect_initial(const PiecewiseInitial& init, double origin) {
    PiecewiseInitial out;
    out.left_tail = mirrored(init.right_tail);
    out.right_tail = mirrored(init.left_tail);
    if (init.segments.empty()) {
        if (!(init.left_tail == init.right_tail)) {
            // keep the tail split (originally at x = 0) at origin
            out.segments.push_back({origin - 1.0, origin,
                                    out.left_tail.v, out.left_tail.w, 0.0,
                                    0.0});
        }
        return out;
    }
    for (auto it = init.segments.rbegin(); it != init.segments.rend(); ++it) {
        const double len = it->x1 - it->x0;
        InitialSegment s;
        s.x0 = origin - it->x1;
        s.x1 = origin - it->x0;
        s.v = -(it->v + it->dv * len);
        s.dv = it->dv;
        s.w = it->w + it->dw * len;
        s.dw = -it->dw;
        out.segments.push_back(s);
    }
    return out;
}

// Runs a right-end wall in mirrored coordinates, then maps levels, track and
// boundary records back to the physical frame (edges stay on the h lattice
// because xmax is an even multiple of h).
GlimmRun reflect_right_run(const MaterialLaw& law, const KineticFunction& kf,
                           const PiecewiseInitial& init,
                           const GlimmConfig& cfg) {
    const double h = cfg.h;
    const double ratio = cfg.xmax / h;
    const long E = std::lround(ratio / 2.0) * 2;
    if (std::abs(ratio - static_cast<double>(E)) > 1e-9)
        throw std::invalid_argument(
            "glimm: half(right) requires xmax to be an even multiple of h");
    GlimmConfig inner_cfg = cfg;
    inner_cfg.side = Side::left;
    inner_cfg.xmin = 0.0;
    inner_cfg.xmax = cfg.xmax - cfg.xmin;
    const GlimmRun inner =
        glimm_run(law, kf, reflect_initial(init, cfg.xmax), inner_cfg);

    GlimmRun out{law, kf, cfg, init};
    out.cfg.lambda = inner.cfg.lambda;
    out.tau = inner.tau;
    out.ncell = inner.ncell;
    out.M0 = E - 2 * inner.ncell;
    out.a = inner.a;
    out.warnings = inner.warnings;
    out.has_boundary = inner.has_boundary;
    out.Vstar = -inner.Vstar;
    out.characteristic = inner.characteristic;
    out.tailL = mirrored(inner.tailR);
    out.tailR = mirrored(inner.tailL);
    out.levels.reserve(inner.levels.size());
    for (const auto& lvl : inner.levels) {
        LevelRecord r;
        r.t = lvl.t;
        r.m0 = E - (lvl.m0 + 2 * static_cast<long>(lvl.cells.size()));
        r.cells.reserve(lvl.cells.size());
        for (auto it = lvl.cells.rbegin(); it != lvl.cells.rend(); ++it)
            r.cells.push_back(mirrored(*it));
        r.boundary_edge = lvl.boundary_edge == kNoBoundary
                              ? kNoBoundary
                              : E - lvl.boundary_edge;
        out.levels.push_back(std::move(r));
    }
    out.boundary.reserve(inner.boundary.size());
    for (const auto& b : inner.boundary) {
        StripRecord r;
        r.speed = -b.speed;
        r.left = mirrored(b.right);
        r.right = mirrored(b.left);
        r.kind = b.kind;
        out.boundary.push_back(r);
    }
    return out;
}

// Locates cross-phase interfaces of a level (tails included for the open
// sides). Returns the count and the edge index m (x = m h) of the last one.
std::pair<int, long> scan_boundary(const GlimmRun& run,
                                   const LevelRecord& lvl) {
    const bool wall_left =
        run.cfg.domain == DomainKind::half && run.cfg.side == Side::left;
    const bool wall_right =
        run.cfg.domain == DomainKind::half && run.cfg.side == Side::right;
    int count = 0;
    long edge = kNoBoundary;
    const long C = static_cast<long>(lvl.cells.size());
    Phase prev = run.law.phase(wall_left ? lvl.cells.front().w
                                         : run.tailL.w);
    for (long j = wall_left ? 1 : 0; j <= (wall_right ? C - 1 : C); ++j) {
        const Phase cur = j == C ? run.law.phase(run.tailR.w)
                                 : run.law.phase(lvl.cells[j].w);
        if (cur != prev) {
            ++count;
            edge = lvl.m0 + 2 * j;
        }
        prev = cur;
    }
    return {count, edge};
}

}  // namespace

double GlimmRun::chi(std::size_t n) const {
    return levels.at(n).boundary_edge * cfg.h;
}

double GlimmRun::chi_at(double t) const {
    if (boundary.empty()) return std::nan("");
    const std::size_t n =
        std::min<std::size_t>(level_at(t), boundary.size() - 1);
    return chi(n) + boundary[n].speed * (t - levels[n].t);
}

double GlimmRun::cell_left_x(std::size_t lvl, std::size_t j) const {
    const double x = (levels[lvl].m0 + 2 * static_cast<long>(j)) * cfg.h;
    if (cfg.domain == DomainKind::half && cfg.side == Side::left)
        return std::max(0.0, x);
    return x;
}

double GlimmRun::cell_width(std::size_t lvl, std::size_t j) const {
    const double x0 = (levels[lvl].m0 + 2 * static_cast<long>(j)) * cfg.h;
    double x1 = x0 + 2.0 * cfg.h;
    double lo = x0;
    if (cfg.domain == DomainKind::half && cfg.side == Side::left)
        lo = std::max(0.0, x0);
    if (cfg.domain == DomainKind::half && cfg.side == Side::right)
        x1 = std::min(cfg.xmax, x1);
    return x1 - lo;
}

std::size_t GlimmRun::level_at(double t) const {
    if (t <= 0.0) return 0;
    const auto n = static_cast<std::size_t>(std::floor(t / tau + 1e-9));
    return std::min(n, levels.size() - 1);
}

State GlimmRun::value_at(double t, double x) const {
    const LevelRecord& lvl = levels[level_at(t)];
    const long j =
        static_cast<long>(std::floor((x - lvl.m0 * cfg.h) / (2.0 * cfg.h)));
    if (j < 0) return tailL;
    if (j >= static_cast<long>(lvl.cells.size())) return tailR;
    return lvl.cells[j];
}

GlimmRun glimm_run(const MaterialLaw& law, const KineticFunction& kf,
                   const PiecewiseInitial& init, const GlimmConfig& cfg_in) {
    GlimmRun run{law, kf, cfg_in, init};
    GlimmConfig& cfg = run.cfg;
    if (!(cfg.h > 0.0)) throw std::invalid_argument("glimm: h must be > 0");
    if (cfg.lambda == 0.0) cfg.lambda = law.c1() / 0.9;
    if (!(cfg.lambda > law.c1()))
        throw std::invalid_argument("glimm: CFL requires lambda > c1");
    if (cfg.domain == DomainKind::half && !(cfg.lambda >= 2.0 * law.c1()))
        throw std::invalid_argument(
            "glimm: half-domain runs require lambda >= 2 c1 (wall fans sit "
            "one cell from the first interior interface)");
    if (!(cfg.t_end > 0.0))
        throw std::invalid_argument("glimm: t_end must be > 0");
    if (cfg.domain == DomainKind::half && cfg.side == Side::left &&
        std::abs(cfg.xmin) > 1e-12)
        throw std::invalid_argument("glimm: half(left) requires xmin = 0");

    run.tau = cfg.h / cfg.lambda;
    const double h = cfg.h;

    if (cfg.domain == DomainKind::half && cfg.side == Side::right)
        return reflect_right_run(law, kf, init, cfg);

    PiecewiseInitial data = init;
    run.tailL = data.left_tail;
    run.tailR = data.right_tail;

    // Grid anchor: edges at integer multiples of h, level-0 cells starting
    // at an even multiple at or below xmin.
    run.M0 = 2 * static_cast<long>(std::floor(cfg.xmin / (2.0 * h)));
    if (cfg.domain == DomainKind::half) run.M0 = 0;
    run.ncell =
        static_cast<long>(std::ceil((cfg.xmax / h - run.M0) / 2.0 - 1e-9));
    if (cfg.domain == DomainKind::half)
        run.ncell = static_cast<long>(std::floor(cfg.xmax / (2.0 * h))) + 1;
    if (run.ncell < 4)
        throw std::invalid_argument("glimm: domain is under four cells wide");

    // The truncated grid is exact as long as no wave from the data support
    // can reach the artificial edges before t_end.
    const auto [s_lo, s_hi] = data.perturbation_support();
    const double margin = law.c1() * cfg.t_end + 4.0 * h;
    if (cfg.domain == DomainKind::full) {
        if (run.M0 * h > s_lo - margin ||
            (run.M0 + 2 * run.ncell) * h < s_hi + margin)
            throw std::invalid_argument(
                "glimm: spatial extent too narrow, the domain of dependence "
                "reaches the truncation edge before t_end");
    } else {
        if ((run.M0 + 2 * run.ncell) * h < s_hi + margin)
            throw std::invalid_argument(
                "glimm: spatial extent too narrow on the open side");
    }

    run.levels.push_back(project_initial(law, data, h, run.M0, run.ncell));
    {
        auto [count, edge] = scan_boundary(run, run.levels[0]);
        if (count > 1)
            throw no_solution_error(
                "glimm: initial data projects to multiple phase boundaries");
        run.has_boundary = count == 1;
        run.levels[0].boundary_edge = edge;
    }

    if (run.has_boundary && cfg.domain == DomainKind::full) {
        const WaveFan base = solve_riemann(law, kf, run.tailL, run.tailR);
        const int bi = base.boundary_index();
        if (bi >= 0) {
            run.Vstar = base.waves[bi].speed;
            run.characteristic =
                std::abs(std::abs(run.Vstar) - law.c3()) <= 1e-9;
            if (run.characteristic) {
                const double wlim = kf.limit_strain_at_c3();
                const bool ok =
                    run.Vstar > 0.0
                        ? std::abs(run.tailL.w) <= 1e-9 &&
                              std::abs(run.tailR.w - wlim) <= 1e-9
                        : std::abs(run.tailR.w) <= 1e-9 &&
                              std::abs(run.tailL.w - wlim) <= 1e-9;
                if (!ok)
                    run.warnings.push_back(
                        "characteristic boundary without the no-strong-wave "
                        "condition (wL*=0, wR*=sqrt(phi'(c3)/c3)); total "
                        "variation may not stay bounded");
            }
        }
    }

    const auto steps = static_cast<std::size_t>(
        std::ceil(cfg.t_end / run.tau - 1e-12));
    run.levels.reserve(steps + 1);
    run.a.assign(1, 0.0);
    SampleSequence seq(cfg.sequence, cfg.seed);

    for (std::size_t n = 0; n < steps; ++n) {
        const Strip strip = advance_strip(run, n, cfg.threads);

        if (run.has_boundary) {
            StripRecord rec;
            const double bx = run.levels[n].boundary_edge * h;
            bool found = false;
            for (std::size_t i = 0; i < strip.fan_x.size(); ++i) {
                if (std::abs(strip.fan_x[i] - bx) > 1e-9 * h) continue;
                const int bi = strip.fans[i].boundary_index();
                if (bi < 0) break;
                rec.speed = strip.fans[i].waves[bi].speed;
                rec.left = strip.fans[i].states[bi];
                rec.right = strip.fans[i].states[bi + 1];
                rec.kind = strip.fans[i].waves[bi].kind;
                found = true;
                break;
            }
            if (!found)
                throw no_solution_error(
                    "glimm: lost the phase boundary at level " +
                    std::to_string(n));
            run.boundary.push_back(rec);
        }

        const double a = seq.value(n + 1);
        run.a.push_back(a);
        LevelRecord next =
            sample_step(strip, run.levels[n], a, (n + 1) * run.tau);

        auto [count, edge] = scan_boundary(run, next);
        const int expected = run.has_boundary ? 1 : 0;
        if (count != expected) {
            std::ostringstream dump;
            dump << "glimm: phase-boundary count " << count << " (expected "
                 << expected << ") after sampling level " << (n + 1)
                 << " at t=" << next.t << ", a=" << a
                 << "; previous boundary edge x="
                 << (run.has_boundary ? run.levels[n].boundary_edge * h : 0.0);
            throw no_solution_error(dump.str());
        }
        next.boundary_edge = edge;
        run.levels.push_back(std::move(next));
    }
    return run;
}

}  // namespace phasefront

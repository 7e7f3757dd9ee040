#ifndef PHASEFRONT_GLIMM_HPP_
#define PHASEFRONT_GLIMM_HPP_

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phasefront/riemann_full.hpp"
#include "phasefront/riemann_half.hpp"

namespace phasefront {

enum class SequenceKind { van_der_corput, linear_congruential };
enum class DomainKind { full, half };

// Radical-inverse (base 2) of n mapped onto ]-1,1[.
double van_der_corput(std::uint64_t n);

// Deterministic equidistributed sampling values a_n, n >= 1.
class SampleSequence {
  public:
    SampleSequence(SequenceKind kind, std::uint64_t seed);
    double value(std::uint64_t n);  // must be called with n = 1,2,3,...

  private:
    SequenceKind kind_;
    std::uint64_t state_;
};

// Initial data: constant tails, affine segments in between, at most one
// cross-phase jump.
struct InitialSegment {
    double x0 = 0.0, x1 = 0.0;       // [x0, x1)
    double v = 0.0, w = 0.0;         // value at x0
    double dv = 0.0, dw = 0.0;       // slopes
};

struct PiecewiseInitial {
    State left_tail;
    State right_tail;
    std::vector<InitialSegment> segments;  // sorted, contiguous

    State at(double x) const;
    // Exact mean over [a, b) (b > a).
    State mean(double a, double b) const;
    // Location of the single cross-phase jump, if any.
    std::optional<double> phase_jump(const MaterialLaw& law) const;
    // Support of the deviation from the tails, [lo, hi] (empty -> {0,0}).
    std::pair<double, double> perturbation_support() const;

    static PiecewiseInitial riemann(const State& uL, const State& uR);
    static PiecewiseInitial from_table_file(const std::string& path);
};

// Staircase perturbation families for stability experiments.
enum class PerturbFamily {
    both,             // independent v and w steps on both sides
    left_outgoing,    // left side only, varying v + c1 w (leaves the
                      // boundary untouched: only -c1 waves are created)
    left_incoming,    // left side only, varying v - c1 w
};

struct PerturbSpec {
    double Vstar = 0.3;       // speed of the unperturbed boundary
    double amplitude = 0.01;  // total variation budget per side
    int pieces = 8;
    double support = 0.6;     // steps live in [-support, -gap] u [gap, support]
    double gap = 0.05;
    std::uint64_t seed = 1;
    PerturbFamily family = PerturbFamily::both;
};

PiecewiseInitial perturbed_boundary(const MaterialLaw& law,
                                    const KineticFunction& kf,
                                    const PerturbSpec& spec);

struct GlimmConfig {
    double h = 0.01;
    double lambda = 0.0;  // h/tau; 0 selects the default c1/0.9
    double t_end = 1.0;
    double xmin = -4.0, xmax = 4.0;
    SequenceKind sequence = SequenceKind::van_der_corput;
    std::uint64_t seed = 12345;
    DomainKind domain = DomainKind::full;
    Side side = Side::left;
    int threads = 1;
};

constexpr long kNoBoundary = LONG_MIN;

struct LevelRecord {
    double t = 0.0;
    long m0 = 0;               // cells are [(m0+2j) h, (m0+2j+2) h)
    std::vector<State> cells;
    long boundary_edge = kNoBoundary;  // x = boundary_edge * h
};

struct StripRecord {
    double speed = 0.0;  // chi-dot on this slab
    State left, right;   // states adjacent to the boundary wave
    WaveKind kind = WaveKind::boundary_subsonic;
};

// Solution of one strip: the interface fans plus the level supplying the
// constant regions between the wave cones.
struct Strip {
    const MaterialLaw* law = nullptr;
    double h = 0.0, tau = 0.0;
    std::vector<double> fan_x;
    std::vector<WaveFan> fans;
    const LevelRecord* level = nullptr;
    State tailL, tailR;
    DomainKind domain = DomainKind::full;
    double wall_x = 0.0;
    Side side = Side::left;

    // Solution at (t0 + dt, x), 0 < dt <= tau.
    State eval(double x, double dt) const;
    State cell_value(double x) const;
};

struct GlimmRun {
    MaterialLaw law;
    KineticFunction kf;
    GlimmConfig cfg;
    PiecewiseInitial init;
    double tau = 0.0;
    long M0 = 0;   // even anchor: level n has m0 = M0 - (n % 2)
    long ncell = 0;
    std::vector<LevelRecord> levels{};
    std::vector<double> a{};             // a[n] produced the restart to level n
    std::vector<StripRecord> boundary{};  // per strip, when tracking a boundary
    bool has_boundary = false;
    double Vstar = 0.0;
    bool characteristic = false;
    State tailL{}, tailR{};
    std::vector<std::string> warnings{};

    double chi(std::size_t n) const;      // boundary position at level n
    double chi_at(double t) const;        // piecewise-linear track
    double cell_width(std::size_t lvl, std::size_t j) const;
    double cell_left_x(std::size_t lvl, std::size_t j) const;
    State value_at(double t, double x) const;  // active-level cell value
    std::size_t level_at(double t) const;
};

// Projection (cell averages over the staggered grid) of the initial data.
// A cell containing the cross-phase jump is not averaged across the jump:
// the jump is snapped to the nearest edge and the cell keeps the one-sided
// average.
LevelRecord project_initial(const MaterialLaw& law,
                            const PiecewiseInitial& init, double h, long m0,
                            long ncell);

// Exact Riemann fans at every interface of the given level (plus the wall
// fan for half domains). Per-cell solves are independent; threads > 1 runs
// them with OpenMP, bit-identical to the serial path.
Strip advance_strip(const GlimmRun& run, std::size_t n, int threads);

// Random-choice restart: each new cell takes the strip solution at
// its center shifted by a*h.
LevelRecord sample_step(const Strip& strip, const LevelRecord& level,
                        double a, double t_next);

GlimmRun glimm_run(const MaterialLaw& law, const KineticFunction& kf,
                   const PiecewiseInitial& init, const GlimmConfig& cfg);

}  // namespace phasefront

#endif  // PHASEFRONT_GLIMM_HPP_

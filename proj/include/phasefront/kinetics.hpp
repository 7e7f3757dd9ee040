#ifndef PHASEFRONT_KINETICS_HPP_
#define PHASEFRONT_KINETICS_HPP_

#include <string>
#include <vector>

#include "phasefront/material.hpp"

namespace phasefront {

// Lower bound psi_min for the entropy dissipation function, defined on
// ]-c3, 0]. Diverges to -inf as V -> -c3.
double psi_min(const MaterialLaw& law, double V);

// Upper bound psi_max on [0, c3]; psi_max(c3) = (k1-k3)/2 * wM * wm.
double psi_max(const MaterialLaw& law, double V);

// Entropy dissipation function phi on ]-c3, c3]. Either the maximally
// dissipative choice (psi_min below 0, psi_max above) or a tabulated
// monotone interpolant clamped into the admissible band
//   psi_min(V) <= phi(V) <= 0 on ]-c3,0],  0 <= phi(V) <= psi_max(V) on [0,c3].
//
// The maximally dissipative function jumps at V=0, so evaluation exposes the
// one-sided values at_zero_minus()/at_zero_plus(); eval() requires V != 0.
class KineticFunction {
  public:
    static KineticFunction max_dissipation(const MaterialLaw& law);
    // Table rows are (V, phi) pairs; abscissas must be strictly increasing,
    // ordinates nondecreasing and inside the band. Evaluation outside the
    // tabulated range is an error (no extrapolation).
    static KineticFunction tabulated(const MaterialLaw& law,
                                     std::vector<std::pair<double, double>> table);
    static KineticFunction tabulated_from_file(const MaterialLaw& law,
                                               const std::string& path);

    bool is_max_dissipation() const { return table_.empty(); }
    const MaterialLaw& law() const { return law_; }

    double eval(double V) const;
    double at_zero_minus() const;
    double at_zero_plus() const;

    // Range on which eval() is defined (tables do not extrapolate).
    double domain_min() const;
    double domain_max() const;

    // One-sided value at V approaching zero from sign(direction).
    double near_zero(int direction) const {
        return direction < 0 ? at_zero_minus() : at_zero_plus();
    }

    // phi'(c3-), closed form for max dissipation, one-sided finite
    // difference (step 1e-6*c3) for tabulated functions.
    double right_derivative_at_c3() const;

    // Strain reached on the phase-3 side of a vanishing-strength boundary,
    // sqrt(phi'(c3)/c3); equals wm for the maximally dissipative function.
    double limit_strain_at_c3() const;

  private:
    explicit KineticFunction(const MaterialLaw& law) : law_(law) {}

    MaterialLaw law_;
    std::vector<std::pair<double, double>> table_;  // empty = max dissipation

    void validate_table() const;
    double eval_zero_interp() const;
};

// A tabulated kinetic function strictly inside the admissible band (half of
// the bound, ramped up to meet psi_max at c3). Unlike the maximally
// dissipative choice it keeps the Riemann intermediate states away from the
// phase edges, which is what perturbation experiments need.
KineticFunction sample_interior_kinetic(const MaterialLaw& law,
                                        int nodes = 2000);

// Entropy dissipation rate across a discontinuity from uL to uR, defined as
// the integral of sigma(y) - (sigma(wL)+sigma(wR))/2 over [wL, wR]. Exactly
// zero within a single phase (contacts dissipate nothing); reduces to
// (k1-k3)/2 * (wM*wm - wL*wR) for a phase-1 -> phase-3 jump. Positive sign
// convention: across a subsonic boundary of speed V the kinetic relation
// requires rate = phi(V) when the left state is in phase 1 and
// rate = -phi(-V) when the left state is in phase 3.
double entropy_dissipation_rate(const MaterialLaw& law, const State& uL,
                                const State& uR);

// Target value of entropy_dissipation_rate prescribed by the kinetic relation
// for a subsonic boundary of speed V != 0 with left state in the given phase.
double kinetic_target(const KineticFunction& kf, double V, Phase left_phase);

// |rate - kinetic target| for a subsonic boundary. A stationary boundary
// (V = 0) is admissible for any rate inside the one-sided band, so the
// residual there is the distance to that interval.
double kinetic_relation_residual(const KineticFunction& kf, double V,
                                 Phase left_phase, double rate);

}  // namespace phasefront

#endif  // PHASEFRONT_KINETICS_HPP_

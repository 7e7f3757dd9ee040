#ifndef PHASEFRONT_MATERIAL_HPP_
#define PHASEFRONT_MATERIAL_HPP_

#include <stdexcept>
#include <string>

namespace phasefront {

// Phase regions of the trilinear stress law. Phase1 is the low-strain
// ascending branch (-1 < w <= wM), Phase3 the high-strain ascending branch
// (w >= wm). The descending branch in between (the spinodal) is unstable and
// admissible states never take values there.
enum class Phase { phase1, phase3, spinodal };

struct State {
    double v = 0.0;  // velocity
    double w = 0.0;  // strain (deformation gradient), w > -1

    friend bool operator==(const State&, const State&) = default;
};

// Image of a state under the reflection x -> -x.
inline State mirrored(const State& u) { return {-u.v, u.w}; }

// Trilinear constitutive record. Stress rises with slope k1 up to (wM, sigmaM),
// falls linearly to (wm, sigmam), then rises with slope k3. All derived
// constants are fixed at construction; instances are immutable and safe to
// share across threads.
class MaterialLaw {
  public:
    MaterialLaw(double k1, double k3, double wM, double wm);
    MaterialLaw(double k1, double k3, double wM, double wm,
                double wMcr, double wmcr);

    double k1() const { return k1_; }
    double k3() const { return k3_; }
    double wM() const { return wM_; }
    double wm() const { return wm_; }
    double wMcr() const { return wMcr_; }
    double wmcr() const { return wmcr_; }

    double c1() const { return c1_; }
    double c3() const { return c3_; }
    double sigmaM() const { return sigmaM_; }
    double sigmam() const { return sigmam_; }
    double sigma0() const { return sigma0_; }

    // (k1 - k3)/2, the prefactor of the cross-phase dissipation formulas.
    double half_dk() const { return half_dk_; }

    Phase phase(double w) const;
    Phase phase(const State& u) const { return phase(u.w); }

    // Three-branch stress; continuous at both knots. Throws std::domain_error
    // for w <= -1.
    double sigma(double w) const;

    // Internal energy W(w), the integral of sigma from 0 to w. Piecewise
    // quadratic, C1 across the knots, W(0) = 0.
    double energy(double w) const;

    // Entropy pair U = W(w) + v^2/2, F = -sigma(w) v. Rejects spinodal states.
    struct EntropyPair {
        double U;
        double F;
    };
    EntropyPair entropy_pair(const State& u) const;

    // Characteristic speed c1 in phase 1, c3 in phase 3; undefined (throws)
    // on the spinodal.
    double wave_speed(double w) const;

    void require_off_spinodal(const State& u, const char* who) const;

  private:
    double k1_, k3_, wM_, wm_, wMcr_, wmcr_;
    double c1_, c3_, sigmaM_, sigmam_, sigma0_, half_dk_;
    double mid_slope_;   // slope of the descending branch
    double energy_wM_;   // W(wM)
    double energy_wm_;   // W(wm)

    void validate() const;
};

}  // namespace phasefront

#endif  // PHASEFRONT_MATERIAL_HPP_

#include "phasefront/material.hpp"

#include <cmath>

namespace phasefront {

MaterialLaw::MaterialLaw(double k1, double k3, double wM, double wm)
    : MaterialLaw(k1, k3, wM, wm, wM, wm) {}

MaterialLaw::MaterialLaw(double k1, double k3, double wM, double wm,
                         double wMcr, double wmcr)
    : k1_(k1), k3_(k3), wM_(wM), wm_(wm), wMcr_(wMcr), wmcr_(wmcr) {
    validate();
    c1_ = std::sqrt(k1_);
    c3_ = std::sqrt(k3_);
    sigmaM_ = k1_ * wM_;
    sigmam_ = k3_ * wm_;
    sigma0_ = std::sqrt(sigmam_ * sigmaM_);
    half_dk_ = 0.5 * (k1_ - k3_);
    mid_slope_ = (sigmam_ - sigmaM_) / (wm_ - wM_);
    energy_wM_ = 0.5 * k1_ * wM_ * wM_;
    energy_wm_ = energy_wM_ + 0.5 * (sigmaM_ + sigmam_) * (wm_ - wM_);
}

void MaterialLaw::validate() const {
    if (!(0.0 < k3_ && k3_ < k1_))
        throw std::invalid_argument("material: requires 0 < k3 < k1");
    if (!(0.0 < wM_ && wM_ < wm_))
        throw std::invalid_argument("material: requires 0 < wM < wm");
    // The descending middle branch needs sigmaM > sigmam, otherwise the
    // stress is monotone and there is no unstable phase.
    if (!(k1_ * wM_ > k3_ * wm_))
        throw std::invalid_argument("material: requires k1*wM > k3*wm");
    const double s0 = std::sqrt(k1_ * wM_ * k3_ * wm_);
    if (!(s0 / k1_ <= wMcr_ && wMcr_ <= wM_))
        throw std::invalid_argument(
            "material: wMcr must lie in [sigma0/k1, wM]");
    if (!(wm_ <= wmcr_ && wmcr_ <= s0 / k3_))
        throw std::invalid_argument(
            "material: wmcr must lie in [wm, sigma0/k3]");
}

Phase MaterialLaw::phase(double w) const {
    if (w <= -1.0)
        throw std::domain_error("material: strain must satisfy w > -1");
    if (w <= wM_) return Phase::phase1;
    if (w >= wm_) return Phase::phase3;
    return Phase::spinodal;
}

double MaterialLaw::sigma(double w) const {
    if (w <= -1.0)
        throw std::domain_error("material: strain must satisfy w > -1");
    if (w <= wM_) return k1_ * w;
    if (w >= wm_) return k3_ * w;
    return sigmam_ + mid_slope_ * (w - wm_);
}

double MaterialLaw::energy(double w) const {
    if (w <= -1.0)
        throw std::domain_error("material: strain must satisfy w > -1");
    if (w <= wM_) return 0.5 * k1_ * w * w;
    if (w >= wm_) return energy_wm_ + 0.5 * k3_ * (w * w - wm_ * wm_);
    const double d = w - wM_;
    return energy_wM_ + sigmaM_ * d + 0.5 * mid_slope_ * d * d;
}

MaterialLaw::EntropyPair MaterialLaw::entropy_pair(const State& u) const {
    require_off_spinodal(u, "entropy_pair");
    return {energy(u.w) + 0.5 * u.v * u.v, -sigma(u.w) * u.v};
}

double MaterialLaw::wave_speed(double w) const {
    switch (phase(w)) {
        case Phase::phase1: return c1_;
        case Phase::phase3: return c3_;
        default:
            throw std::domain_error(
                "material: wave speed undefined on the spinodal");
    }
}

void MaterialLaw::require_off_spinodal(const State& u, const char* who) const {
    if (phase(u.w) == Phase::spinodal)
        throw std::domain_error(std::string(who) +
                                ": state lies in the spinodal region (w=" +
                                std::to_string(u.w) + ")");
}

}  // namespace phasefront

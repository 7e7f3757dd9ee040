#include "phasefront/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace phasefront {

namespace {

// Evaluation is cut off this close to -c3, where psi_min diverges.
double lower_cutoff(const MaterialLaw& law) {
    return -law.c3() * (1.0 - 1e-12);
}

}  // namespace

double psi_min(const MaterialLaw& law, double V) {
    if (V < lower_cutoff(law) || V > 0.0)
        throw std::domain_error("psi_min: V must lie in ]-c3, 0]");
    const double V2 = V * V;
    return law.half_dk() * law.wM() *
           (law.wm() - (law.k1() - V2) / (law.k3() - V2) * law.wM());
}

double psi_max(const MaterialLaw& law, double V) {
    if (V < 0.0 || V > law.c3())
        throw std::domain_error("psi_max: V must lie in [0, c3]");
    const double V2 = V * V;
    return law.half_dk() * law.wm() *
           (law.wM() - (law.k3() - V2) / (law.k1() - V2) * law.wm());
}

KineticFunction KineticFunction::max_dissipation(const MaterialLaw& law) {
    return KineticFunction(law);
}

KineticFunction KineticFunction::tabulated(
    const MaterialLaw& law, std::vector<std::pair<double, double>> table) {
    KineticFunction kf(law);
    kf.table_ = std::move(table);
    kf.validate_table();
    return kf;
}

KineticFunction KineticFunction::tabulated_from_file(const MaterialLaw& law,
                                                     const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("kinetics: cannot open table " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double V, phi;
        if (ls >> V >> phi) rows.emplace_back(V, phi);
    }
    return tabulated(law, std::move(rows));
}

void KineticFunction::validate_table() const {
    if (table_.size() < 2)
        throw std::invalid_argument("kinetics: table needs at least two rows");
    const double c3 = law_.c3();
    const double tol = 1e-9 * std::max(1.0, psi_max(law_, c3));
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const auto [V, phi] = table_[i];
        if (V < lower_cutoff(law_) || V > c3)
            throw std::invalid_argument(
                "kinetics: table abscissa outside ]-c3, c3]");
        if (i > 0) {
            if (!(V > table_[i - 1].first))
                throw std::invalid_argument(
                    "kinetics: table abscissas must be strictly increasing");
            if (phi < table_[i - 1].second - tol)
                throw std::invalid_argument(
                    "kinetics: table values must be nondecreasing");
        }
        if (V <= 0.0) {
            if (phi < psi_min(law_, V) - tol || phi > tol)
                throw std::invalid_argument(
                    "kinetics: table value outside [psi_min, 0] at V<=0");
        }
        if (V >= 0.0) {
            if (phi < -tol || phi > psi_max(law_, V) + tol)
                throw std::invalid_argument(
                    "kinetics: table value outside [0, psi_max] at V>=0");
        }
    }
    if (table_.back().first >= c3 * (1.0 - 1e-12)) {
        if (std::abs(table_.back().second - psi_max(law_, c3)) > 1e-6)
            throw std::invalid_argument(
                "kinetics: table must reach psi_max(c3) at V=c3");
    }
}

double KineticFunction::eval(double V) const {
    const double c3 = law_.c3();
    if (V < lower_cutoff(law_) || V > c3)
        throw std::domain_error("phi: V outside ]-c3, c3]");
    if (is_max_dissipation()) {
        if (V == 0.0)
            throw std::domain_error(
                "phi: double-valued at V=0, use the one-sided accessors");
        return V < 0.0 ? psi_min(law_, V) : psi_max(law_, V);
    }
    if (V < table_.front().first || V > table_.back().first)
        throw std::domain_error("phi: V outside the tabulated range");
    auto hi = std::lower_bound(table_.begin(), table_.end(), V,
                               [](const auto& row, double x) {
                                   return row.first < x;
                               });
    double value;
    if (hi == table_.begin()) {
        value = hi->second;
    } else {
        auto lo = hi - 1;
        if (hi == table_.end()) {
            value = lo->second;
        } else {
            const double s = (V - lo->first) / (hi->first - lo->first);
            value = lo->second + s * (hi->second - lo->second);
        }
    }
    if (V <= 0.0) return std::clamp(value, psi_min(law_, V), 0.0);
    return std::clamp(value, 0.0, psi_max(law_, V));
}

double KineticFunction::eval_zero_interp() const {
    // Tabulated functions are single-valued; interpolate at 0 without the
    // one-sided clamp.
    auto hi = std::lower_bound(table_.begin(), table_.end(), 0.0,
                               [](const auto& row, double x) {
                                   return row.first < x;
                               });
    if (hi == table_.begin()) return hi->second;
    if (hi == table_.end()) return table_.back().second;
    auto lo = hi - 1;
    const double s = (0.0 - lo->first) / (hi->first - lo->first);
    return lo->second + s * (hi->second - lo->second);
}

double KineticFunction::at_zero_minus() const {
    if (is_max_dissipation()) return psi_min(law_, 0.0);
    return std::min(eval_zero_interp(), 0.0);
}

double KineticFunction::at_zero_plus() const {
    if (is_max_dissipation()) return psi_max(law_, 0.0);
    return std::max(eval_zero_interp(), 0.0);
}

double KineticFunction::domain_min() const {
    const double cutoff = lower_cutoff(law_);
    return is_max_dissipation() ? cutoff
                                : std::max(cutoff, table_.front().first);
}

double KineticFunction::domain_max() const {
    return is_max_dissipation() ? law_.c3()
                                : std::min(law_.c3(), table_.back().first);
}

double KineticFunction::right_derivative_at_c3() const {
    const double c3 = law_.c3();
    if (is_max_dissipation()) {
        const double d = law_.k1() - law_.k3();
        return law_.half_dk() * law_.wm() * law_.wm() * 2.0 * c3 / d;
    }
    const double step = 1e-6 * c3;
    return (eval(c3) - eval(c3 - step)) / step;
}

double KineticFunction::limit_strain_at_c3() const {
    return std::sqrt(right_derivative_at_c3() / law_.c3());
}

KineticFunction sample_interior_kinetic(const MaterialLaw& law, int nodes) {
    const double c3 = law.c3();
    const double lo = -c3 * (1.0 - 1e-9);
    std::vector<std::pair<double, double>> table;
    table.reserve(nodes + 1);
    for (int i = 0; i <= nodes; ++i) {
        double V = lo + (c3 - lo) * i / nodes;
        if (std::abs(V) < 1e-12 * c3) continue;  // phi is two-sided at 0
        if (i == nodes) V = c3;
        const double bound = V < 0.0 ? psi_min(law, V) : psi_max(law, V);
        const double s = V / c3;
        table.emplace_back(V, bound * (0.5 + 0.5 * s * s * s * s));
    }
    return KineticFunction::tabulated(law, std::move(table));
}

double entropy_dissipation_rate(const MaterialLaw& law, const State& uL,
                                const State& uR) {
    law.require_off_spinodal(uL, "entropy_dissipation_rate");
    law.require_off_spinodal(uR, "entropy_dissipation_rate");
    const Phase pL = law.phase(uL.w);
    const Phase pR = law.phase(uR.w);
    if (pL == pR) return 0.0;  // linear branch: the integrand is odd
    const double cross =
        law.half_dk() * (law.wM() * law.wm() - uL.w * uR.w);
    return pL == Phase::phase1 ? cross : -cross;
}

double kinetic_target(const KineticFunction& kf, double V, Phase left_phase) {
    if (left_phase == Phase::phase1) return kf.eval(V);
    return -kf.eval(-V);
}

double kinetic_relation_residual(const KineticFunction& kf, double V,
                                 Phase left_phase, double rate) {
    if (V != 0.0) return std::abs(rate - kinetic_target(kf, V, left_phase));
    double lo = kf.at_zero_minus();
    double hi = kf.at_zero_plus();
    if (left_phase == Phase::phase3) {
        const double t = lo;
        lo = -hi;
        hi = -t;
    }
    if (rate < lo) return lo - rate;
    if (rate > hi) return rate - hi;
    return 0.0;
}

}  // namespace phasefront

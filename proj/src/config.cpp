#include "phasefront/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace phasefront {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "material.k1", "material.k3", "material.wM", "material.wm",
        "material.wMcr", "material.wmcr",
        "kinetic.type", "kinetic.table",
        "grid.h", "grid.lambda", "grid.xmin", "grid.xmax",
        "time.t_end",
        "sequence.type", "sequence.seed",
        "domain.type", "domain.side",
        "init.type", "init.vL", "init.wL", "init.vR", "init.wR",
        "init.Vstar", "init.amplitude", "init.pieces", "init.support",
        "init.gap", "init.seed", "init.family", "init.table",
        "output.snapshots", "output.snapshot_path", "output.track_path",
        "output.diag_path",
        "runtime.threads",
        "diag.K",
        "riemann.vL", "riemann.wL", "riemann.vR", "riemann.wR",
        "riemann.sample_t", "riemann.sample_n", "riemann.sample_xmin",
        "riemann.sample_xmax", "riemann.sample_path",
        "half.v0", "half.w0",
        "converge.h_list", "converge.out",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

void ExperimentConfig::check_known(const std::string& key) {
    if (!known_keys().count(key))
        throw std::invalid_argument("config: unknown key '" + key + "'");
}

void ExperimentConfig::insert(const std::string& key, const std::string& value,
                              int line) {
    check_known(key);
    if (kv_.count(key))
        throw std::invalid_argument(
            "config: duplicate key '" + key + "' (lines " +
            std::to_string(line_of_[key]) + " and " + std::to_string(line) +
            ")");
    kv_[key] = value;
    line_of_[key] = line;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " +
                                        std::to_string(lineno) +
                                        " is not key=value: '" + line + "'");
        cfg.insert(trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                   lineno);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    ExperimentConfig cfg;
    int n = 0;
    for (const auto& [k, v] : pairs) cfg.insert(k, v, ++n);
    return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    check_known(key);
    kv_[key] = value;
    line_of_[key] = 0;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

std::string ExperimentConfig::require_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::invalid_argument("config: missing required key '" + key +
                                    "'");
    return it->second;
}

double ExperimentConfig::get_double(const std::string& key,
                                    double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key +
                                    "' is not a number: '" + it->second + "'");
    }
}

double ExperimentConfig::require_double(const std::string& key) const {
    require_string(key);
    return get_double(key, 0.0);
}

long ExperimentConfig::get_long(const std::string& key, long fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key +
                                    "' is not an integer: '" + it->second +
                                    "'");
    }
}

std::string ExperimentConfig::echo() const {
    std::ostringstream out;
    for (const auto& [k, v] : kv_) out << k << " = " << v << "\n";
    return out.str();
}

MaterialLaw make_material(const ExperimentConfig& cfg) {
    const double k1 = cfg.require_double("material.k1");
    const double k3 = cfg.require_double("material.k3");
    const double wM = cfg.require_double("material.wM");
    const double wm = cfg.require_double("material.wm");
    // Default thresholds sit at the phase limits (no spontaneous nucleation
    // margin at the walls).
    const double wMcr = cfg.get_double("material.wMcr", wM);
    const double wmcr = cfg.get_double("material.wmcr", wm);
    return MaterialLaw(k1, k3, wM, wm, wMcr, wmcr);
}

KineticFunction make_kinetic(const ExperimentConfig& cfg,
                             const MaterialLaw& law) {
    const std::string type = cfg.get_string("kinetic.type", "max_dissipation");
    if (type == "max_dissipation") return KineticFunction::max_dissipation(law);
    if (type == "tabulated")
        return KineticFunction::tabulated_from_file(
            law, cfg.require_string("kinetic.table"));
    throw std::invalid_argument("config: kinetic.type must be "
                                "max_dissipation or tabulated");
}

GlimmConfig make_glimm_config(const ExperimentConfig& cfg,
                              const MaterialLaw& law) {
    GlimmConfig g;
    g.h = cfg.require_double("grid.h");
    g.lambda = cfg.get_double("grid.lambda", law.c1() / 0.9);
    g.xmin = cfg.get_double("grid.xmin", -4.0);
    g.xmax = cfg.get_double("grid.xmax", 4.0);
    g.t_end = cfg.require_double("time.t_end");
    const std::string seq = cfg.get_string("sequence.type", "van_der_corput");
    if (seq == "van_der_corput")
        g.sequence = SequenceKind::van_der_corput;
    else if (seq == "linear_congruential")
        g.sequence = SequenceKind::linear_congruential;
    else
        throw std::invalid_argument("config: sequence.type must be "
                                    "van_der_corput or linear_congruential");
    g.seed = static_cast<std::uint64_t>(cfg.get_long("sequence.seed", 12345));
    const std::string dom = cfg.get_string("domain.type", "full");
    if (dom == "full")
        g.domain = DomainKind::full;
    else if (dom == "half")
        g.domain = DomainKind::half;
    else
        throw std::invalid_argument("config: domain.type must be full or half");
    const std::string side = cfg.get_string("domain.side", "left");
    if (side == "left")
        g.side = Side::left;
    else if (side == "right")
        g.side = Side::right;
    else
        throw std::invalid_argument("config: domain.side must be left/right");
    g.threads = static_cast<int>(cfg.get_long("runtime.threads", 1));
    return g;
}

PiecewiseInitial make_initial(const ExperimentConfig& cfg,
                              const MaterialLaw& law,
                              const KineticFunction& kf) {
    const std::string type = cfg.get_string("init.type", "riemann");
    if (type == "riemann") {
        return PiecewiseInitial::riemann(
            {cfg.require_double("init.vL"), cfg.require_double("init.wL")},
            {cfg.require_double("init.vR"), cfg.require_double("init.wR")});
    }
    if (type == "pure_boundary") {
        auto [uL, uR] = pure_boundary_states(
            law, kf, cfg.require_double("init.Vstar"),
            cfg.get_double("init.vL", 0.0));
        return PiecewiseInitial::riemann(uL, uR);
    }
    if (type == "perturbed") {
        PerturbSpec spec;
        spec.Vstar = cfg.require_double("init.Vstar");
        spec.amplitude = cfg.get_double("init.amplitude", 0.01);
        spec.pieces = static_cast<int>(cfg.get_long("init.pieces", 8));
        spec.support = cfg.get_double("init.support", 0.6);
        spec.gap = cfg.get_double("init.gap", 0.05);
        spec.seed = static_cast<std::uint64_t>(cfg.get_long("init.seed", 1));
        const std::string fam = cfg.get_string("init.family", "both");
        if (fam == "both")
            spec.family = PerturbFamily::both;
        else if (fam == "left_outgoing")
            spec.family = PerturbFamily::left_outgoing;
        else if (fam == "left_incoming")
            spec.family = PerturbFamily::left_incoming;
        else
            throw std::invalid_argument(
                "config: init.family must be both, left_outgoing or "
                "left_incoming");
        return perturbed_boundary(law, kf, spec);
    }
    if (type == "table")
        return PiecewiseInitial::from_table_file(
            cfg.require_string("init.table"));
    throw std::invalid_argument(
        "config: init.type must be riemann, pure_boundary, perturbed or "
        "table");
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(std::stod(trim(item)));
    }
    return out;
}

}  // namespace phasefront

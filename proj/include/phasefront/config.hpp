#ifndef PHASEFRONT_CONFIG_HPP_
#define PHASEFRONT_CONFIG_HPP_

#include <map>
#include <string>
#include <vector>

#include "phasefront/glimm.hpp"

namespace phasefront {

// Flat key=value configuration ('#' comments, one pair per line). Unknown
// keys are rejected, duplicates are an error. Command-line flags of the form
// --key=value lay over the file contents.
class ExperimentConfig {
  public:
    static ExperimentConfig parse_file(const std::string& path);
    static ExperimentConfig from_pairs(
        const std::vector<std::pair<std::string, std::string>>& pairs);

    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;

    // Round-trip text form: sorted keys, full float precision.
    std::string echo() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
    std::map<std::string, int> line_of_;

    void insert(const std::string& key, const std::string& value, int line);
    static void check_known(const std::string& key);
};

MaterialLaw make_material(const ExperimentConfig& cfg);
KineticFunction make_kinetic(const ExperimentConfig& cfg,
                             const MaterialLaw& law);
GlimmConfig make_glimm_config(const ExperimentConfig& cfg,
                              const MaterialLaw& law);
PiecewiseInitial make_initial(const ExperimentConfig& cfg,
                              const MaterialLaw& law,
                              const KineticFunction& kf);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace phasefront

#endif  // PHASEFRONT_CONFIG_HPP_

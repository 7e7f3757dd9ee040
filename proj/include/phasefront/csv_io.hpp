#ifndef PHASEFRONT_CSV_IO_HPP_
#define PHASEFRONT_CSV_IO_HPP_

#include <string>
#include <vector>

#include "phasefront/diagnostics.hpp"
#include "phasefront/glimm.hpp"

namespace phasefront {

// All writers emit LF-terminated CSV with a header row and 17-significant-
// digit floats, so identical runs produce byte-identical files.

void write_snapshot(const GlimmRun& run, const std::vector<double>& times,
                    const std::string& path);
void write_track(const GlimmRun& run, const std::string& path);
void write_diag(const std::vector<LevelDiag>& rows, const std::string& path);

// Fan sampled at time t on a uniform x grid (CSV t,x,v,w,phase).
void write_fan_samples(const MaterialLaw& law, const WaveFan& fan, double t,
                       double xmin, double xmax, long n,
                       const std::string& path);

std::string format_double(double v);

}  // namespace phasefront

#endif  // PHASEFRONT_CSV_IO_HPP_

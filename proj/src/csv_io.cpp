#include "phasefront/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace phasefront {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

int phase_tag(const MaterialLaw& law, const State& u) {
    return law.phase(u.w) == Phase::phase1 ? 1 : 3;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_snapshot(const GlimmRun& run, const std::vector<double>& times,
                    const std::string& path) {
    auto out = open_out(path);
    out << "t,x,v,w,phase\n";
    for (double t : times) {
        const std::size_t lvl = run.level_at(t);
        const LevelRecord& L = run.levels[lvl];
        for (std::size_t j = 0; j < L.cells.size(); ++j) {
            const double xm =
                run.cell_left_x(lvl, j) + 0.5 * run.cell_width(lvl, j);
            out << format_double(t) << ',' << format_double(xm) << ','
                << format_double(L.cells[j].v) << ','
                << format_double(L.cells[j].w) << ','
                << phase_tag(run.law, L.cells[j]) << '\n';
        }
    }
}

void write_track(const GlimmRun& run, const std::string& path) {
    auto out = open_out(path);
    out << "n,t,chi,chidot,a_n\n";
    for (std::size_t n = 0; n < run.levels.size(); ++n) {
        const double chi = run.has_boundary ? run.chi(n) : 0.0;
        const double chidot =
            run.has_boundary && n < run.boundary.size()
                ? run.boundary[n].speed
                : 0.0;
        out << n << ',' << format_double(run.levels[n].t) << ','
            << format_double(chi) << ',' << format_double(chidot) << ','
            << format_double(n < run.a.size() ? run.a[n] : 0.0) << '\n';
    }
}

void write_diag(const std::vector<LevelDiag>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "n,t,L,B,Q,G,TV,sup,chidot,kinetic_residual_max,"
           "entropy_pairing_min\n";
    for (const auto& d : rows) {
        out << d.n << ',' << format_double(d.t) << ',' << format_double(d.L)
            << ',' << format_double(d.B) << ',' << format_double(d.Q) << ','
            << format_double(d.G) << ',' << format_double(d.tv) << ','
            << format_double(d.sup) << ',' << format_double(d.chidot) << ','
            << format_double(d.kinetic_residual) << ','
            << format_double(d.entropy_pairing_local) << '\n';
    }
}

void write_fan_samples(const MaterialLaw& law, const WaveFan& fan, double t,
                       double xmin, double xmax, long n,
                       const std::string& path) {
    auto out = open_out(path);
    out << "t,x,v,w,phase\n";
    for (long i = 0; i < n; ++i) {
        const double x = xmin + (xmax - xmin) * (i + 0.5) / n;
        const State u = t > 0.0 ? fan.eval(x / t)
                                : (x < 0.0 ? fan.left() : fan.right());
        out << format_double(t) << ',' << format_double(x) << ','
            << format_double(u.v) << ',' << format_double(u.w) << ','
            << phase_tag(law, u) << '\n';
    }
}

}  // namespace phasefront

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "phasefront/config.hpp"
#include "phasefront/csv_io.hpp"
#include "phasefront/diagnostics.hpp"

using namespace phasefront;

namespace {

const char* kUsage = R"(usage: phasefront <command> [--config=FILE] [--key=value ...]

commands:
  riemann        solve a whole-space Riemann problem and print the wave fan
  riemann-half   solve a half-space Riemann problem (--side=left|right)
  run            run the random-choice scheme and write CSV outputs
  check          run the built-in consistency battery
  converge       mesh-refinement study of the boundary track
  echo           print the merged configuration and exit

keys mirror the config file (see README); flags override file entries.
exit codes: 0 ok, 1 invalid input/config, 2 numerical failure
)";

struct Cli {
    std::string command;
    ExperimentConfig cfg;
};

Cli parse_cli(int argc, char** argv) {
    if (argc < 2) throw std::invalid_argument(kUsage);
    Cli cli;
    cli.command = argv[1];
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("--", 0) != 0)
            throw std::invalid_argument("flags must look like --key=value: " +
                                        arg);
        arg = arg.substr(2);
        const auto eq = arg.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("flags must look like --key=value: " +
                                        arg);
        std::string key = arg.substr(0, eq);
        const std::string value = arg.substr(eq + 1);
        if (key == "config") {
            config_path = value;
            continue;
        }
        if (key == "side") key = "domain.side";  // documented shorthand
        overrides.emplace_back(key, value);
    }
    if (!config_path.empty())
        cli.cfg = ExperimentConfig::parse_file(config_path);
    for (const auto& [k, v] : overrides) cli.cfg.set(k, v);
    return cli;
}

const char* kind_name(WaveKind k) {
    switch (k) {
        case WaveKind::contact_left: return "contact_left";
        case WaveKind::contact_right: return "contact_right";
        case WaveKind::boundary_subsonic: return "phase_boundary_subsonic";
        default: return "phase_boundary_supersonic";
    }
}

void print_fan(const MaterialLaw& law, const WaveFan& fan) {
    for (std::size_t i = 0;; ++i) {
        const State& s = fan.states[i];
        std::printf("state %zu: v=%.17g w=%.17g phase=%d\n", i, s.v, s.w,
                    law.phase(s.w) == Phase::phase1 ? 1 : 3);
        if (i == fan.waves.size()) break;
        const Wave& w = fan.waves[i];
        const double rate =
            entropy_dissipation_rate(law, fan.states[i], fan.states[i + 1]);
        std::printf("wave %zu: kind=%s speed=%.17g dissipation=%.17g\n", i,
                    kind_name(w.kind), w.speed, rate);
    }
}

void maybe_sample(const ExperimentConfig& cfg, const MaterialLaw& law,
                  const WaveFan& fan) {
    if (!cfg.has("riemann.sample_t")) return;
    write_fan_samples(law, fan, cfg.require_double("riemann.sample_t"),
                      cfg.get_double("riemann.sample_xmin", -2.0),
                      cfg.get_double("riemann.sample_xmax", 2.0),
                      cfg.get_long("riemann.sample_n", 400),
                      cfg.get_string("riemann.sample_path", "fan.csv"));
}

int cmd_riemann(const ExperimentConfig& cfg) {
    const MaterialLaw law = make_material(cfg);
    const KineticFunction kf = make_kinetic(cfg, law);
    const State uL{cfg.require_double("riemann.vL"),
                   cfg.require_double("riemann.wL")};
    const State uR{cfg.require_double("riemann.vR"),
                   cfg.require_double("riemann.wR")};
    const WaveFan fan = solve_riemann(law, kf, uL, uR);
    print_fan(law, fan);
    maybe_sample(cfg, law, fan);
    return 0;
}

int cmd_riemann_half(const ExperimentConfig& cfg) {
    const MaterialLaw law = make_material(cfg);
    const KineticFunction kf = make_kinetic(cfg, law);
    const State u0{cfg.require_double("half.v0"),
                   cfg.require_double("half.w0")};
    const Side side =
        cfg.get_string("domain.side", "left") == "right" ? Side::right
                                                         : Side::left;
    const WaveFan fan = solve_half(law, kf, u0, side);
    print_fan(law, fan);
    std::printf("wall trace: v=%.17g w=%.17g\n", wall_trace(fan, side).v,
                wall_trace(fan, side).w);
    maybe_sample(cfg, law, fan);
    return 0;
}

int cmd_run(const ExperimentConfig& cfg) {
    const MaterialLaw law = make_material(cfg);
    const KineticFunction kf = make_kinetic(cfg, law);
    const PiecewiseInitial init = make_initial(cfg, law, kf);
    const GlimmConfig gcfg = make_glimm_config(cfg, law);
    const GlimmRun run = glimm_run(law, kf, init, gcfg);
    for (const auto& w : run.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());

    if (cfg.has("output.snapshots"))
        write_snapshot(run,
                       parse_double_list(cfg.require_string("output.snapshots")),
                       cfg.get_string("output.snapshot_path", "snapshot.csv"));
    if (cfg.has("output.track_path") || run.has_boundary)
        write_track(run, cfg.get_string("output.track_path", "track.csv"));
    if (cfg.has("output.diag_path")) {
        const double K = cfg.get_double("diag.K", 64.0);
        write_diag(per_level_diagnostics(run, K),
                   cfg.require_string("output.diag_path"));
    }
    std::printf("levels=%zu tau=%.17g", run.levels.size(), run.tau);
    if (run.has_boundary)
        std::printf(" chi_end=%.17g", run.chi(run.levels.size() - 1));
    std::printf("\n");
    return 0;
}

int cmd_converge(const ExperimentConfig& cfg) {
    const MaterialLaw law = make_material(cfg);
    const KineticFunction kf = make_kinetic(cfg, law);
    const PiecewiseInitial init = make_initial(cfg, law, kf);
    GlimmConfig gcfg = make_glimm_config(cfg, law);
    const std::vector<double> hs =
        parse_double_list(cfg.get_string("converge.h_list", "0.02,0.01,0.005"));
    const WaveFan exact = solve_riemann(law, kf, init.left_tail,
                                        init.right_tail);
    const int bi = exact.boundary_index();
    const double Vstar = bi >= 0 ? exact.waves[bi].speed : 0.0;

    std::printf("h,chi_err_sup,l1_err,order\n");
    double prev_err = 0.0, prev_h = 0.0;
    for (double h : hs) {
        gcfg.h = h;
        double chi_err = 0.0, l1 = 0.0, order = 0.0;
        try {
            const GlimmRun run = glimm_run(law, kf, init, gcfg);
            if (run.has_boundary)
                for (std::size_t n = 0; n < run.levels.size(); ++n)
                    chi_err = std::max(chi_err,
                                       std::abs(run.chi(n) -
                                                Vstar * run.levels[n].t));
            const std::size_t last = run.levels.size() - 1;
            l1 = l1_run_vs_fan(run, exact, last, gcfg.xmin, gcfg.xmax);
            if (prev_h > 0.0 && chi_err > 0.0 && prev_err > 0.0)
                order = std::log(prev_err / chi_err) / std::log(prev_h / h);
            prev_err = chi_err;
            prev_h = h;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "h=%g failed: %s\n", h, e.what());
            continue;
        }
        std::printf("%.17g,%.17g,%.17g,%.17g\n", h, chi_err, l1, order);
    }
    return 0;
}

int cmd_check(const ExperimentConfig& cfg) {
    (void)cfg;
    const MaterialLaw law(4.0, 1.0, 1.0, 2.0);
    const KineticFunction kf = KineticFunction::max_dissipation(law);
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };

    // Stress/energy consistency.
    {
        bool ok = true;
        for (int i = 0; i < 300 && ok; ++i) {
            const double w = -0.9 + 5.0 * i / 299.0;
            if (law.phase(w) == Phase::spinodal) continue;
            const double d = 1e-5;
            const double num = (law.energy(w + d) - law.energy(w - d)) /
                               (2.0 * d);
            ok = std::abs(num - law.sigma(w)) <= 1e-8;
        }
        report("energy derivative matches stress", ok);
    }

    // Kinetic band.
    {
        bool ok = true;
        for (int i = 1; i < 10000 && ok; ++i) {
            const double V = -law.c3() * (1 - 1e-6) +
                             (i / 10000.0) * 2.0 * law.c3() * (1 - 1e-6);
            if (V == 0.0) continue;
            const double phi = kf.eval(std::min(V, law.c3()));
            ok = V < 0.0 ? (phi >= psi_min(law, V) - 1e-12 && phi <= 1e-12)
                         : (phi >= -1e-12 && phi <= psi_max(law, V) + 1e-12);
        }
        report("kinetic function stays in the admissible band", ok);
    }

    // Random Riemann fans.
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        bool ok = true;
        for (int i = 0; i < 600 && ok; ++i) {
            const double wl = (i % 2) ? 0.05 + 0.9 * std::abs(u(rng)) / 1.5
                                      : 2.0 + std::abs(u(rng));
            const double wr = (i % 3) ? 0.05 + 0.9 * std::abs(u(rng)) / 1.5
                                      : 2.0 + std::abs(u(rng));
            try {
                const WaveFan fan =
                    solve_riemann(law, kf, {u(rng), wl}, {u(rng), wr});
                ok = check_fan(law, kf, fan).ok();
            } catch (const no_solution_error&) {
                // out-of-range data is allowed to be unsolvable
            }
        }
        report("random Riemann fans satisfy RH/kinetic/entropy", ok);
    }

    // A short perturbed run with functionals and residuals. Uses a kinetic
    // function strictly inside the band so the intermediate states have
    // phase margins under perturbation.
    {
        const KineticFunction kin = sample_interior_kinetic(law);
        PerturbSpec spec;
        spec.Vstar = 0.3;
        spec.amplitude = 0.02;
        GlimmConfig gc;
        gc.h = 0.02;
        gc.t_end = 0.5;
        gc.xmin = -2.5;
        gc.xmax = 2.5;
        bool ok = true;
        try {
            const GlimmRun run =
                glimm_run(law, kin, perturbed_boundary(law, kin, spec), gc);
            ok = max_kinetic_residual(run) <= 1e-9 &&
                 smallest_monotone_K(run, 1024.0).has_value();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "run failed: %s\n", e.what());
            ok = false;
        }
        report("perturbed run: kinetic residual and monotone functional", ok);
    }

    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const Cli cli = parse_cli(argc, argv);
        if (cli.command == "riemann") return cmd_riemann(cli.cfg);
        if (cli.command == "riemann-half") return cmd_riemann_half(cli.cfg);
        if (cli.command == "run") return cmd_run(cli.cfg);
        if (cli.command == "check") return cmd_check(cli.cfg);
        if (cli.command == "converge") return cmd_converge(cli.cfg);
        if (cli.command == "echo") {
            std::fputs(cli.cfg.echo().c_str(), stdout);
            return 0;
        }
        std::fputs(kUsage, stderr);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
}

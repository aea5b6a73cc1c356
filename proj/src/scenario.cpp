#include "bresse/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace bresse {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    return out;
}

const char* case_name(SpeedCase c) {
    return c == SpeedCase::equal ? "equal" : "non-equal";
}

const char* family_name(const Kernel& g) {
    switch (g.family) {
        case Kernel::Family::exponential: return "exponential";
        case Kernel::Family::power_law: return "power_law";
        case Kernel::Family::none: return "none";
    }
    return "?";
}

}  // namespace

void write_energy_csv(const EnergyTrace& trace, std::ostream& out) {
    out << "n,t,E,mem,Ekin,Epot";
    if (trace.has_diagnostics) out << ",I1,I2,I3,I4,I5,I6,L";
    out << '\n';
    for (const EnergyRow& row : trace.rows) {
        out << row.n << ',' << fmt17(row.t) << ',' << fmt17(row.E) << ',' << fmt17(row.mem)
            << ',' << fmt17(row.Ekin) << ',' << fmt17(row.Epot);
        if (trace.has_diagnostics) {
            if (row.diag) {
                const LyapunovValues& d = *row.diag;
                out << ',' << fmt17(d.I1) << ',' << fmt17(d.I2) << ',' << fmt17(d.I3) << ','
                    << fmt17(d.I4) << ',' << fmt17(d.I5) << ',' << fmt17(d.I6) << ','
                    << fmt17(d.L);
            } else {
                out << ",,,,,,,";
            }
        }
        out << '\n';
    }
}

void write_snapshot(const Mesh& mesh, const Snapshot& snap, std::ostream& out) {
    out << "# t = " << fmt17(snap.t) << '\n';
    out << "# x phi psi w\n";
    for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
        out << fmt17(mesh.nodes[i]) << ' ' << fmt17(snap.phi[i]) << ' ' << fmt17(snap.psi[i])
            << ' ' << fmt17(snap.w[i]) << '\n';
    }
}

void write_section_csv(const std::vector<std::array<double, 4>>& section, std::ostream& out) {
    out << "t,phi_mid,psi_mid,w_mid\n";
    for (const auto& row : section) {
        out << fmt17(row[0]) << ',' << fmt17(row[1]) << ',' << fmt17(row[2]) << ','
            << fmt17(row[3]) << '\n';
    }
}

void write_summary(const RunConfig& cfg, const ScenarioResult& res, std::ostream& out) {
    const BresseParams& p = cfg.params;
    out << "beam run summary\n";
    out << "================\n";
    out << "parameters: k1=" << p.k1 << " k2=" << p.k2 << " k3=" << p.k3 << " rho1=" << p.rho1
        << " rho2=" << p.rho2 << " l=" << p.l << " L=" << p.L << '\n';
    out << "wave speeds: s1=" << res.speeds.s1 << " s2=" << res.speeds.s2
        << " s3=" << res.speeds.s3 << "  (first pair " << case_name(res.speed_case)
        << ", k1 == k3: " << (res.speeds.k1_equals_k3 ? "yes" : "no") << ")\n";

    const Kernel& g = cfg.kernel;
    out << "kernel: family=" << family_name(g);
    if (g.family == Kernel::Family::exponential) out << " a=" << g.a << " b=" << g.b;
    if (g.family == Kernel::Family::power_law) out << " a=" << g.a << " q=" << g.q;
    out << '\n';
    const AdmissibilityReport& adm = res.admissibility;
    out << "  g(0)=" << adm.g_at_zero << "  total mass=" << adm.g0_infinity
        << "  residual stiffness=" << adm.residual_stiffness << "  xi=" << adm.xi
        << "  p=" << adm.p << '\n';
    out << "  positivity condition: " << (adm.a1_satisfied ? "satisfied" : "violated")
        << ", rate-shape condition: " << (adm.a2_satisfied ? "satisfied" : "violated") << '\n';
    for (const std::string& note : adm.notes) out << "  note: " << note << '\n';

    if (res.run.steps > 0) {
        out << "grid: s=" << cfg.s << " elements, dt=" << cfg.dt
            << ", steps=" << res.run.steps << ", final t=" << res.run.trace.rows.back().t
            << '\n';
        out << "zero-mean shift applied: " << (res.run.transform_applied ? "yes" : "no") << '\n';
        if (res.run.transform_applied) {
            const ModeConstants& m = res.run.modes;
            out << "  mode constants: a0=" << m.a0 << " a1=" << m.a1 << " a2=" << m.a2
                << " a3=" << m.a3 << " a4=" << m.a4 << " kappa=" << m.kappa
                << " beta=" << m.beta << '\n';
        }
        const double e0 = res.run.trace.rows.front().E;
        const double eT = res.run.trace.rows.back().E;
        out << "energy: E(0)=" << e0 << "  E(end)=" << eT << "  drop=" << (e0 / eT) << "x\n";
    } else {
        out << "dry run: no time stepping performed\n";
    }

    if (res.run.steps > 0) {
        out << "fit window: [" << res.window.t0 << ", " << res.window.t1 << "]\n";
    }
    if (res.exp_fit) {
        const DecayFit& f = *res.exp_fit;
        out << "exponential fit: E ~ " << f.C << " * exp(-" << f.rate << " t)  R^2=" << f.r_squared
            << "  max residual/log drop=" << (f.log_drop > 0 ? f.max_residual / f.log_drop : 0.0)
            << '\n';
    }
    if (res.poly_fit) {
        const DecayFit& f = *res.poly_fit;
        out << "polynomial fit: E ~ " << f.C << " * t^-" << f.rate << "  R^2=" << f.r_squared
            << "  max residual/log drop=" << (f.log_drop > 0 ? f.max_residual / f.log_drop : 0.0)
            << '\n';
    }
    if (res.envelope && res.envelope_used) {
        const Envelope& env = *res.envelope_used;
        out << "envelope (" << case_name(env.speed_case) << " case, p=" << env.p
            << "): calibrated C=" << res.envelope->C << " at t=" << res.envelope->t_touch
            << ", max E/envelope=" << res.envelope->max_ratio << '\n';
        for (const std::string& note : env.notes) out << "  note: " << note << '\n';
    }
    for (const std::string& w : res.run.warnings) out << "warning: " << w << '\n';
    for (const std::string& note : res.notes) out << "note: " << note << '\n';
}

void write_plot_script(const ScenarioResult& res, std::ostream& out) {
    out << "# gnuplot script; run from the output directory: gnuplot plot.gp\n";
    out << "set datafile separator ','\n";
    out << "set terminal pngcairo size 1200,900\n";
    out << "set output 'energy.png'\n";
    out << "set multiplot layout 2,2\n";
    out << "set key top right\n";
    out << "set xlabel 't'\n";
    out << "set title 'energy'\n";
    out << "plot 'energy.csv' skip 1 using 2:3 with lines lw 2 title 'E(t)'\n";
    out << "set title 'memory part'\n";
    out << "plot 'energy.csv' skip 1 using 2:4 with lines lw 2 title 'history term'\n";
    out << "set title 'log energy'\n";
    out << "set logscale y\n";
    if (res.exp_fit) {
        out << "plot 'energy.csv' skip 1 using 2:3 with lines lw 2 title 'E(t)', " << '\\' << '\n'
            << "     " << fmt17(res.exp_fit->C) << " * exp(-" << fmt17(res.exp_fit->rate)
            << " * x) with lines dt 2 title 'exp fit'\n";
    } else {
        out << "plot 'energy.csv' skip 1 using 2:3 with lines lw 2 title 'E(t)'\n";
    }
    out << "set title 'log-log energy'\n";
    out << "set logscale xy\n";
    if (res.poly_fit) {
        out << "plot 'energy.csv' skip 1 using 2:3 with lines lw 2 title 'E(t)', " << '\\' << '\n'
            << "     " << fmt17(res.poly_fit->C) << " * x**(-" << fmt17(res.poly_fit->rate)
            << ") with lines dt 2 title 'power fit'\n";
    } else {
        out << "plot 'energy.csv' skip 1 using 2:3 with lines lw 2 title 'E(t)'\n";
    }
    out << "unset multiplot\n";
}

ScenarioResult run_scenario(const RunConfig& cfg, const ScenarioOptions& opt) {
    ScenarioResult res;

    const ParamReport pr = validate_params(cfg.params);
    res.notes.insert(res.notes.end(), pr.warnings.begin(), pr.warnings.end());
    res.speeds = wave_speeds(cfg.params, opt.speed_tol);
    res.speed_case = res.speeds.equal_first_pair ? SpeedCase::equal : SpeedCase::non_equal;
    res.admissibility = check_admissibility(cfg.kernel, cfg.params);

    RunConfig eff = cfg;
    if (opt.diagnostics && eff.flags.diagnostics_every == 0) eff.flags.diagnostics_every = 1;
    // Dump about ten field snapshots unless the run asked for its own cadence.
    if (!opt.dry_run && eff.flags.snapshots_every == 0) {
        eff.flags.snapshots_every = std::max<std::size_t>(1, eff.steps() / 10);
    }

    if (opt.dry_run) {
        if (opt.fit_window) res.window = *opt.fit_window;
        return res;
    }

    res.run = run(eff);
    const EnergyTrace& trace = res.run.trace;
    const double t_end = trace.rows.back().t;
    res.window = opt.fit_window.value_or(FitWindow{t_end / 4.0, t_end});

    try {
        res.exp_fit = fit_exponential(trace, res.window);
    } catch (const std::invalid_argument& e) {
        res.notes.push_back(std::string("exponential fit unavailable: ") + e.what());
    }
    try {
        res.poly_fit = fit_polynomial(trace, res.window);
    } catch (const std::invalid_argument& e) {
        res.notes.push_back(std::string("polynomial fit unavailable: ") + e.what());
    }

    // The closed-form envelopes hold from some finite time on; calibrate at
    // the middle of the fit window and measure the tail from there. For the
    // exponential form the decay constant is fitted on that same tail.
    try {
        const double t_mid = 0.5 * (res.window.t0 + res.window.t1);
        double lambda = 1.0;
        if (res.speed_case == SpeedCase::equal && res.admissibility.p == 1.0 &&
            res.admissibility.xi > 0.0) {
            const DecayFit tail = fit_exponential(trace, FitWindow{t_mid, res.window.t1});
            lambda = tail.rate / res.admissibility.xi;
        }
        Envelope env =
            theoretical_envelope(res.admissibility, res.speed_case, 1.0, lambda, res.window.t0);
        res.envelope = check_envelope(trace, env, t_mid);
        env.C = res.envelope->C;
        res.envelope_used = env;
    } catch (const std::invalid_argument& e) {
        res.notes.push_back(std::string("envelope check unavailable: ") + e.what());
    }

    const std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "energy.csv");
        write_energy_csv(trace, out);
    }
    {
        auto out = open_out(dir / "section.csv");
        write_section_csv(res.run.section, out);
    }
    const Mesh mesh = build_mesh(eff.s, eff.params.L);
    for (std::size_t i = 0; i < res.run.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "fields_%04zu.dat", i);
        auto out = open_out(dir / name);
        write_snapshot(mesh, res.run.snapshots[i], out);
    }
    {
        auto out = open_out(dir / "summary.txt");
        write_summary(eff, res, out);
    }
    {
        auto out = open_out(dir / "plot.gp");
        write_plot_script(res, out);
    }
    return res;
}

}  // namespace bresse

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bresse/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bresse_sim: viscoelastic beam decay laboratory"};

    std::string scenario_name;
    std::string config_path;
    bresse::ScenarioOptions opt;
    std::vector<double> window;
    unsigned seed = 0;
    bool list = false;
    std::optional<double> lyap_N, lyap_N1, lyap_N2, lyap_N4, lyap_N5;

    auto* sc = app.add_option("--scenario", scenario_name, "built-in scenario preset")
                   ->check(CLI::IsMember(bresse::preset_names()));
    auto* cf = app.add_option("--config", config_path, "path to a run description file")
                   ->check(CLI::ExistingFile);
    sc->excludes(cf);
    cf->excludes(sc);
    app.add_flag("--list-scenarios", list, "print the built-in preset names and exit");
    app.add_option("--out", opt.out_dir, "output directory (default: out)");
    app.add_flag("--diagnostics", opt.diagnostics,
                 "log the auxiliary-functional cross terms every step");
    app.add_flag("--dry-run", opt.dry_run,
                 "validate and classify the configuration without time stepping");
    app.add_option("--tol-speed", opt.speed_tol,
                   "relative tolerance for the wave-speed comparison");
    app.add_option("--fit-window", window, "decay-fit window as two times: T0 T1")
        ->expected(2);
    app.add_option("--seed", seed, "reserved for future randomized sweeps");
    app.add_option("--lyap-N", lyap_N, "weight of the energy in the auxiliary functional");
    app.add_option("--lyap-N1", lyap_N1, "weight of the history cross term");
    app.add_option("--lyap-N2", lyap_N2, "weight of the antiderivative cross term");
    app.add_option("--lyap-N4", lyap_N4, "weight of the displacement cross term");
    app.add_option("--lyap-N5", lyap_N5, "weight of the shear-rate cross term");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list) {
        for (const std::string& name : bresse::preset_names()) std::cout << name << '\n';
        return 0;
    }
    if (scenario_name.empty() && config_path.empty()) {
        std::cerr << "error: one of --scenario or --config is required (see --help)\n";
        return 2;
    }
    if (!window.empty()) {
        if (window[1] <= window[0]) {
            std::cerr << "error: --fit-window needs T0 < T1\n";
            return 2;
        }
        opt.fit_window = bresse::FitWindow{window[0], window[1]};
    }
    (void)seed;

    try {
        bresse::RunConfig cfg = scenario_name.empty() ? bresse::parse_config(config_path)
                                                      : bresse::preset(scenario_name);
        if (lyap_N || lyap_N1 || lyap_N2 || lyap_N4 || lyap_N5) {
            bresse::LyapunovWeights w = bresse::LyapunovWeights::defaults(cfg.params);
            if (lyap_N) w.N = *lyap_N;
            if (lyap_N1) w.N1 = *lyap_N1;
            if (lyap_N2) w.N2 = *lyap_N2;
            if (lyap_N4) w.N4 = *lyap_N4;
            if (lyap_N5) w.N5 = *lyap_N5;
            cfg.lyapunov = w;
        }

        const bresse::ScenarioResult res = bresse::run_scenario(cfg, opt);
        bresse::write_summary(cfg, res, std::cout);
        if (!opt.dry_run) {
            std::cout << "wrote " << opt.out_dir
                      << "/{energy.csv, section.csv, fields_*.dat, summary.txt, plot.gp}\n";
        }
        return 0;
    } catch (const bresse::NumericalAbort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bresse/config.hpp"
#include "bresse/decay.hpp"
#include "bresse/stepper.hpp"

namespace bresse {

struct ScenarioOptions {
    std::string out_dir = "out";
    bool diagnostics = false;  // force cross-term diagnostics every step
    bool dry_run = false;      // validate and classify only; no stepping, no files
    double speed_tol = 1e-9;
    std::optional<FitWindow> fit_window;  // default: last three quarters of the run
};

struct ScenarioResult {
    SpeedReport speeds;
    SpeedCase speed_case = SpeedCase::equal;
    AdmissibilityReport admissibility;
    RunResult run;  // untouched default when dry_run
    FitWindow window;
    std::optional<DecayFit> exp_fit;
    std::optional<DecayFit> poly_fit;
    std::optional<Envelope> envelope_used;
    std::optional<EnvelopeReport> envelope;
    std::vector<std::string> notes;  // parameter warnings, fit/envelope caveats
};

/// Deterministic writers (17 significant digits, LF line endings).
void write_energy_csv(const EnergyTrace& trace, std::ostream& out);
void write_snapshot(const Mesh& mesh, const Snapshot& snap, std::ostream& out);
void write_section_csv(const std::vector<std::array<double, 4>>& section, std::ostream& out);
void write_summary(const RunConfig& cfg, const ScenarioResult& res, std::ostream& out);
void write_plot_script(const ScenarioResult& res, std::ostream& out);

/// Full pipeline: validate parameters, classify the propagation speeds and
/// the kernel, simulate, fit both decay laws on the fit window, check the
/// matching theoretical envelope, and (unless dry_run) write energy.csv,
/// section.csv, fields_NNNN.dat, summary.txt and plot.gp into out_dir.
ScenarioResult run_scenario(const RunConfig& cfg, const ScenarioOptions& opt);

}  // namespace bresse

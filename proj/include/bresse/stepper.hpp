#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bresse/band_matrix.hpp"
#include "bresse/energy.hpp"
#include "bresse/fem.hpp"
#include "bresse/history.hpp"
#include "bresse/model.hpp"
#include "bresse/state.hpp"
#include "bresse/transform.hpp"

namespace bresse {

/// Scheme and logging switches.
struct Flags {
    /// Let the memory sum include the m = 0 snapshot (the printed scheme
    /// starts at m = 1; the initial profile then only enters through the
    /// inertia terms).
    bool include_m0 = false;
    /// Use the O(1)-per-step recurrence for exponential kernels instead of
    /// the direct convolution sum.
    bool exponential_fastpath = false;
    /// Compute the cross-term diagnostics every k-th step (0 = never).
    std::size_t diagnostics_every = 0;
    /// Dump full field snapshots every k-th step (0 = never).
    std::size_t snapshots_every = 0;
};

/// Everything one simulation needs. steps() rounds T/dt to the nearest
/// integer, so the final time is steps() * dt (possibly != T).
struct RunConfig {
    BresseParams params;
    Kernel kernel = Kernel::none();
    std::size_t s = 42;
    double dt = 0.012;
    double T = 7.4;
    InitialData initial = InitialData::first_modes(1.0);
    Flags flags;
    std::optional<LyapunovWeights> lyapunov;  // defaults derived from params
    double mean_tol = 1e-12;  // zero-mean shift triggers above this

    std::size_t steps() const;
};

/// The run left the stable regime: the energy became non-finite or dropped
/// below the negative tolerance. Carries the offending step for diagnosis.
class NumericalAbort : public std::runtime_error {
public:
    NumericalAbort(std::size_t step, double t, double energy);
    std::size_t step() const noexcept { return step_; }
    double time() const noexcept { return t_; }
    double energy() const noexcept { return energy_; }

private:
    std::size_t step_;
    double t_;
    double energy_;
};

/// Left-hand side of the implicit step: a time-independent banded block
/// operator over the node-interleaved unknowns (phi_i, psi_i, w_i), with the
/// clamped end values of phi eliminated (unit diagonal, zeroed couplings).
/// Only g(0) enters, so one factorization serves the whole run.
BandMatrix assemble_step_system(const RunConfig& cfg, const Mesh& mesh,
                                const FemMatrices& fem);

/// Factor-once driver for the implicit scheme.
///
/// Construction validates the parameters, projects (and, when the initial
/// rotation/longitudinal means exceed mean_tol, zero-mean shifts) the initial
/// data, assembles and factors the step system. step() advances one dt.
class Stepper {
public:
    explicit Stepper(const RunConfig& cfg);

    void step();

    const SimState& state() const noexcept { return state_; }
    const Mesh& mesh() const noexcept { return mesh_; }
    const FemMatrices& fem() const noexcept { return fem_; }
    const History& history() const noexcept { return hist_; }
    const RunConfig& config() const noexcept { return cfg_; }
    std::size_t total_steps() const noexcept { return total_steps_; }
    bool transform_applied() const noexcept { return transform_applied_; }
    const ModeConstants& modes() const noexcept { return modes_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Discrete energy of the current state.
    EnergyParts energy() const;

private:
    RunConfig cfg_;
    Mesh mesh_;
    FemMatrices fem_;
    ModeConstants modes_;
    bool transform_applied_ = false;
    std::vector<std::string> warnings_;
    History hist_;
    BandMatrix system_;
    SimState state_;
    std::size_t total_steps_ = 0;
};

/// Field dump at one instant, in the original (unshifted) variables.
struct Snapshot {
    double t = 0.0;
    Vec phi, psi, w;
};

struct RunResult {
    EnergyTrace trace;
    std::vector<Snapshot> snapshots;
    /// Per-step midpoint section: (t, phi, psi, w) at x = L/2, original variables.
    std::vector<std::array<double, 4>> section;
    bool transform_applied = false;
    ModeConstants modes;
    std::vector<std::string> warnings;
    SimState final_state;
    std::size_t steps = 0;
};

/// Runs the configured simulation, logging energy each step (diagnostics and
/// snapshots at their configured cadence). Throws NumericalAbort if the
/// energy leaves the stable regime (non-finite, or < -1e-12 * E^0).
RunResult run(const RunConfig& cfg);

}  // namespace bresse

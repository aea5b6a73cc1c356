#pragma once

#include <cstddef>
#include <optional>

#include "bresse/fem.hpp"
#include "bresse/history.hpp"
#include "bresse/model.hpp"
#include "bresse/state.hpp"
#include "bresse/transform.hpp"
#include "bresse/types.hpp"

namespace bresse {

/// Split of the discrete energy functional. The total is
///   kinetic   = rho1 |vphi|^2 + rho2 |vpsi|^2 + rho1 |vw|^2          (mass norms)
///   potential = k1 |phi' + psi + l w|^2 + k3 |w' - l phi|^2
///             + (k2 - int_0^t g) |psi'|^2
///   memory    = 1/2 * history functional of the rotation gradient,
/// with no global 1/2: the discrete form converges to twice the continuum
/// energy, a convention the mesh-convergence test accounts for.
struct EnergyParts {
    double kinetic = 0.0;
    double potential = 0.0;
    double memory = 0.0;
    double total() const noexcept { return kinetic + potential + memory; }
};

/// Discrete energy at state.n; requires hist to hold snapshots 0..n.
EnergyParts discrete_energy(const BresseParams& p, const Kernel& g, const Mesh& mesh,
                            const FemMatrices& fem, const History& hist,
                            const SimState& state);

/// Continuum energy of the initial data (with the conventional global 1/2),
/// by composite Simpson on an oversampled mesh (default 10x the resolution).
double continuous_energy_init(const BresseParams& p, const InitialData& init, const Mesh& mesh,
                              std::size_t oversample = 10);

/// Exact squared norms of the composite strains of piecewise-linear fields
/// (two-point Gauss per element). Exposed for the energy decomposition and
/// the cross-field diagnostics.
double shear_norm2(const Mesh& mesh, const Vec& phi, const Vec& psi, const Vec& w, double l);
double bend_norm2(const Mesh& mesh, const Vec& w, const Vec& phi, double l);

/// Weights of the auxiliary functional L = N E + sum_j N_j I_j (N3 = N6 = 1).
struct LyapunovWeights {
    double N = 1000.0;
    double N1 = 200.0;
    double N2 = 0.01;
    double N4 = 0.0;
    double N5 = 0.0;

    /// Default coupling-aware weights: N4 = k3 N2, N5 = 4 k3 N2.
    static LyapunovWeights defaults(const BresseParams& p);
};

/// Cross terms I1..I6 of the auxiliary functional and its weighted total.
/// Antiderivatives in the spatial integrals use the cumulative trapezoid on
/// the mesh nodes; everything else is exact for piecewise-linear fields.
struct LyapunovValues {
    double I1 = 0.0, I2 = 0.0, I3 = 0.0, I4 = 0.0, I5 = 0.0, I6 = 0.0;
    double L = 0.0;
};

LyapunovValues lyapunov_diagnostics(const BresseParams& p, const Mesh& mesh,
                                    const FemMatrices& fem, const History& hist,
                                    const SimState& state, const LyapunovWeights& weights,
                                    double energy_total);

/// One logged step of a run.
struct EnergyRow {
    std::size_t n = 0;
    double t = 0.0;
    double E = 0.0;
    double mem = 0.0;
    double Ekin = 0.0;
    double Epot = 0.0;
    std::optional<LyapunovValues> diag;
};

struct EnergyTrace {
    std::vector<EnergyRow> rows;
    bool has_diagnostics = false;
};

}  // namespace bresse

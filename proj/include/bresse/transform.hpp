#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "bresse/fem.hpp"
#include "bresse/model.hpp"
#include "bresse/types.hpp"

namespace bresse {

/// Initial displacement and velocity profiles of the three fields.
/// phi0/phi1 must vanish at both ends (clamped transverse displacement);
/// the rotation psi and longitudinal displacement w are unconstrained.
struct InitialData {
    std::function<double(double)> phi0, phi1, psi0, psi1, w0, w1;

    static InitialData zero();

    /// The lab default: lowest boundary-compatible modes, zero velocities.
    /// phi0 = sin(pi x / L), psi0 = cos(pi x / L), w0 = cos(2 pi x / L).
    static InitialData first_modes(double L);
};

/// Simpson means of the six initial profiles sampled at the mesh nodes,
/// ordered (phi0, phi1, psi0, psi1, w0, w1).
std::array<double, 6> initial_means(const InitialData& init, const Mesh& mesh);

/// Constants of the rigid oscillation carried by the means of psi and w.
///
/// The uncontrolled part of the dynamics is a harmonic mode of frequency a0
/// plus a linear drift; removing it from the initial data makes the shifted
/// means of psi and w (and their velocities) vanish, which the decay theory
/// requires. The reconstruction injects the closed-form mode back.
struct ModeConstants {
    double a0 = 0.0;  // sqrt(k1/rho2 + l^2 k1 / rho1), mode frequency
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
    double kappa = 0.0;  // k1 / (rho2 a0^2)
    double beta = 0.0;   // rho2 a0^2 / k1 - 1 = (1 - kappa) / kappa
    double l = 0.0;
    double L = 0.0;

    /// Closed-form integral of psi over [0, L] at time t.
    double psi_integral(double t) const {
        return a1 * std::cos(a0 * t) + a2 * std::sin(a0 * t) + a3 * t + a4;
    }

    /// Closed-form integral of w over [0, L] at time t.
    double w_integral(double t) const {
        return beta / l * (a1 * std::cos(a0 * t) + a2 * std::sin(a0 * t)) - (a3 * t + a4) / l;
    }
};

/// Mode constants from Simpson quadrature of the initial data at mesh
/// resolution. a1/a4 split the initial psi/w means between the oscillating
/// and constant parts; a2/a3 do the same for the initial velocity means.
ModeConstants compute_mode_constants(const BresseParams& p, const InitialData& init,
                                     const Mesh& mesh);

/// Subtracts the spatially constant mode offsets from psi and w (phi is
/// untouched); the shifted profiles have zero quadrature mean.
InitialData shift_initial_data(const InitialData& init, const ModeConstants& c);

/// Adds the closed-form mode values at time t back onto zero-mean snapshots
/// of psi and w, recovering the solution in the original variables.
void reconstruct_original(Vec& psi, Vec& w, const ModeConstants& c, double t);

}  // namespace bresse

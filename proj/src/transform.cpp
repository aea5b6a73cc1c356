#include "bresse/transform.hpp"

#include <numbers>

#include "bresse/quadrature.hpp"

namespace bresse {

InitialData InitialData::zero() {
    auto z = [](double) { return 0.0; };
    return InitialData{z, z, z, z, z, z};
}

InitialData InitialData::first_modes(double L) {
    const double pi = std::numbers::pi;
    auto z = [](double) { return 0.0; };
    return InitialData{
        [L, pi](double x) { return std::sin(pi * x / L); },
        z,
        [L, pi](double x) { return std::cos(pi * x / L); },
        z,
        [L, pi](double x) { return std::cos(2.0 * pi * x / L); },
        z,
    };
}

namespace {

double mesh_integral(const std::function<double(double)>& f, const Mesh& mesh) {
    return simpson(project_initial(f, mesh), mesh.h);
}

}  // namespace

std::array<double, 6> initial_means(const InitialData& init, const Mesh& mesh) {
    return {
        mesh_integral(init.phi0, mesh) / mesh.L, mesh_integral(init.phi1, mesh) / mesh.L,
        mesh_integral(init.psi0, mesh) / mesh.L, mesh_integral(init.psi1, mesh) / mesh.L,
        mesh_integral(init.w0, mesh) / mesh.L,   mesh_integral(init.w1, mesh) / mesh.L,
    };
}

ModeConstants compute_mode_constants(const BresseParams& p, const InitialData& init,
                                     const Mesh& mesh) {
    ModeConstants c;
    c.l = p.l;
    c.L = p.L;
    c.a0 = std::sqrt(p.k1 / p.rho2 + p.l * p.l * p.k1 / p.rho1);
    c.kappa = p.k1 / (p.rho2 * c.a0 * c.a0);
    c.beta = p.rho2 * c.a0 * c.a0 / p.k1 - 1.0;

    const double psi0_int = mesh_integral(init.psi0, mesh);
    const double psi1_int = mesh_integral(init.psi1, mesh);
    const double w0_int = mesh_integral(init.w0, mesh);
    const double w1_int = mesh_integral(init.w1, mesh);

    c.a1 = c.kappa * (psi0_int + p.l * w0_int);
    c.a2 = c.kappa / c.a0 * (psi1_int + p.l * w1_int);
    c.a3 = (1.0 - c.kappa) * psi1_int - c.kappa * p.l * w1_int;
    c.a4 = (1.0 - c.kappa) * psi0_int - c.kappa * p.l * w0_int;
    return c;
}

InitialData shift_initial_data(const InitialData& init, const ModeConstants& c) {
    // Constant offsets chosen so the integrals a1 + a4 = int psi0,
    // a0 a2 + a3 = int psi1, (beta a1 - a4)/l = int w0 and
    // (beta a0 a2 - a3)/l = int w1 are removed from the data; the mode
    // carries exactly those integrals.
    const double d_psi0 = (c.a1 + c.a4) / c.L;
    const double d_psi1 = (c.a0 * c.a2 + c.a3) / c.L;
    const double d_w0 = (c.a1 * c.beta / c.l - c.a4 / c.l) / c.L;
    const double d_w1 = (c.a2 * c.a0 * c.beta / c.l - c.a3 / c.l) / c.L;

    InitialData shifted = init;
    shifted.psi0 = [f = init.psi0, d_psi0](double x) { return f(x) - d_psi0; };
    shifted.psi1 = [f = init.psi1, d_psi1](double x) { return f(x) - d_psi1; };
    shifted.w0 = [f = init.w0, d_w0](double x) { return f(x) - d_w0; };
    shifted.w1 = [f = init.w1, d_w1](double x) { return f(x) - d_w1; };
    return shifted;
}

void reconstruct_original(Vec& psi, Vec& w, const ModeConstants& c, double t) {
    const double add_psi = c.psi_integral(t) / c.L;
    const double add_w = c.w_integral(t) / c.L;
    for (double& v : psi) v += add_psi;
    for (double& v : w) v += add_w;
}

}  // namespace bresse

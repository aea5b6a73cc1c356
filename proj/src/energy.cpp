#include "bresse/energy.hpp"

#include <cmath>
#include <limits>

#include "bresse/quadrature.hpp"

namespace bresse {

double shear_norm2(const Mesh& mesh, const Vec& phi, const Vec& psi, const Vec& w, double l) {
    double total = 0.0;
    for (std::size_t e = 0; e < mesh.s; ++e) {
        const double slope = p1_slope(phi, e, mesh.h);
        for (double xi : {kGaussLo, kGaussHi}) {
            const double v = slope + p1_value(psi, e, xi) + l * p1_value(w, e, xi);
            total += 0.5 * mesh.h * v * v;
        }
    }
    return total;
}

double bend_norm2(const Mesh& mesh, const Vec& w, const Vec& phi, double l) {
    double total = 0.0;
    for (std::size_t e = 0; e < mesh.s; ++e) {
        const double slope = p1_slope(w, e, mesh.h);
        for (double xi : {kGaussLo, kGaussHi}) {
            const double v = slope - l * p1_value(phi, e, xi);
            total += 0.5 * mesh.h * v * v;
        }
    }
    return total;
}

EnergyParts discrete_energy(const BresseParams& p, const Kernel& g, const Mesh& mesh,
                            const FemMatrices& fem, const History& hist,
                            const SimState& state) {
    EnergyParts parts;
    parts.kinetic = p.rho1 * inner(fem.M, state.vphi, state.vphi) +
                    p.rho2 * inner(fem.M, state.vpsi, state.vpsi) +
                    p.rho1 * inner(fem.M, state.vw, state.vw);
    parts.potential = p.k1 * shear_norm2(mesh, state.phi, state.psi, state.w, p.l) +
                      p.k3 * bend_norm2(mesh, state.w, state.phi, p.l) +
                      (p.k2 - g.integral_to(state.t)) * inner(fem.K, state.psi, state.psi);
    parts.memory = 0.5 * history_functional(hist, fem.K, state.psi, state.n);
    return parts;
}

namespace {

double central_derivative(const std::function<double(double)>& f, double x, double scale) {
    const double delta = std::cbrt(std::numeric_limits<double>::epsilon()) * scale;
    return (f(x + delta) - f(x - delta)) / (2.0 * delta);
}

}  // namespace

double continuous_energy_init(const BresseParams& p, const InitialData& init, const Mesh& mesh,
                              std::size_t oversample) {
    if (oversample == 0) throw NonPositiveParameter("oversample");
    const std::size_t fine = mesh.s * oversample;
    const double h = p.L / static_cast<double>(fine);
    Vec integrand(fine + 1);
    for (std::size_t i = 0; i <= fine; ++i) {
        const double x = p.L * static_cast<double>(i) / static_cast<double>(fine);
        const double phi0 = init.phi0(x);
        const double w0 = init.w0(x);
        const double psi0 = init.psi0(x);
        const double dphi0 = central_derivative(init.phi0, x, p.L);
        const double dpsi0 = central_derivative(init.psi0, x, p.L);
        const double dw0 = central_derivative(init.w0, x, p.L);
        const double shear = dphi0 + psi0 + p.l * w0;
        const double bend = dw0 - p.l * phi0;
        integrand[i] = p.rho1 * init.phi1(x) * init.phi1(x) +
                       p.rho2 * init.psi1(x) * init.psi1(x) +
                       p.rho1 * init.w1(x) * init.w1(x) + p.k2 * dpsi0 * dpsi0 +
                       p.k3 * bend * bend + p.k1 * shear * shear;
    }
    return 0.5 * simpson(integrand, h);
}

LyapunovWeights LyapunovWeights::defaults(const BresseParams& p) {
    LyapunovWeights w;
    w.N4 = p.k3 * w.N2;
    w.N5 = 4.0 * p.k3 * w.N2;
    return w;
}

namespace {

double dot(const Vec& a, const Vec& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total;
}

Vec add_scaled(const Vec& a, double c, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
    return out;
}

}  // namespace

LyapunovValues lyapunov_diagnostics(const BresseParams& p, const Mesh& mesh,
                                    const FemMatrices& fem, const History& hist,
                                    const SimState& state, const LyapunovWeights& weights,
                                    double energy_total) {
    const std::size_t n = state.n;
    LyapunovValues v;

    // memory convolutions of the rotation history at the current time
    const Vec wsum = hist.weighted_sum(n, n);
    const double wtot = hist.weight_total(n, n);
    Vec convdiff(wsum.size());
    for (std::size_t i = 0; i < wsum.size(); ++i) convdiff[i] = wtot * state.psi[i] - wsum[i];
    v.I1 = -p.rho2 * inner(fem.M, state.vpsi, convdiff);

    const Vec Sw = cumtrapz(state.vw, mesh.h);
    const Vec Sc = add_scaled(state.phi, 1.0,
                              cumtrapz(add_scaled(state.psi, p.l, state.w), mesh.h));
    v.I2 = -p.rho1 * p.k3 * (dot(Sw, fem.D.apply(state.w)) - p.l * inner(fem.M, state.phi, Sw)) -
           p.rho1 * p.k1 * inner(fem.M, state.vphi, Sc);

    const Vec psi_lw = add_scaled(state.psi, p.l, state.w);
    v.I3 = -p.rho1 * (dot(state.vw, fem.D.apply(state.phi)) + inner(fem.M, state.vw, psi_lw)) -
           (p.k3 * p.rho1 / p.k1) *
               (dot(state.vphi, fem.D.apply(state.w)) - p.l * inner(fem.M, state.vphi, state.phi));

    v.I4 = -(p.rho1 * inner(fem.M, state.phi, state.vphi) +
             p.rho2 * inner(fem.M, state.psi, state.vpsi) +
             p.rho1 * inner(fem.M, state.w, state.vw));

    const Vec Spsi = cumtrapz(state.vpsi, mesh.h);
    v.I5 = -p.rho2 * dot(Spsi, fem.D.apply(state.psi));

    v.I6 = p.rho2 * (dot(state.vpsi, fem.D.apply(state.phi)) + inner(fem.M, state.vpsi, psi_lw)) +
           (p.k2 * p.rho1 / p.k1) * dot(state.vphi, fem.D.apply(state.psi)) -
           (p.rho1 / p.k1) * dot(state.vphi, fem.D.apply(wsum));

    v.L = weights.N * energy_total + weights.N1 * v.I1 + weights.N2 * v.I2 + v.I3 +
          weights.N4 * v.I4 + weights.N5 * v.I5 + v.I6;
    return v;
}

}  // namespace bresse

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "bresse/energy.hpp"
#include "bresse/quadrature.hpp"
#include "bresse/stepper.hpp"

using namespace bresse;

namespace {

const double kPi = 3.14159265358979323846;

using Dense3 = std::array<std::array<double, 3>, 3>;

double quad_form(const Dense3& A, const Vec& x, const Vec& y) {
    double total = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) total += x[i] * A[i][j] * y[j];
    return total;
}

// Hand-assembled dense matrices for two elements on [0, 1].
const Dense3 kMass = {{{1.0 / 6.0, 1.0 / 12.0, 0.0},
                       {1.0 / 12.0, 1.0 / 3.0, 1.0 / 12.0},
                       {0.0, 1.0 / 12.0, 1.0 / 6.0}}};
const Dense3 kStiff = {{{2.0, -2.0, 0.0}, {-2.0, 4.0, -2.0}, {0.0, -2.0, 2.0}}};

// Two-point Gauss integral of (slope_u + v + scale * z)^2 over both elements.
double gauss_mixed(const Vec& u, const Vec& v, const Vec& z, double scale, double h) {
    double total = 0.0;
    for (std::size_t e = 0; e < 2; ++e) {
        const double slope = (u[e + 1] - u[e]) / h;
        for (double xi : {kGaussLo, kGaussHi}) {
            const double val = slope + (v[e] * (1 - xi) + v[e + 1] * xi) +
                               scale * (z[e] * (1 - xi) + z[e + 1] * xi);
            total += 0.5 * h * val * val;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("discrete energy matches a hand evaluation on two elements") {
    const BresseParams p;  // k = 1, rho = 0.1, l = 0.05
    const Mesh mesh = build_mesh(2, 1.0);
    const FemMatrices fem = assemble(mesh);
    const Kernel g = Kernel::exponential(1.0, 3.0);
    const double dt = 0.1;

    const Vec psi0 = {0.0, 0.0, 0.0};
    const Vec psi1 = {0.1, 0.0, 0.1};
    const Vec psi2 = {0.2, -0.1, 0.4};
    History hist(g, dt, false);
    hist.append(psi0);
    hist.append(psi1);
    hist.append(psi2);

    SimState st;
    st.n = 2;
    st.t = 0.2;
    st.phi = {0.0, 0.3, 0.0};
    st.psi = psi2;
    st.w = {0.1, 0.2, 0.3};
    st.vphi = {0.0, 0.5, 0.0};
    st.vpsi = {1.0, 0.0, -1.0};
    st.vw = {0.2, 0.0, 0.1};

    const EnergyParts parts = discrete_energy(p, g, mesh, fem, hist, st);

    const double kin = 0.1 * quad_form(kMass, st.vphi, st.vphi) +
                       0.1 * quad_form(kMass, st.vpsi, st.vpsi) +
                       0.1 * quad_form(kMass, st.vw, st.vw);
    CHECK(parts.kinetic == doctest::Approx(kin).epsilon(1e-13));

    const double shear = gauss_mixed(st.phi, st.psi, st.w, 0.05, 0.5);
    Vec minus_lphi = {-0.05 * st.phi[0], -0.05 * st.phi[1], -0.05 * st.phi[2]};
    const Vec zero = {0.0, 0.0, 0.0};
    const double bend = gauss_mixed(st.w, minus_lphi, zero, 0.0, 0.5);
    const double residual = 1.0 - (1.0 - std::exp(-3.0 * 0.2)) / 3.0;
    const double pot = shear + bend + residual * quad_form(kStiff, st.psi, st.psi);
    CHECK(parts.potential == doctest::Approx(pot).epsilon(1e-13));

    // memory: only m = 1 contributes a nonzero gap; m = 2 gap is zero
    Vec gap = {psi2[0] - psi1[0], psi2[1] - psi1[1], psi2[2] - psi1[2]};
    const double mem = 0.5 * dt * std::exp(-3.0 * dt) * quad_form(kStiff, gap, gap);
    CHECK(parts.memory == doctest::Approx(mem).epsilon(1e-13));

    CHECK(parts.total() == doctest::Approx(kin + pot + mem).epsilon(1e-14));
}

TEST_CASE("shear integral is exact for piecewise-quadratic integrands") {
    // Single field on one element pair: integrate (1 + psi)^2 for linear psi
    // on [0, 1] against the closed form.
    const Mesh mesh = build_mesh(2, 1.0);
    const Vec phi = {0.0, 0.5, 1.0};  // slope 1 everywhere
    const Vec psi = {0.3, -0.2, 0.1};
    const Vec w = {0.0, 0.0, 0.0};
    // integral of (1 + psi(x))^2 dx element-wise via antiderivative
    auto seg = [](double a, double b) {
        // int_0^1 ((1+a) + (b-a) u)^2 (1/2) du with x = u/2 on each element
        const double lo = 1.0 + a, hi = 1.0 + b;
        return (hi * hi * hi - lo * lo * lo) / (3.0 * (hi - lo)) * 0.5;
    };
    const double want = seg(0.3, -0.2) + seg(-0.2, 0.1);
    CHECK(shear_norm2(mesh, phi, psi, w, 0.0) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("bend integral reduces to the plain Dirichlet form when l = 0") {
    const Mesh mesh = build_mesh(4, 1.0);
    const FemMatrices fem = assemble(mesh);
    Vec w(mesh.n_nodes());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sin(2.0 * mesh.nodes[i]);
    const Vec phi(mesh.n_nodes(), 0.0);
    CHECK(bend_norm2(mesh, w, phi, 0.0) ==
          doctest::Approx(inner(fem.K, w, w)).epsilon(1e-13));
}

TEST_CASE("continuous initial energy of a pure rotation mode") {
    // psi0 = cos(pi x), everything else zero, k1 = k2 = 1:
    // E(0) = (1/2)(pi^2/2 + 1/2), independent of l.
    BresseParams p;
    InitialData init = InitialData::zero();
    init.psi0 = [](double x) { return std::cos(kPi * x); };
    const Mesh mesh = build_mesh(64, 1.0);
    const double want = 0.5 * (kPi * kPi / 2.0 + 0.5);
    CHECK(continuous_energy_init(p, init, mesh) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("discrete energy converges to twice the continuous energy") {
    const BresseParams p;
    const InitialData init = InitialData::first_modes(1.0);
    const Kernel g = Kernel::exponential(1.0, 3.0);

    auto initial_discrete = [&](std::size_t s) {
        const Mesh mesh = build_mesh(s, 1.0);
        const FemMatrices fem = assemble(mesh);
        SimState st;
        st.n = 0;
        st.t = 0.0;
        st.phi = project_initial(init.phi0, mesh);
        st.psi = project_initial(init.psi0, mesh);
        st.w = project_initial(init.w0, mesh);
        st.vphi = project_initial(init.phi1, mesh);
        st.vpsi = project_initial(init.psi1, mesh);
        st.vw = project_initial(init.w1, mesh);
        st.phi.front() = st.phi.back() = 0.0;
        History hist(g, 0.01, false);
        hist.append(st.psi);
        return discrete_energy(p, g, mesh, fem, hist, st).total();
    };

    const double target = 2.0 * continuous_energy_init(p, init, build_mesh(256, 1.0));
    const double e20 = std::fabs(initial_discrete(20) - target);
    const double e40 = std::fabs(initial_discrete(40) - target);
    const double e80 = std::fabs(initial_discrete(80) - target);
    const double order1 = std::log2(e20 / e40);
    const double order2 = std::log2(e40 / e80);
    CAPTURE(order1);
    CAPTURE(order2);
    CHECK(order1 > 1.9);
    CHECK(order2 > 1.9);
    CHECK(order1 < 2.2);
    CHECK(order2 < 2.2);
}

TEST_CASE("trace rows split the energy consistently") {
    RunConfig cfg;
    cfg.s = 8;
    cfg.dt = 0.01;
    cfg.T = 0.1;
    cfg.kernel = Kernel::exponential(1.0, 3.0);
    const RunResult res = run(cfg);
    REQUIRE(res.trace.rows.size() == 11);
    for (const EnergyRow& row : res.trace.rows) {
        CHECK(row.E ==
              doctest::Approx(row.Ekin + row.Epot + row.mem).epsilon(1e-13));
    }
}

TEST_CASE("auxiliary functional stays positive and energy-equivalent early on") {
    RunConfig cfg;  // equal-speed parameters are the defaults
    cfg.kernel = Kernel::exponential(1.0, 3.0);
    Stepper stepper(cfg);
    for (int i = 0; i < 10; ++i) stepper.step();
    const double e = stepper.energy().total();
    const LyapunovValues v = lyapunov_diagnostics(
        cfg.params, stepper.mesh(), stepper.fem(), stepper.history(), stepper.state(),
        LyapunovWeights::defaults(cfg.params), e);
    CHECK(v.L > 0.0);
    CHECK(v.L / e > 900.0);
    CHECK(v.L / e < 1100.0);
}

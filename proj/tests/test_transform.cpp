#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bresse/fem.hpp"
#include "bresse/transform.hpp"

using namespace bresse;

namespace {

const double kPi = 3.14159265358979323846;

// Initial data with hand-computed integrals over [0, 1]:
//   psi0 = 1 + cos(pi x)   -> 1        psi1 = 0.5    -> 0.5
//   w0   = 2 + cos(2 pi x) -> 2        w1   = -0.25  -> -0.25
InitialData biased_data() {
    InitialData init = InitialData::zero();
    init.phi0 = [](double x) { return std::sin(kPi * x); };
    init.psi0 = [](double x) { return 1.0 + std::cos(kPi * x); };
    init.psi1 = [](double) { return 0.5; };
    init.w0 = [](double x) { return 2.0 + std::cos(2.0 * kPi * x); };
    init.w1 = [](double) { return -0.25; };
    return init;
}

}  // namespace

TEST_CASE("initial_means integrates each component") {
    const Mesh mesh = build_mesh(200, 1.0);
    const auto means = initial_means(biased_data(), mesh);
    CHECK(means[0] == doctest::Approx(2.0 / kPi).epsilon(1e-8));  // phi0
    CHECK(means[1] == doctest::Approx(0.0));                      // phi1
    CHECK(means[2] == doctest::Approx(1.0).epsilon(1e-10));       // psi0
    CHECK(means[3] == doctest::Approx(0.5).epsilon(1e-12));       // psi1
    CHECK(means[4] == doctest::Approx(2.0).epsilon(1e-10));       // w0
    CHECK(means[5] == doctest::Approx(-0.25).epsilon(1e-12));     // w1
}

TEST_CASE("mode constants match their closed forms") {
    const BresseParams p;  // k1 = 1, rho1 = rho2 = 0.1, l = 0.05, L = 1
    const Mesh mesh = build_mesh(200, 1.0);
    const ModeConstants c = compute_mode_constants(p, biased_data(), mesh);

    const double a0 = std::sqrt(1.0 / 0.1 + 0.05 * 0.05 / 0.1);
    const double kappa = 1.0 / (0.1 * a0 * a0);
    CHECK(c.a0 == doctest::Approx(a0).epsilon(1e-14));
    CHECK(c.kappa == doctest::Approx(kappa).epsilon(1e-14));
    CHECK(c.beta == doctest::Approx(1.0 / kappa - 1.0).epsilon(1e-12));
    CHECK(c.a1 == doctest::Approx(kappa * (1.0 + 0.05 * 2.0)).epsilon(1e-8));
    CHECK(c.a2 == doctest::Approx(kappa / a0 * (0.5 + 0.05 * -0.25)).epsilon(1e-8));
    CHECK(c.a3 ==
          doctest::Approx((1.0 - kappa) * 0.5 - kappa * 0.05 * -0.25).epsilon(1e-8));
    CHECK(c.a4 == doctest::Approx((1.0 - kappa) * 1.0 - kappa * 0.05 * 2.0).epsilon(1e-8));
}

TEST_CASE("mode trajectories recover the initial integrals") {
    const Mesh mesh = build_mesh(200, 1.0);
    const ModeConstants c = compute_mode_constants(BresseParams{}, biased_data(), mesh);
    CHECK(c.psi_integral(0.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(c.w_integral(0.0) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("the rotation-mean trajectory solves its oscillator equation") {
    // d2/dt2 I(t) = -a0^2 (I(t) - a3 t - a4)
    const Mesh mesh = build_mesh(200, 1.0);
    const ModeConstants c = compute_mode_constants(BresseParams{}, biased_data(), mesh);
    const double dt = 1e-4;
    for (double t : {0.3, 1.7, 4.2}) {
        const double second =
            (c.psi_integral(t + dt) - 2.0 * c.psi_integral(t) + c.psi_integral(t - dt)) /
            (dt * dt);
        const double want = -c.a0 * c.a0 * (c.psi_integral(t) - c.a3 * t - c.a4);
        CHECK(second == doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("shifted initial data has vanishing rotation and axial means") {
    const Mesh mesh = build_mesh(200, 1.0);
    const InitialData init = biased_data();
    const ModeConstants c = compute_mode_constants(BresseParams{}, init, mesh);
    const InitialData shifted = shift_initial_data(init, c);
    const auto means = initial_means(shifted, mesh);
    CHECK(std::fabs(means[2]) < 1e-10);
    CHECK(std::fabs(means[3]) < 1e-10);
    CHECK(std::fabs(means[4]) < 1e-10);
    CHECK(std::fabs(means[5]) < 1e-10);
    // the transverse displacement is untouched
    CHECK(means[0] == doctest::Approx(2.0 / kPi).epsilon(1e-8));
}

TEST_CASE("shifting only moves each profile by a constant") {
    const Mesh mesh = build_mesh(50, 1.0);
    const InitialData init = biased_data();
    const ModeConstants c = compute_mode_constants(BresseParams{}, init, mesh);
    const InitialData shifted = shift_initial_data(init, c);
    const double off0 = init.psi0(0.3) - shifted.psi0(0.3);
    const double off1 = init.psi0(0.8) - shifted.psi0(0.8);
    CHECK(off0 == doctest::Approx(off1).epsilon(1e-13));
}

TEST_CASE("reconstruction undoes the shift at t = 0") {
    const Mesh mesh = build_mesh(120, 1.0);
    const InitialData init = biased_data();
    const ModeConstants c = compute_mode_constants(BresseParams{}, init, mesh);
    const InitialData shifted = shift_initial_data(init, c);

    Vec psi = project_initial(shifted.psi0, mesh);
    Vec w = project_initial(shifted.w0, mesh);
    reconstruct_original(psi, w, c, 0.0);

    const Vec psi_orig = project_initial(init.psi0, mesh);
    const Vec w_orig = project_initial(init.w0, mesh);
    for (std::size_t i = 0; i < psi.size(); i += 7) {
        CHECK(psi[i] == doctest::Approx(psi_orig[i]).epsilon(1e-10));
        CHECK(w[i] == doctest::Approx(w_orig[i]).epsilon(1e-10));
    }
}

TEST_CASE("zero-mean data produces vanishing oscillation amplitudes") {
    const Mesh mesh = build_mesh(200, 1.0);
    const ModeConstants c =
        compute_mode_constants(BresseParams{}, InitialData::first_modes(1.0), mesh);
    CHECK(std::fabs(c.a1) < 1e-10);
    CHECK(std::fabs(c.a2) < 1e-10);
    CHECK(std::fabs(c.a3) < 1e-10);
    CHECK(std::fabs(c.a4) < 1e-10);
}

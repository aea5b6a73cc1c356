#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bresse/band_matrix.hpp"
#include "bresse/fem.hpp"

using namespace bresse;

namespace {

// Independent dense reference: Gaussian elimination with partial pivoting.
Vec dense_solve(std::vector<Vec> a, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        }
        REQUIRE(std::fabs(a[piv][col]) > 1e-300);
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a[ri][c] * x[c];
        x[ri] = acc / a[ri][ri];
    }
    return x;
}

double rel_err(const Vec& got, const Vec& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return std::sqrt(num / (den > 0 ? den : 1.0));
}

}  // namespace

TEST_CASE("banded solve matches a dense reference on random systems") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 5u, 12u, 40u}) {
        for (std::size_t kl : {0u, 1u, 2u, 5u}) {
            for (std::size_t ku : {0u, 1u, 2u, 5u}) {
                if (kl >= n || ku >= n) continue;
                CAPTURE(n);
                CAPTURE(kl);
                CAPTURE(ku);
                BandMatrix band(n, kl, ku);
                std::vector<Vec> dense(n, Vec(n, 0.0));
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j + kl < i || i + ku < j) continue;
                        double v = uni(rng);
                        if (i == j) v += 3.0;  // keep the system well conditioned
                        band.set(i, j, v);
                        dense[i][j] = v;
                    }
                }
                Vec b(n);
                for (double& v : b) v = uni(rng);
                const Vec want = dense_solve(dense, b);
                band.factor();
                const Vec got = band.solve(b);
                CHECK(rel_err(got, want) < 1e-12);
            }
        }
    }
}

TEST_CASE("pivoting handles a zero leading diagonal") {
    BandMatrix band(2, 1, 1);
    band.set(0, 0, 0.0);
    band.set(0, 1, 1.0);
    band.set(1, 0, 1.0);
    band.set(1, 1, 0.0);
    band.factor();
    const Vec x = band.solve({2.0, 3.0});
    CHECK(x[0] == doctest::Approx(3.0));
    CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("tridiagonal systems embed as kl = ku = 1 bands") {
    const Mesh mesh = build_mesh(9, 1.0);
    const FemMatrices fem = assemble(mesh);
    const std::size_t n = mesh.n_nodes();
    BandMatrix band(n, 1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = (i == 0 ? 0 : i - 1); j <= i + 1 && j < n; ++j) {
            band.set(i, j, fem.M.get(i, j));
        }
    }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(static_cast<double>(i));
    const Vec rhs = fem.M.apply(x);
    band.factor();
    CHECK(rel_err(band.solve(rhs), x) < 1e-12);
}

TEST_CASE("mutating a factored matrix is rejected") {
    BandMatrix band(3, 1, 1);
    for (std::size_t i = 0; i < 3; ++i) band.set(i, i, 2.0);
    band.factor();
    CHECK_THROWS_AS(band.set(0, 0, 1.0), std::logic_error);
    CHECK_THROWS_AS(band.add(1, 1, 1.0), std::logic_error);
}

TEST_CASE("entries off the band are rejected") {
    BandMatrix band(5, 1, 2);
    CHECK_THROWS_AS(band.set(3, 0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(band.set(0, 3, 1.0), std::out_of_range);
    band.set(0, 2, 1.0);  // on the outer superdiagonal: fine
}

TEST_CASE("a singular system reports the failing column") {
    BandMatrix band(3, 1, 1);
    band.set(0, 0, 1.0);
    band.set(1, 1, 0.0);  // row 1 and 2 entirely zero apart from coupling
    CHECK_THROWS_AS(band.factor(), SingularSystem);
}

TEST_CASE("solve before factor is rejected") {
    BandMatrix band(2, 0, 0);
    band.set(0, 0, 1.0);
    band.set(1, 1, 1.0);
    CHECK_THROWS_AS(band.solve({1.0, 1.0}), std::logic_error);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qjp/meter_grid.hpp"

using namespace qjp;

namespace {

constexpr double kPi = std::numbers::pi;
const Grid kGrid{1024, 40.0 / 1024};

} // namespace

TEST_CASE("gaussian state basics") {
    GridWavefunction psi = gaussian_state(kGrid, 0.0, 1.0);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));

    Density rho = position_density(psi);
    CHECK(rho.integral() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(rho.mean()) < 1e-12);
    // Quadrature oracle: |psi|^2 is a normal density of variance h^2/2.
    CHECK(rho.variance() == doctest::Approx(0.5).epsilon(1e-10));

    Density rho_p = momentum_density(psi);
    CHECK(std::abs(rho_p.mean()) < 1e-10);
    CHECK(rho_p.variance() == doctest::Approx(0.5).epsilon(1e-10));

    SUBCASE("width preconditions") {
        CHECK_THROWS_AS(gaussian_state(kGrid, 0.0, 0.01), ResolutionError);
        CHECK_THROWS_AS(gaussian_state(kGrid, 0.0, 10.0), ResolutionError);
    }
    SUBCASE("momentum spread scales inversely with width") {
        GridWavefunction wide = gaussian_state(kGrid, 0.0, 2.0);
        CHECK(momentum_density(wide).variance() == doctest::Approx(1.0 / 8.0).epsilon(1e-10));
    }
}

TEST_CASE("parseval identity") {
    GridWavefunction psi = gaussian_state(kGrid, 1.3, 1.5);
    CVec hat = fourier_forward(kGrid, psi.samples);
    double x_norm = psi.samples.squaredNorm() * kGrid.dx;
    double p_norm = hat.squaredNorm() * kGrid.dp();
    CHECK(x_norm == doctest::Approx(p_norm).epsilon(1e-12));
}

TEST_CASE("translation") {
    GridWavefunction psi = gaussian_state(kGrid, 0.0, 1.0);
    SUBCASE("zero shift is the identity") {
        GridWavefunction s = translate(psi, 0.0);
        CHECK((s.samples - psi.samples).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("shift moves the mean, quadrature oracle") {
        GridWavefunction s = translate(psi, 2.0);
        CHECK(position_density(s).mean() == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("round trip and additivity") {
        GridWavefunction fwd = translate(translate(psi, 1.7), -1.7);
        CHECK((fwd.samples - psi.samples).cwiseAbs().maxCoeff() < 1e-12);
        GridWavefunction ab = translate(translate(psi, 1.0), 2.0);
        GridWavefunction once = translate(psi, 3.0);
        CHECK((ab.samples - once.samples).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("wrapping shifts are rejected") {
        CHECK_THROWS_AS(translate(psi, 19.0), AliasError);
        CHECK_THROWS_AS(translate(psi, 25.0), AliasError);
    }
}

TEST_CASE("plane phase moves the momentum density") {
    GridWavefunction psi = gaussian_state(kGrid, 0.0, 1.0);
    double p0 = 3.0;
    CVec s = psi.samples;
    for (int k = 0; k < kGrid.n_points; ++k)
        s[k] *= std::exp(Complex(0.0, p0 * kGrid.x(k)));
    Density rho = momentum_density(GridWavefunction(kGrid, s));
    CHECK(rho.mean() == doctest::Approx(p0).epsilon(1e-10));
}

TEST_CASE("meter statistics") {
    GridWavefunction psi = gaussian_state(kGrid, 0.0, 1.0);
    MeterStatistics ms = meter_statistics(psi);
    CHECK(std::abs(ms.mean_x) < 1e-12);
    CHECK(std::abs(ms.mean_p) < 1e-10);
    CHECK(ms.var_p == doctest::Approx(0.5).epsilon(1e-10)); // 1/(2 h^2), h = 1
    CHECK(std::abs(ms.cov_s) < 1e-10);                      // real profile
    CHECK(ms.cov_a == doctest::Approx(0.5).epsilon(1e-10)); // resolved commutator

    GridWavefunction wide = gaussian_state(kGrid, 0.0, 2.0);
    MeterStatistics msw = meter_statistics(wide);
    CHECK(msw.var_p == doctest::Approx(1.0 / 8.0).epsilon(1e-10));
    CHECK(msw.cov_a == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("density scaling law") {
    // On a grid where x/2 lands back on the lattice, the width-2 profile is
    // the half-scaled width-1 profile.
    GridWavefunction unit = gaussian_state(kGrid, 0.0, 1.0);
    GridWavefunction doubled = gaussian_state(kGrid, 0.0, 2.0);
    Density r1 = position_density(unit);
    Density r2 = position_density(doubled);
    int n = kGrid.n_points;
    for (int k = n / 4; k < 3 * n / 4; k += 8) {
        int half = n / 2 + (k - n / 2) / 2; // index of x_k / 2
        if ((k - n / 2) % 2 != 0)
            continue;
        CHECK(r2.samples[k] == doctest::Approx(0.5 * r1.samples[half]).epsilon(1e-8));
    }
}

TEST_CASE("phase-space transform") {
    GridWavefunction psi = gaussian_state(kGrid, 0.0, 1.0);
    WignerTable w = wigner_ville(psi);

    SUBCASE("gaussian closed form, pointwise") {
        double worst = 0.0;
        for (int k = 0; k < kGrid.n_points; k += 3)
            for (int j = 0; j < kGrid.n_points; j += 3) {
                double x = kGrid.x(k), p = w.p[j];
                worst = std::max(worst,
                                 std::abs(w.values(k, j) - std::exp(-x * x - p * p) / kPi));
            }
        CHECK(worst < 1e-8);
    }
    SUBCASE("total integral and marginals") {
        CHECK(w.total_integral() == doctest::Approx(1.0).epsilon(1e-8));
        Density rho = position_density(psi);
        RVec pm = w.position_marginal();
        double worst = 0.0;
        for (int k = 0; k < kGrid.n_points; ++k)
            worst = std::max(worst, std::abs(pm[k] - rho.samples[k]));
        CHECK(worst < 1e-8);

        Density rho_p = momentum_density(zero_pad(psi, 2));
        RVec mm = w.momentum_marginal();
        int offset = kGrid.n_points / 2;
        worst = 0.0;
        for (int j = 0; j < kGrid.n_points; ++j)
            worst = std::max(worst, std::abs(mm[j] - rho_p.samples[j + offset]));
        CHECK(worst < 1e-8);
    }
    SUBCASE("superposed gaussians go negative") {
        GridWavefunction a = translate(psi, 4.0);
        GridWavefunction b = translate(psi, -4.0);
        GridWavefunction cat = GridWavefunction(kGrid, a.samples + b.samples).normalized();
        WignerTable wc = wigner_ville(cat);
        CHECK(wc.values.minCoeff() < -1e-3);
        // Interference-fringe minimum near the origin; quadrature oracle is
        // the closed form 2 cos(2 p x0) envelope at x = 0 scaled by the
        // normalised gaussian weights.
        CHECK(wc.total_integral() == doctest::Approx(1.0).epsilon(1e-8));
    }
}

#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "fixtures.hpp"
#include "ppvac/errors.hpp"
#include "ppvac/exciton.hpp"

using namespace ppvac;

TEST_CASE("reference dimer matches an independent 4x4 eigendecomposition")
{
    // numpy.linalg.eigh of the {g, a, b, f} Hamiltonian and dipole operator
    const ExcitonBasis b = diagonalize_dimer(fixtures::desk_dimer());
    CHECK(b.omega_alpha == doctest::Approx(2.4519258240356723).epsilon(1e-14));
    CHECK(b.omega_beta == doctest::Approx(2.398074175964328).epsilon(1e-14));
    CHECK(b.omega_f == doctest::Approx(4.85).epsilon(1e-15));
    CHECK(std::abs(b.mu.alpha_g) / si::debye == doctest::Approx(11.143316515398874).epsilon(1e-12));
    CHECK(std::abs(b.mu.beta_g) / si::debye == doctest::Approx(4.982619495570451).epsilon(1e-12));
    CHECK(std::abs(b.mu.f_alpha) / si::debye == doctest::Approx(8.76476991866946).epsilon(1e-12));
    CHECK(std::abs(b.mu.f_beta) / si::debye == doctest::Approx(8.49581121922957).epsilon(1e-12));
}

TEST_CASE("uncoupled and degenerate limits")
{
    DimerSpec d = fixtures::desk_dimer();
    d.coupling_j = 0.0;
    ExcitonBasis b = diagonalize_dimer(d);
    CHECK(b.theta == 0.0);
    CHECK(b.omega_alpha == doctest::Approx(d.omega_a));
    CHECK(b.omega_beta == doctest::Approx(d.omega_b));
    CHECK(b.mu.alpha_g == doctest::Approx(d.mu_ag));
    CHECK(b.mu.f_alpha == doctest::Approx(d.mu_bg));

    d.omega_b = d.omega_a;
    d.coupling_j = 0.02;
    b = diagonalize_dimer(d);
    CHECK(b.theta == doctest::Approx(pi / 4.0));
    CHECK(b.splitting() == doctest::Approx(0.04));
}

TEST_CASE("ground state pinned to zero and f at the sum of sites")
{
    const ExcitonBasis b = diagonalize_dimer(fixtures::desk_dimer());
    CHECK(b.omega_g == 0.0);
    CHECK(b.omega_f == doctest::Approx(b.omega_alpha + b.omega_beta).epsilon(1e-14));
    CHECK(b.omega_alpha >= b.omega_beta);
}

TEST_CASE("invalid dimers are rejected")
{
    DimerSpec d = fixtures::desk_dimer();
    d.omega_a = -1.0;
    CHECK_THROWS_AS(diagonalize_dimer(d), PreconditionError);
    d = fixtures::desk_dimer();
    d.mu_bg = -1e-30;
    CHECK_THROWS_AS(diagonalize_dimer(d), PreconditionError);
}

TEST_CASE("random dimers agree with Eigen's symmetric eigensolver")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> w(1.5, 3.5), j(-0.2, 0.2), mu(0.0, 12.0);
    for (int trial = 0; trial < 200; ++trial) {
        DimerSpec d{w(rng), w(rng), j(rng), mu(rng) * si::debye, mu(rng) * si::debye};
        const ExcitonBasis b = diagonalize_dimer(d);

        Eigen::Matrix2d h;
        h << d.omega_a, d.coupling_j, d.coupling_j, d.omega_b;
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
        CHECK(b.omega_beta == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
        CHECK(b.omega_alpha == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));

        // (cos, sin) must be the upper eigenvector.
        const Eigen::Vector2d v(std::cos(b.theta), std::sin(b.theta));
        CHECK((h * v - b.omega_alpha * v).norm() < 1e-12);

        // Rotation preserves total oscillator strength in both manifolds.
        const double site = d.mu_ag * d.mu_ag + d.mu_bg * d.mu_bg;
        const double up = b.mu.alpha_g * b.mu.alpha_g + b.mu.beta_g * b.mu.beta_g;
        const double down = b.mu.f_alpha * b.mu.f_alpha + b.mu.f_beta * b.mu.f_beta;
        CHECK(up == doctest::Approx(site).epsilon(1e-12));
        CHECK(down == doctest::Approx(site).epsilon(1e-12));
    }
}

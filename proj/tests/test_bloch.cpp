#include <doctest.h>

#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"
#include "pbg/oracle.hpp"
#include "support.hpp"

using namespace pbg;
using pbg::test::rel;

TEST_CASE("Chebyshev functions: low orders and hand values")
{
    CHECK(chebyshev_xi(0.3, -1) == -1.0);
    CHECK(chebyshev_xi(0.3, 0) == 0.0);
    CHECK(chebyshev_xi(0.3, 1) == 1.0);
    CHECK(chebyshev_xi(0.3, 2) == doctest::Approx(0.6));
    CHECK(chebyshev_pair(0.3, 0).theta == 1.0);
    CHECK(chebyshev_pair(0.3, 1).theta == 0.3);
    CHECK(chebyshev_pair(0.3, 2).theta == doctest::Approx(2 * 0.09 - 1.0));

    // U_0..U_4 at -1.25: 1, -2.5, 5.25, -10.625, 21.3125.
    const double expected[] = {1.0, -2.5, 5.25, -10.625, 21.3125};
    for (int n = 1; n <= 5; ++n) {
        CHECK(chebyshev_xi(-1.25, n) == expected[n - 1]);
    }
    CHECK(chebyshev_pair(-1.25, 5).theta == doctest::Approx(-16.015625).epsilon(1e-15));

    CHECK_THROWS_AS(chebyshev_xi(0.5, -2), DomainError);
    CHECK_THROWS_AS(chebyshev_pair(0.5, kMaxPeriods + 1), RangeError);
    CHECK_THROWS_AS(chebyshev_pair(1e30, 200), RangeError);
}

TEST_CASE("Chebyshev functions: trigonometric form and Pell identity")
{
    auto rng = test::seeded(21);
    std::uniform_real_distribution<double> beta_dist(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> gap_dist(1.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double beta = beta_dist(rng);
        const int n = 1 + i % 30;
        const auto p = chebyshev_pair(std::cos(beta), n);
        CHECK(std::abs(p.xi - std::sin(n * beta) / std::sin(beta)) < 1e-11);
        CHECK(std::abs(p.theta - std::cos(n * beta)) < 1e-11);

        // Theta^2 - (x^2 - 1) Xi^2 = 1 for any real x, gaps included.
        const double x = (i % 2 ? -1.0 : 1.0) * gap_dist(rng);
        const auto q = chebyshev_pair(x, 1 + i % 12);
        CHECK(rel(q.theta * q.theta - (x * x - 1.0) * q.xi * q.xi, 1.0) < 1e-9 * q.theta * q.theta);
    }
    // Band-edge limits: Xi_N(1) = N, Xi_N(-1) = (-1)^{N-1} N.
    CHECK(chebyshev_xi(1.0, 7) == 7.0);
    CHECK(chebyshev_xi(-1.0, 6) == -6.0);
}

TEST_CASE("Chebyshev derivative")
{
    for (const double x : {-1.3, -1.0, -0.4, 0.0, 0.8, 1.0, 1.1}) {
        for (int n = 0; n <= 12; ++n) {
            const auto d = numeric_derivative([n](double v) { return chebyshev_xi(v, n); }, x, 1e-4);
            CHECK(std::abs(chebyshev_xi_derivative(x, n) - d.value) < 1e-6 * std::max(1.0, std::abs(d.value)));
        }
    }
    CHECK(chebyshev_xi_derivative(0.5, -1) == 0.0);
}

TEST_CASE("matrix power reduction matches repeated multiplication")
{
    auto rng = test::seeded(22);
    std::uniform_real_distribution<double> freq(0.05, 2.5);
    for (int i = 0; i < 32; ++i) {
        const auto cell = test::random_cell(rng);
        const double w = freq(rng);
        const auto m = direct_matrix_product(cell, w);
        const double x = bloch_cos(amplitudes_from_matrix(m).t).x;
        TransferMatrix power = TransferMatrix::identity();
        for (int n = 0; n <= 20; ++n) {
            CHECK(relative_difference(smrf_power(m, x, n), power) < 1e-10);
            power = power * m;
        }
    }
}

TEST_CASE("matrix power reduction guards")
{
    const auto m = direct_matrix_product(UnitCell::quarter_wave(1.0, 2.0), 0.6);
    const double x = m.half_trace().real();
    CHECK(relative_difference(smrf_power(m, x, 0), TransferMatrix::identity()) < 1e-15);
    CHECK(relative_difference(smrf_power(m, x, 1), m) < 1e-15);
    CHECK_THROWS_AS(smrf_power(m, x + 1e-3, 4), DomainError);
    CHECK_THROWS_AS(smrf_power(m, x, -1), DomainError);
    CHECK_THROWS_AS(smrf_power(m, x, kMaxPeriods + 1), RangeError);
}

TEST_CASE("Bloch cosine of the quarter-wave cell")
{
    const auto mid = bloch_cos(qw_unit_amplitudes(1.0, 2.0, 1.0).t);
    CHECK(mid.x == doctest::Approx(-1.25).epsilon(1e-15));
    CHECK(mid.in_gap);
    CHECK_FALSE(bloch_cos(qw_unit_amplitudes(1.0, 2.0, 0.5).t).in_gap);
    // (cos(pi w) - R) / T
    for (const double w : {0.1, 0.33, 0.9, 1.6}) {
        const double x = bloch_cos(qw_unit_amplitudes(1.0, 2.0, w).t).x;
        CHECK(x == doctest::Approx((std::cos(kPi * w) - 1.0 / 9.0) / (8.0 / 9.0)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(bloch_cos(Complex(0.0, 0.0)), DomainError);
}

TEST_CASE("stack amplitudes at the midgap")
{
    const Stack stack{UnitCell::quarter_wave(1.0, 2.0), 5};
    const auto s = stack_amplitudes(stack, 1.0);
    CHECK(rel(1.0 / s.t, Complex(-16.015625, 0.0)) < 1e-13);
    CHECK(s.transmittance() == doctest::Approx(0.0038986317668054729328).epsilon(1e-13));
    const auto direct = amplitudes_from_matrix(direct_matrix_product(stack, 1.0));
    CHECK(rel(s.t, direct.t) < 1e-12);
    CHECK(rel(s.r, direct.r) < 1e-12);
}

TEST_CASE("stack amplitudes: losslessness and agreement with the layer product")
{
    auto rng = test::seeded(23);
    std::uniform_real_distribution<double> freq(0.05, 2.5);
    for (int i = 0; i < 64; ++i) {
        const auto cell = test::random_cell(rng);
        const double w = freq(rng);
        const int n = 1 + i % 20;
        const Stack stack{cell, n};
        const auto s = stack_amplitudes(stack, w);
        CHECK(std::abs(s.transmittance() + s.reflectance() - 1.0) < 1e-10);
        const auto direct = amplitudes_from_matrix(direct_matrix_product(stack, w));
        CHECK(std::abs(s.t - direct.t) < 1e-10 * std::max(1.0, std::abs(direct.t)));
        CHECK(std::abs(s.r - direct.r) < 1e-10);

        // 1/t_N = Theta_N - i mu' Xi_N with mu' = Im(t) / |t|^2.
        const auto unit = cell_amplitudes(cell, w);
        const auto p = chebyshev_pair(bloch_cos(unit.t).x, n);
        const double mu_prime = unit.t.imag() / std::norm(unit.t);
        CHECK(std::abs(1.0 / s.t - Complex(p.theta, -mu_prime * p.xi)) < 1e-9 * std::abs(1.0 / s.t));
    }

    // N = 1 reproduces the unit cell; N = 0 is transparent.
    const auto unit = qw_unit_amplitudes(1.0, 2.0, 0.6);
    const auto one = stack_amplitudes(unit.t, unit.r, 1);
    CHECK(std::abs(one.t - unit.t) < 1e-15);
    CHECK(std::abs(one.r - unit.r) < 1e-15);
    const auto none = stack_amplitudes(unit.t, unit.r, 0);
    CHECK(std::abs(none.t - 1.0) < 1e-15);
    CHECK(std::abs(none.r) < 1e-15);
}

#include <doctest.h>

#include <vector>

#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"
#include "pbg/fields.hpp"
#include "pbg/oracle.hpp"
#include "support.hpp"

using namespace pbg;

TEST_CASE("single interface against the analytic step")
{
    // A thin layer of the ambient index is a pure phase; a zero-phase layer of
    // another index reduces to interface(a -> n) interface(n -> a) = identity.
    const auto m = layer_matrix({2.0, 1e-300}, 1.0, 1.0);
    CHECK(relative_difference(m, TransferMatrix::identity()) < 1e-15);

    // Half-wave layer (k L = pi) in the ambient: reflectionless, t = -1 up to
    // the ambient phase convention, |t| = 1.
    const double n = 2.0;
    const auto half = layer_matrix({n, kPi / n}, 1.0, 1.0);
    const auto s = amplitudes_from_matrix(half);
    CHECK(std::abs(s.r) < 1e-15);
    CHECK(std::abs(std::abs(s.t) - 1.0) < 1e-15);

    // Quarter-wave layer of index n in ambient 1: R = ((n^2 - 1) / (n^2 + 1))^2.
    const auto quarter = amplitudes_from_matrix(layer_matrix({n, kPi / (2.0 * n)}, 1.0, 1.0));
    CHECK(quarter.reflectance() == doctest::Approx(std::pow((n * n - 1.0) / (n * n + 1.0), 2.0)).epsilon(1e-14));
}

TEST_CASE("direct product of a single layer is its own matrix")
{
    const Layer l{1.7, 0.9};
    const std::vector<Layer> one{l};
    CHECK(relative_difference(direct_matrix_product(one, 1.2, 0.8), layer_matrix(l, 1.2, 0.8)) == 0.0);
}

TEST_CASE("direct product of the midgap quarter-wave stack")
{
    const Stack stack{UnitCell::quarter_wave(1.0, 2.0), 5};
    const auto m = direct_matrix_product(stack, 1.0);
    CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
    const auto s = amplitudes_from_matrix(m);
    // Frozen from an independent 40-digit evaluation of the same layer product.
    CHECK(std::abs(s.t - Complex(-0.062439024390243902439, 0.0)) < 1e-15);
    CHECK(s.transmittance() == doctest::Approx(0.0038986317668054729328).epsilon(1e-13));
}

TEST_CASE("numeric derivative")
{
    const auto sq = numeric_derivative([](double x) { return x * x; }, 3.0, 1e-3);
    CHECK(sq.value == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_FALSE(sq.accuracy_warning);

    const auto flat = numeric_derivative([](double) { return 4.2; }, 1.0, 1e-4);
    CHECK(flat.value == 0.0);
    CHECK(flat.error_estimate == 0.0);

    const auto cplx = numeric_derivative([](double x) { return std::polar(1.0, 2.0 * x); }, 0.3, 1e-3);
    CHECK(std::abs(cplx.value - Complex(0.0, 2.0) * std::polar(1.0, 0.6)) < 1e-10);

    // A step far too large for a rapidly varying function raises the flag.
    const auto rough = numeric_derivative([](double x) { return std::sin(50.0 * x); }, 0.1, 0.05, 1e-7);
    CHECK(rough.accuracy_warning);
}

TEST_CASE("ODE oracle: homogeneous medium is a plane wave")
{
    const Stack stack{UnitCell({{1.5, 0.8}}, 1.5), 4};
    const auto ode = ode_field_solve(stack, 1.3);
    double worst = 0.0;
    for (std::size_t i = 0; i < ode.x.size(); ++i) {
        worst = std::max(worst, std::abs(std::abs(ode.value[i]) - 1.0));
    }
    CHECK(worst < 1e-10);
    CHECK(std::abs(ode.reflection) < 1e-10);
    CHECK(std::abs(ode.value.front() - 1.0) < 1e-12);
}

TEST_CASE("ODE oracle: energy balance and amplitudes")
{
    auto rng = test::seeded(11);
    for (int i = 0; i < 4; ++i) {
        const Stack stack{test::random_cell(rng), 3};
        const double w = 0.4 + 0.3 * i;
        const auto ode = ode_field_solve(stack, w);
        CHECK(std::abs(std::norm(ode.transmission) + std::norm(ode.reflection) - 1.0) < 1e-8);
        const auto s = amplitudes_from_matrix(direct_matrix_product(stack, w));
        CHECK(std::abs(std::abs(ode.transmission) - std::abs(s.t)) < 1e-8);
        CHECK(std::abs(std::abs(ode.reflection) - std::abs(s.r)) < 1e-8);
    }
}

TEST_CASE("ODE oracle: convergence failure is reported")
{
    const Stack stack{UnitCell::quarter_wave(1.0, 2.0), 5};
    OdeOptions coarse;
    coarse.steps_per_wavelength = 4;
    coarse.min_steps_per_layer = 1;
    CHECK_THROWS_AS(ode_field_solve(stack, 1.0, coarse), AccuracyError);
    CHECK_THROWS_AS(ode_field_solve(stack, 0.0), DomainError);
}

TEST_CASE("ODE oracle matches the cell field at the midgap")
{
    const Stack stack{UnitCell::quarter_wave(1.0, 2.0), 5};
    const auto ode = ode_field_solve(stack, 1.0);
    const auto fields = stack_field(stack, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < ode.x.size(); ++i) {
        worst = std::max(worst, std::abs(field_at(fields, ode.x[i]) - ode.value[i]));
    }
    CHECK(worst < 1e-8);
}

#include <doctest.h>

#include "pbg/bloch.hpp"
#include "pbg/dom.hpp"
#include "pbg/errors.hpp"
#include "pbg/oracle.hpp"
#include "support.hpp"

using namespace pbg;
using pbg::test::rel;

namespace {

const Stack kDefault{UnitCell::quarter_wave(1.0, 2.0), 5};
constexpr double kVBulk = 0.75;

} // namespace

TEST_CASE("bulk velocity")
{
    CHECK(bulk_velocity(1.0, 2.0) == 0.75);
    CHECK(bulk_velocity(UnitCell::quarter_wave(1.0, 2.0)) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(bulk_velocity(UnitCell::quarter_wave(1.3, 3.1)) == doctest::Approx(bulk_velocity(1.3, 3.1)).epsilon(1e-15));
    CHECK(bulk_velocity(UnitCell({{2.0, 1.0}, {2.0, 3.0}}, 1.0)) == 0.5);
    CHECK_THROWS_AS(bulk_velocity(0.0, 1.0), DomainError);
}

TEST_CASE("density of modes: frozen reference values")
{
    // rho * v_bulk for QW(1,2), N = 5, from a 40-digit evaluation of the
    // transmission phase slope of the explicit layer product.
    const std::pair<double, double> frozen[] = {
        {1.0, 0.29941463414634146},
        {0.5, 1.0697851768535358},
        {0.25, 1.0373695967993264},
        {0.7, 2.0239909238707440},
    };
    for (const auto& [w, expected] : frozen) {
        CAPTURE(w);
        CHECK(rel(dom_quarter_wave(1.0, 2.0, 5, w).rho * kVBulk, expected) < 1e-12);
        CHECK(rel(dom_closed_form(kDefault, w).rho * kVBulk, expected) < 1e-12);
        CHECK(rel(dom_phase_derivative(kDefault, w).rho * kVBulk, expected) < 1e-8);
    }
}

TEST_CASE("density of modes: routes agree on random cells")
{
    auto rng = test::seeded(31);
    std::uniform_real_distribution<double> freq(0.1, 2.0);
    int compared = 0;
    for (int i = 0; i < 40; ++i) {
        const Stack stack{test::random_cell(rng), 1 + i % 9};
        const double w = freq(rng);
        if (near_band_edge(stack.cell, w, 1e-3)) {
            continue;
        }
        const auto phase = dom_phase_derivative(stack, w);
        const auto closed = dom_closed_form(stack, w);
        CHECK(rel(closed.rho, phase.rho) < 1e-6);
        ++compared;
    }
    CHECK(compared > 30);
}

TEST_CASE("density of modes: symmetric about the midgap")
{
    for (int k = 1; k < 100; ++k) {
        const double w = 0.01 * k;
        for (const int n : {1, 5, 8}) {
            CHECK(rel(dom_quarter_wave(1.0, 2.0, n, w).rho, dom_quarter_wave(1.0, 2.0, n, 2.0 - w).rho) < 1e-10);
        }
    }
}

TEST_CASE("density of modes: exactly at a band edge")
{
    const double edge = band_edges(1.0, 2.0, 1.0).edges.front();
    const auto qw = dom_quarter_wave(1.0, 2.0, 5, edge);
    const auto closed = dom_closed_form(kDefault, edge);
    const auto phase = dom_phase_derivative(kDefault, edge);
    CHECK(std::isfinite(qw.rho));
    CHECK(rel(qw.rho, phase.rho) < 1e-4);
    CHECK(rel(closed.rho, phase.rho) < 1e-4);
}

TEST_CASE("density of modes: homogeneous stack")
{
    for (const double n : {1.0, 1.7}) {
        const Stack stack{UnitCell::quarter_wave(n, n), 5};
        for (const double w : {0.13, 0.5, 0.99, 1.0, 1.37}) {
            for (const auto route : {DomRoute::phase_derivative, DomRoute::closed_form, DomRoute::quarter_wave}) {
                CAPTURE(w);
                CAPTURE(to_string(route));
                CHECK(rel(density_of_modes(stack, w, route).rho, n / kSpeedOfLight) < 1e-6);
            }
        }
    }
}

TEST_CASE("closed form: alternative readings of the derivative terms do not match")
{
    // The two terms carrying csc^2(beta) are built from d(mu)/d(omega); using
    // d(mu')/d(omega) in their place, or mu' throughout, gives a different function.
    const double w = 0.43;
    const Complex t = qw_unit_amplitudes(1.0, 2.0, w).t;
    const Complex dt = qw_unit_transmission_derivative(1.0, 2.0, w);
    const double T = std::norm(t);
    const double mu = t.real() / T;
    const double mu_im = t.imag() / T;
    const double dT = 2.0 * (std::conj(t) * dt).real();
    const double dmu = (dt.real() * T - t.real() * dT) / (T * T);
    const double dmu_im = (dt.imag() * T - t.imag() * dT) / (T * T);
    const auto [xi, theta] = chebyshev_pair(mu, 5);
    const double csc2 = 1.0 / (1.0 - mu * mu);
    const double d = kDefault.cell.length();
    const double denominator = 5.0 * d * (theta * theta + mu_im * mu_im * xi * xi);
    const double reference = dom_phase_derivative(kDefault, w).rho;

    const double used = (xi * theta * (dmu_im + mu * mu_im * dmu * csc2) - 5.0 * mu_im * dmu * csc2) / denominator;
    const double swapped = (xi * theta * (dmu + mu * mu_im * dmu_im * csc2) - 5.0 * mu * dmu_im * csc2) / denominator;
    const double primed = (xi * theta * (dmu_im + mu * mu_im * dmu_im * csc2) - 5.0 * mu_im * dmu_im * csc2) / denominator;
    CHECK(rel(used, reference) < 1e-8);
    CHECK(rel(swapped, reference) > 1e-2);
    CHECK(rel(primed, reference) > 1e-2);
}

TEST_CASE("phase-derivative route reports its error estimate")
{
    const auto s = dom_phase_derivative(kDefault, 0.6);
    CHECK(s.error_estimate >= 0.0);
    CHECK_FALSE(s.accuracy_warning);
    CHECK(s.route == DomRoute::phase_derivative);
    CHECK_THROWS_AS(dom_phase_derivative(kDefault, 0.0), DomainError);
    CHECK_THROWS_AS(dom_phase_derivative(kDefault, 0.5, -1.0), DomainError);
    CHECK_THROWS_AS(density_of_modes(Stack{UnitCell({{1.0, 1.0}}, 1.0), 2}, 0.5, DomRoute::quarter_wave),
                    DomainError);
}

TEST_CASE("band edges")
{
    const auto e = band_edges(1.0, 2.0, 2.5);
    REQUIRE(e.edges.size() == 2);
    CHECK(std::abs(e.edges[0] - 0.78365310406121454034) < 1e-14);
    CHECK(std::abs(e.edges[0] - std::acos(-7.0 / 9.0) / kPi) < 1e-14);
    CHECK(std::abs(e.edges[1] - (2.0 - e.edges[0])) < 1e-14);
    CHECK(bloch_cos(qw_unit_amplitudes(1.0, 2.0, e.edges[0]).t).x == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(band_edges(1.5, 1.5, 3.0).edges.empty());
    CHECK(band_edges(1.0, 2.0, 4.0).edges.size() == 4);
}

TEST_CASE("near band edge detection")
{
    const double edge = band_edges(1.0, 2.0, 1.0).edges.front();
    CHECK(near_band_edge(kDefault.cell, edge + 4e-4, 5e-4));
    CHECK(near_band_edge(kDefault.cell, edge - 4e-4, 5e-4));
    CHECK_FALSE(near_band_edge(kDefault.cell, edge + 1e-2, 5e-4));
    CHECK_FALSE(near_band_edge(kDefault.cell, 1.0, 5e-4));
}

TEST_CASE("transmission resonances")
{
    const double edge = band_edges(1.0, 2.0, 1.0).edges.front();
    const auto res = transmission_resonances(kDefault, 1e-6, edge);
    REQUIRE(res.size() == 4);
    for (const double w : res) {
        CHECK(stack_amplitudes(kDefault, w).transmittance() >= 1.0 - 1e-12);
    }
    // Xi_5 vanishes at beta = k pi / 5.
    for (int k = 1; k <= 4; ++k) {
        const double x = std::cos(k * kPi / 5.0);
        const double w = std::acos(x * 8.0 / 9.0 + 1.0 / 9.0) / kPi;
        CHECK(std::abs(res[static_cast<std::size_t>(k - 1)] - w) < 1e-12);
    }
    CHECK(transmission_resonances(Stack{kDefault.cell, 1}, 0.01, 0.7).empty());
}

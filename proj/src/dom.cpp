#include "pbg/dom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"
#include "pbg/oracle.hpp"

namespace pbg {
namespace {

constexpr double kDriftTolerance = 1e-7;
// Below this |1 - x^2| the csc^2(beta) terms cancel badly.
constexpr double kEdgeNeighbourhood = 1e-4;

void require_frequency(double w)
{
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw DomainError("frequency must be positive");
    }
}

double argand_rate(Complex t, Complex dt)
{
    const double u = t.real();
    const double v = t.imag();
    return (u * dt.imag() - v * dt.real()) / (u * u + v * v);
}

double solve_bracketed(auto&& f, double lo, double hi)
{
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                          iterations);
    return 0.5 * (a + b);
}

} // namespace

std::string_view to_string(DomRoute route)
{
    switch (route) {
    case DomRoute::phase_derivative:
        return "phase";
    case DomRoute::closed_form:
        return "closed";
    case DomRoute::quarter_wave:
        return "qw";
    }
    return "unknown";
}

DomSample dom_phase_derivative(const Stack& stack, double w, double h)
{
    require_frequency(w);
    if (!(h > 0.0)) {
        throw DomainError("derivative step must be positive");
    }
    if (w <= 2.0 * h) {
        h = 0.25 * w;
    }
    const auto transmission = [&](double ww) { return stack_amplitudes(stack, ww).t; };
    const Complex t = transmission(w);
    const auto dt = numeric_derivative(transmission, w, h, kDriftTolerance);

    const double scale = 1.0 / (stack.length() * stack.cell.reference_frequency());
    const double rho = argand_rate(t, dt.value) * scale;
    const double error = dt.error_estimate / std::abs(t) * scale;
    return {w, rho, DomRoute::phase_derivative, error, error > kDriftTolerance * std::abs(rho)};
}

DomSample dom_closed_form(Complex t, Complex dt_dw, int periods, double cell_length, double reference_frequency,
                          double w)
{
    if (periods < 1) {
        throw DomainError("period count must be >= 1");
    }
    const double T = std::norm(t);
    if (!(T > 0.0)) {
        throw DomainError("closed-form DOM needs a non-zero transmission amplitude");
    }
    // mu = Re(t)/T = cos(beta), mu' = Im(t)/T, and their frequency derivatives.
    const double mu = t.real() / T;
    const double mu_im = t.imag() / T;
    const double dT = 2.0 * (std::conj(t) * dt_dw).real() / reference_frequency;
    const Complex dt = dt_dw / reference_frequency;
    const double dmu = (dt.real() * T - t.real() * dT) / (T * T);
    const double dmu_im = (dt.imag() * T - t.imag() * dT) / (T * T);

    const double x = mu;
    const auto [xi, theta] = chebyshev_pair(x, periods);
    // Xi_2N / 2 = Xi_N Theta_N
    const double half_xi_2n = xi * theta;
    const double n = periods;

    double numerator = 0.0;
    const double sin2 = 1.0 - x * x;
    if (std::abs(sin2) >= kEdgeNeighbourhood) {
        const double csc2 = 1.0 / sin2;
        numerator = half_xi_2n * (dmu_im + mu * mu_im * dmu * csc2) - n * mu_im * dmu * csc2;
    } else {
        const double dxi = chebyshev_xi_derivative(x, periods) * dmu;
        const double dtheta = n * xi * dmu;
        numerator = dmu_im * xi * theta + mu_im * (dxi * theta - xi * dtheta);
    }
    const double denominator = n * cell_length * (theta * theta + mu_im * mu_im * xi * xi);
    return {w, numerator / denominator, DomRoute::closed_form};
}

DomSample dom_closed_form(const Stack& stack, double w)
{
    require_frequency(w);
    const auto& cell = stack.cell;
    Complex t;
    Complex dt;
    if (const auto& qw = cell.quarter_wave_indices()) {
        t = qw_unit_amplitudes(qw->n1, qw->n2, w).t;
        dt = qw_unit_transmission_derivative(qw->n1, qw->n2, w);
    } else {
        const auto transmission = [&](double ww) { return cell_amplitudes(cell, ww).t; };
        t = transmission(w);
        const double h = std::min(kDefaultDerivativeStep, 0.25 * w);
        dt = numeric_derivative(transmission, w, h, kDriftTolerance).value;
    }
    return dom_closed_form(t, dt, stack.periods, cell.length(), cell.reference_frequency(), w);
}

DomSample dom_quarter_wave(double n1, double n2, int periods, double w, double reference_frequency)
{
    require_frequency(w);
    if (periods < 1) {
        throw DomainError("period count must be >= 1");
    }
    const auto [T, R] = double_boundary(n1, n2);
    const double theta = kPi * w;
    const double cos_t = std::cos(theta);
    const double x = (cos_t - R) / T;
    const double d = kPi * kSpeedOfLight / (2.0 * reference_frequency) * (1.0 / n1 + 1.0 / n2);

    if (std::abs(1.0 + x) < 1e-7) {
        // 0/0 exactly at the gap edge: use the recurrence-regularised form.
        auto sample = dom_closed_form(qw_unit_amplitudes(n1, n2, w).t, qw_unit_transmission_derivative(n1, n2, w),
                                      periods, d, reference_frequency, w);
        sample.route = DomRoute::quarter_wave;
        return sample;
    }

    const auto [xi, cheb_theta] = chebyshev_pair(x, periods);
    const double xi_2n = 2.0 * xi * cheb_theta;
    const double n = periods;
    const double c2 = std::pow(std::cos(0.5 * theta), 2);
    const double s2 = std::pow(std::sin(0.5 * theta), 2);
    const double sin_t = std::sin(theta);

    const double prefactor = kPi * T / (reference_frequency * n * d);
    const double numerator = 2.0 * n * T * c2 + R * s2 * xi_2n;
    const double denominator =
        (1.0 - 2.0 * R + cos_t) * (T * T * cheb_theta * cheb_theta + sin_t * sin_t * xi * xi);
    return {w, prefactor * numerator / denominator, DomRoute::quarter_wave};
}

DomSample density_of_modes(const Stack& stack, double w, DomRoute route)
{
    switch (route) {
    case DomRoute::phase_derivative:
        return dom_phase_derivative(stack, w);
    case DomRoute::closed_form:
        return dom_closed_form(stack, w);
    case DomRoute::quarter_wave: {
        const auto& qw = stack.cell.quarter_wave_indices();
        if (!qw) {
            throw DomainError("the quarter-wave DOM route needs a quarter-wave cell");
        }
        return dom_quarter_wave(qw->n1, qw->n2, stack.periods, w, stack.cell.reference_frequency());
    }
    }
    throw DomainError("unknown DOM route");
}

BandEdges band_edges(double n1, double n2, double w_max)
{
    const auto [T, R] = double_boundary(n1, n2);
    BandEdges out;
    if (R == 0.0) {
        return out;
    }
    // cos(beta) = (cos(pi w) - R) / T never exceeds 1, so every gap is an
    // interval with cos(beta) < -1 around an odd w; T (cos(beta) + 1) is
    // monotone between the neighbouring even integers.
    const auto shifted = [R = R](double w) { return std::cos(kPi * w) - (2.0 * R - 1.0); };
    for (int m = 1; m - 1 < w_max; m += 2) {
        const double lower = solve_bracketed(shifted, m - 1.0, static_cast<double>(m));
        const double upper = solve_bracketed(shifted, static_cast<double>(m), m + 1.0);
        if (lower <= w_max) {
            out.edges.push_back(lower);
        }
        if (upper <= w_max) {
            out.edges.push_back(upper);
        }
    }
    return out;
}

bool near_band_edge(const UnitCell& cell, double w, double half_width)
{
    constexpr int kSubdivisions = 16;
    const auto excess = [&](double v) { return std::abs(bloch_cos(cell_amplitudes(cell, v).t).x) - 1.0; };
    const double lo = std::max(w - half_width, 1e-12);
    double prev = excess(lo);
    for (int i = 1; i <= kSubdivisions; ++i) {
        const double f = excess(lo + (w + half_width - lo) * i / kSubdivisions);
        if (f == 0.0 || (prev < 0.0) != (f < 0.0)) {
            return true;
        }
        prev = f;
    }
    return false;
}

double bulk_velocity(double n1, double n2)
{
    if (!(n1 > 0.0) || !(n2 > 0.0)) {
        throw DomainError("indices must be positive");
    }
    return kSpeedOfLight * (1.0 / n1 + 1.0 / n2) / 2.0;
}

double bulk_velocity(const UnitCell& cell)
{
    return kSpeedOfLight * cell.length() / cell.optical_length();
}

std::vector<double> transmission_resonances(const Stack& stack, double w_lo, double w_hi, int samples)
{
    std::vector<double> roots;
    if (stack.periods < 2 || !(w_hi > w_lo) || samples < 2) {
        return roots;
    }
    const auto bloch = [&](double w) { return bloch_cos(cell_amplitudes(stack.cell, w).t).x; };
    const auto xi = [&](double w) { return chebyshev_xi(bloch(w), stack.periods); };

    double prev_w = w_lo;
    double prev_x = bloch(prev_w);
    double prev_f = chebyshev_xi(prev_x, stack.periods);
    for (int i = 1; i <= samples; ++i) {
        const double w = w_lo + (w_hi - w_lo) * i / samples;
        const double x = bloch(w);
        const double f = chebyshev_xi(x, stack.periods);
        const bool in_band = std::abs(prev_x) < 1.0 && std::abs(x) < 1.0;
        if (in_band && f == 0.0 && i < samples) {
            roots.push_back(w);
        } else if (in_band && prev_f != 0.0 && (prev_f < 0.0) != (f < 0.0)) {
            roots.push_back(solve_bracketed(xi, prev_w, w));
        }
        prev_w = w;
        prev_x = x;
        prev_f = f;
    }
    return roots;
}

} // namespace pbg

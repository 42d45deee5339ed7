#include "pbg/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pbg/errors.hpp"

namespace pbg {
namespace {

// (F, G) on the n_i side of an interface in terms of (F, G) on the n_j side.
Eigen::Matrix2cd interface_matrix(double ni, double nj)
{
    const double t = 2.0 * ni / (ni + nj);
    const double r = (ni - nj) / (ni + nj);
    Eigen::Matrix2cd m;
    m << 1.0, r, r, 1.0;
    return m / t;
}

std::vector<Layer> expand(const Stack& stack)
{
    if (stack.periods < 1) {
        throw DomainError("stack needs at least one period");
    }
    std::vector<Layer> layers;
    layers.reserve(stack.cell.layers().size() * static_cast<std::size_t>(stack.periods));
    for (int p = 0; p < stack.periods; ++p) {
        layers.insert(layers.end(), stack.cell.layers().begin(), stack.cell.layers().end());
    }
    return layers;
}

struct OdeRun {
    std::vector<double> x;
    std::vector<Complex> y;
    std::vector<Complex> z;
};

// Integrates y'' = -k^2 y from the right edge to the left edge with y = 1,
// y' = i k_ambient at x = D. Samples come out in descending x. Each layer gets
// `refine` times its base step count, so runs with refine 1 and 2 share nodes.
OdeRun integrate(const std::vector<Layer>& layers, double ambient, double omega, int per_wavelength, int min_steps,
                 int refine)
{
    double total = 0.0;
    for (const auto& l : layers) {
        total += l.thickness;
    }

    OdeRun run;
    const double k_ambient = ambient * omega / kSpeedOfLight;
    Complex y = 1.0;
    Complex z = Complex(0.0, k_ambient);
    double x = total;
    run.x.push_back(x);
    run.y.push_back(y);
    run.z.push_back(z);

    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        const double k = it->index * omega / kSpeedOfLight;
        const double k2 = k * k;
        const double cycles = k * it->thickness / (2.0 * kPi);
        const int steps = refine * std::max(min_steps, static_cast<int>(std::ceil(per_wavelength * cycles)));
        const double h = -it->thickness / steps;
        const double left = x - it->thickness;
        for (int s = 0; s < steps; ++s) {
            const Complex k1y = z;
            const Complex k1z = -k2 * y;
            const Complex k2y = z + 0.5 * h * k1z;
            const Complex k2z = -k2 * (y + 0.5 * h * k1y);
            const Complex k3y = z + 0.5 * h * k2z;
            const Complex k3z = -k2 * (y + 0.5 * h * k2y);
            const Complex k4y = z + h * k3z;
            const Complex k4z = -k2 * (y + h * k3y);
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
            x = (s + 1 == steps) ? left : x + h;
            run.x.push_back(x);
            run.y.push_back(y);
            run.z.push_back(z);
        }
    }
    return run;
}

} // namespace

TransferMatrix layer_matrix(const Layer& layer, double ambient_index, double wavenumber_per_index)
{
    const double phase = layer.index * wavenumber_per_index * layer.thickness;
    Eigen::Matrix2cd propagation = Eigen::Matrix2cd::Zero();
    propagation(0, 0) = std::polar(1.0, -phase);
    propagation(1, 1) = std::polar(1.0, phase);
    return TransferMatrix(Eigen::Matrix2cd(interface_matrix(ambient_index, layer.index) * propagation *
                                           interface_matrix(layer.index, ambient_index)));
}

TransferMatrix direct_matrix_product(std::span<const Layer> layers, double ambient_index, double omega)
{
    TransferMatrix product;
    const double per_index = omega / kSpeedOfLight;
    for (const auto& layer : layers) {
        product = product * layer_matrix(layer, ambient_index, per_index);
    }
    return product;
}

TransferMatrix direct_matrix_product(const UnitCell& cell, double w)
{
    return direct_matrix_product(cell.layers(), cell.ambient_index(), cell.omega(w));
}

TransferMatrix direct_matrix_product(const Stack& stack, double w)
{
    const auto layers = expand(stack);
    return direct_matrix_product(layers, stack.cell.ambient_index(), stack.cell.omega(w));
}

SampledField ode_field_solve(const Stack& stack, double w, const OdeOptions& options)
{
    if (!(w > 0.0)) {
        throw DomainError("frequency must be positive");
    }
    if (options.steps_per_wavelength < 1 || options.min_steps_per_layer < 1) {
        throw DomainError("ODE resolution must be positive");
    }
    const auto layers = expand(stack);
    const double ambient = stack.cell.ambient_index();
    const double omega = stack.cell.omega(w);

    auto fine = integrate(layers, ambient, omega, options.steps_per_wavelength, options.min_steps_per_layer, 2);
    const auto coarse = integrate(layers, ambient, omega, options.steps_per_wavelength, options.min_steps_per_layer, 1);

    // Every coarse node is every second fine node.
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < coarse.y.size(); ++i) {
        diff = std::max(diff, std::abs(coarse.y[i] - fine.y[2 * i]));
        scale = std::max(scale, std::abs(fine.y[2 * i]));
    }
    if (diff > options.convergence_tolerance * scale) {
        throw AccuracyError("ODE solution not converged: relative change " + std::to_string(diff / scale) +
                            " on doubling the resolution");
    }

    const double k_ambient = ambient * omega / kSpeedOfLight;
    const Complex y0 = fine.y.back();
    const Complex z0 = fine.z.back() / Complex(0.0, k_ambient);
    const Complex incident = 0.5 * (y0 + z0);
    const Complex reflected = 0.5 * (y0 - z0);
    const Complex scale_to_unit = 1.0 / incident;

    SampledField out;
    const std::size_t n = fine.x.size();
    out.x.resize(n);
    out.value.resize(n);
    out.slope.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = fine.x[n - 1 - i];
        out.value[i] = fine.y[n - 1 - i] * scale_to_unit;
        out.slope[i] = fine.z[n - 1 - i] * scale_to_unit;
    }
    out.x.front() = 0.0;
    out.transmission = scale_to_unit;
    out.reflection = reflected * scale_to_unit;
    return out;
}

} // namespace pbg

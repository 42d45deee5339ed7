#pragma once

// Brute-force reference numerics. Nothing here uses the Chebyshev reduction,
// so every closed form in the library can be checked against these routines.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "pbg/core.hpp"

namespace pbg {

/// Matrix of one homogeneous layer embedded in the ambient medium:
/// interface(ambient -> layer) * propagation * interface(layer -> ambient).
/// Interfaces use the field-continuity reflection (n_i - n_j) / (n_i + n_j),
/// which is r_ji in the sign convention of fresnel().
TransferMatrix layer_matrix(const Layer& layer, double ambient_index, double wavenumber_per_index);

/// Ordered product of layer matrices over an explicit layer list.
TransferMatrix direct_matrix_product(std::span<const Layer> layers, double ambient_index, double omega);

/// Unit cell at frequency w.
TransferMatrix direct_matrix_product(const UnitCell& cell, double w);

/// Whole stack with every layer of every period multiplied out explicitly.
TransferMatrix direct_matrix_product(const Stack& stack, double w);

/// Field sampled on a fixed grid by integrating the Helmholtz equation.
struct SampledField {
    std::vector<double> x;      ///< global position, 0 at the left edge of the stack
    std::vector<Complex> value; ///< E(x)
    std::vector<Complex> slope; ///< dE/dx
    Complex transmission;
    Complex reflection;
};

struct OdeOptions {
    int steps_per_wavelength = 2000;
    int min_steps_per_layer = 500;
    /// Relative L-infinity bound between the run and a run at twice the resolution.
    double convergence_tolerance = 1e-9;
};

/// Classical RK4 on E'' + (omega n / c)^2 E = 0, marching right to left from an
/// outgoing wave at the right edge, then rescaled to unit incidence. Step
/// boundaries coincide with every interface. Throws AccuracyError when the
/// doubled-resolution run disagrees by more than the tolerance.
SampledField ode_field_solve(const Stack& stack, double w, const OdeOptions& options = {});

template <class Value>
struct Derivative {
    Value value;
    double error_estimate;
    bool accuracy_warning;
};

/// Richardson-extrapolated central difference from steps h and h/2.
/// The error estimate is |D(h/2) - D(h)|; the warning is raised when it exceeds
/// `tolerance` times the magnitude of the result.
template <class F>
auto numeric_derivative(F&& fn, double x, double h, double tolerance = 1e-7)
    -> Derivative<decltype(fn(x))>
{
    using Value = decltype(fn(x));
    const Value coarse = (fn(x + h) - fn(x - h)) / (2.0 * h);
    const double half = 0.5 * h;
    const Value fine = (fn(x + half) - fn(x - half)) / (2.0 * half);
    const Value value = fine + (fine - coarse) / 3.0;
    const double error = std::abs(fine - coarse);
    const double scale = std::abs(value);
    return {value, error, error > tolerance * (scale > 0.0 ? scale : 1.0)};
}

} // namespace pbg

#pragma once

// Density of modes of an N-period stack by three independent routes, plus
// band-edge and transmission-resonance location.

#include <string_view>
#include <vector>

#include "pbg/core.hpp"

namespace pbg {

enum class DomRoute { phase_derivative, closed_form, quarter_wave };

std::string_view to_string(DomRoute route);

struct DomSample {
    double omega = 0.0; ///< dimensionless frequency w
    double rho = 0.0;   ///< d(phase)/d(omega) / D, in units of 1/c
    DomRoute route = DomRoute::phase_derivative;
    double error_estimate = 0.0;
    bool accuracy_warning = false;
};

struct BandEdges {
    std::vector<double> edges;
};

inline constexpr double kDefaultDerivativeStep = 1e-6;

/// (u v' - v u') / (u^2 + v^2) / D with t_N = u + i v, derivatives by
/// Richardson-extrapolated central differences in w. A warning is set when the
/// h and h/2 estimates drift apart by more than 1e-7 relative.
DomSample dom_phase_derivative(const Stack& stack, double w, double h = kDefaultDerivativeStep);

/// Chebyshev closed form driven by the unit-cell transmission t and its
/// derivative dt/dw. Near |cos beta| = 1 the csc^2 terms are replaced by the
/// differentiated recurrence.
DomSample dom_closed_form(Complex t, Complex dt_dw, int periods, double cell_length, double reference_frequency = 1.0,
                          double w = 0.0);

/// Closed form for a stack; dt/dw is analytic for quarter-wave cells and
/// numerical otherwise.
DomSample dom_closed_form(const Stack& stack, double w);

/// Quarter-wave closed form. Symmetric about w = 1.
DomSample dom_quarter_wave(double n1, double n2, int periods, double w, double reference_frequency = 1.0);

/// Dispatch by route. quarter_wave requires a quarter-wave cell.
DomSample density_of_modes(const Stack& stack, double w, DomRoute route);

/// Frequencies in (0, w_max] where |cos beta| = 1 bounds a gap of the
/// quarter-wave lattice, located to machine precision.
BandEdges band_edges(double n1, double n2, double w_max);

/// True when some w' with |w' - w| <= half_width has |cos beta(w')| = 1,
/// detected by a sign change of |cos beta| - 1 on a fine sub-grid.
bool near_band_edge(const UnitCell& cell, double w, double half_width);

/// c (1/n1 + 1/n2) / 2.
double bulk_velocity(double n1, double n2);

/// c d / (optical length of the cell); equals the two-index form for quarter-wave cells.
double bulk_velocity(const UnitCell& cell);

/// Frequencies in (w_lo, w_hi) with Xi_N(cos beta) = 0 inside a pass band,
/// i.e. where T_N = 1.
std::vector<double> transmission_resonances(const Stack& stack, double w_lo, double w_hi, int samples = 4096);

} // namespace pbg

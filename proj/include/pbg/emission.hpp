#pragma once

// Scaled emission rate p = rho |e|^2 of a point dipole oriented perpendicular
// to the stack axis, and its ratio to the same dipole in a homogeneous medium.

#include <string>
#include <vector>

#include "pbg/core.hpp"
#include "pbg/dom.hpp"
#include "pbg/grid.hpp"

namespace pbg {

/// Dipole in cell `cell` (1-based), layer `layer` (0-based), at `fraction` of
/// that layer's thickness from its left side.
struct DipoleSpec {
    int cell = 1;
    std::size_t layer = 0;
    double fraction = 0.5;
    std::string label;

    static DipoleSpec layer_center(int cell, std::size_t layer, std::string label = {});
    /// Cell-local position; DomainError when the placement is outside the cell.
    [[nodiscard]] double position(const UnitCell& unit) const;
};

struct EmissionSample {
    double omega = 0.0;
    double p = 0.0;     ///< rho |e|^2
    double p_rel = 0.0; ///< p / p_bulk with p_bulk = 1 / (c n(x0) N d)
};

EmissionSample emission_rate(const DipoleSpec& dipole, const Stack& stack, double w,
                             DomRoute route = DomRoute::phase_derivative);

std::vector<EmissionSample> emission_spectrum(const DipoleSpec& dipole, const Stack& stack, const SpectralGrid& grid,
                                              DomRoute route = DomRoute::phase_derivative);

enum class LocalFieldRegime { tenuous, dense };

/// n^3 (tenuous) or (2 + n^2) / 3 (dense). Reported only; p_rel never includes it.
double local_field_factor(double n, LocalFieldRegime regime);

} // namespace pbg

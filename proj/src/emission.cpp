#include "pbg/emission.hpp"

#include <cmath>
#include <string>

#include "pbg/errors.hpp"
#include "pbg/fields.hpp"

namespace pbg {

DipoleSpec DipoleSpec::layer_center(int cell, std::size_t layer, std::string label)
{
    return {cell, layer, 0.5, std::move(label)};
}

double DipoleSpec::position(const UnitCell& unit) const
{
    if (layer >= unit.layers().size()) {
        throw DomainError("dipole layer " + std::to_string(layer) + " does not exist in the unit cell");
    }
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw DomainError("dipole fraction must lie in [0, 1]");
    }
    return unit.layer_begin(layer) + fraction * unit.layers()[layer].thickness;
}

EmissionSample emission_rate(const DipoleSpec& dipole, const Stack& stack, double w, DomRoute route)
{
    if (dipole.cell < 1 || dipole.cell > stack.periods) {
        throw DomainError("dipole cell " + std::to_string(dipole.cell) + " is outside the stack");
    }
    const double x = dipole.position(stack.cell);
    const double n_local = stack.cell.layers()[dipole.layer].index;

    const auto fields = stack_field(stack, w);
    const auto energy = stack_energy(fields);
    const double intensity =
        std::norm(fields[static_cast<std::size_t>(dipole.cell - 1)].layer_at(x).value(x)) / energy.total;
    const double rho = density_of_modes(stack, w, route).rho;

    const double p = rho * intensity;
    // Homogeneous control of index n over the same length L:
    // rho = n / c and |e|^2 = 1 / (n^2 L).
    const double p_bulk = 1.0 / (kSpeedOfLight * n_local * stack.length());
    return {w, p, p / p_bulk};
}

std::vector<EmissionSample> emission_spectrum(const DipoleSpec& dipole, const Stack& stack, const SpectralGrid& grid,
                                              DomRoute route)
{
    std::vector<EmissionSample> out;
    for (const double w : grid.values()) {
        out.push_back(emission_rate(dipole, stack, w, route));
    }
    return out;
}

double local_field_factor(double n, LocalFieldRegime regime)
{
    if (!(n > 0.0)) {
        throw DomainError("index must be positive");
    }
    return regime == LocalFieldRegime::tenuous ? n * n * n : (2.0 + n * n) / 3.0;
}

} // namespace pbg

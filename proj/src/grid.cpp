#include "pbg/grid.hpp"

#include <cmath>

#include "pbg/errors.hpp"

namespace pbg {

void SpectralGrid::validate() const
{
    if (!(min > 0.0) || !std::isfinite(min) || !std::isfinite(max)) {
        throw DomainError("grid frequencies must be positive and finite");
    }
    if (points < 1) {
        throw DomainError("grid needs at least one point");
    }
    if (points > 1 && !(max > min)) {
        throw DomainError("grid must be increasing");
    }
    if (points == 1 && max < min) {
        throw DomainError("grid must be increasing");
    }
}

std::vector<double> SpectralGrid::values() const
{
    validate();
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = min;
        return out;
    }
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = min + (max - min) * i / (points - 1);
    }
    out.back() = max;
    return out;
}

} // namespace pbg

#pragma once

#include <vector>

namespace pbg {

/// Uniform grid of dimensionless frequencies, both ends included.
struct SpectralGrid {
    double min = 0.0;
    double max = 1.0;
    int points = 512;

    /// DomainError unless 0 < min, min <= max, points >= 1 (min < max when points > 1).
    void validate() const;
    [[nodiscard]] std::vector<double> values() const;
};

} // namespace pbg

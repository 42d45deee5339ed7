#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pbg/core.hpp"

namespace pbg::test {

inline double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

/// 2 to 4 layers, indices in [1, 3.5], thicknesses in [0.2, 2], ambient in [1, 3.5].
inline UnitCell random_cell(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(2, 4);
    std::uniform_real_distribution<double> index(1.0, 3.5);
    std::uniform_real_distribution<double> thickness(0.2, 2.0);
    std::vector<Layer> layers(static_cast<std::size_t>(count(rng)));
    for (auto& l : layers) {
        l = {index(rng), thickness(rng)};
    }
    return UnitCell(layers, index(rng));
}

inline std::mt19937_64 seeded(std::uint64_t salt = 0)
{
    return std::mt19937_64(0x5eed'2026ull + salt);
}

} // namespace pbg::test

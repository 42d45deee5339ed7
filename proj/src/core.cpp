#include "pbg/core.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "pbg/errors.hpp"
#include "pbg/oracle.hpp"

namespace pbg {
namespace {

void require_index(double n, const char* what)
{
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError(std::string(what) + " must be a positive finite refractive index, got " + std::to_string(n));
    }
}

} // namespace

UnitCell::UnitCell(std::vector<Layer> layers, double ambient_index, double reference_frequency)
    : layers_(std::move(layers)), ambient_index_(ambient_index), reference_frequency_(reference_frequency), length_(0.0)
{
    if (layers_.empty()) {
        throw DomainError("unit cell needs at least one layer");
    }
    require_index(ambient_index_, "ambient index");
    if (!(reference_frequency_ > 0.0) || !std::isfinite(reference_frequency_)) {
        throw DomainError("reference frequency must be positive");
    }
    for (const auto& layer : layers_) {
        require_index(layer.index, "layer index");
        if (!(layer.thickness > 0.0) || !std::isfinite(layer.thickness)) {
            throw DomainError("layer thickness must be positive, got " + std::to_string(layer.thickness));
        }
        length_ += layer.thickness;
    }
}

UnitCell UnitCell::quarter_wave(double n1, double n2, double reference_frequency)
{
    require_index(n1, "n1");
    require_index(n2, "n2");
    if (!(reference_frequency > 0.0)) {
        throw DomainError("reference frequency must be positive");
    }
    // n1 a = n2 b = lambda0 / 4 = pi c / (2 omega0)
    const double quarter = kPi * kSpeedOfLight / (2.0 * reference_frequency);
    UnitCell cell({{n1, quarter / n1}, {n2, quarter / n2}}, n1, reference_frequency);
    cell.quarter_wave_ = QuarterWave{n1, n2};
    return cell;
}

double UnitCell::optical_length() const noexcept
{
    return std::accumulate(layers_.begin(), layers_.end(), 0.0,
                           [](double acc, const Layer& l) { return acc + l.index * l.thickness; });
}

double UnitCell::layer_begin(std::size_t i) const
{
    if (i >= layers_.size()) {
        throw DomainError("layer index out of range");
    }
    double x = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        x += layers_[j].thickness;
    }
    return x;
}

bool UnitCell::is_palindromic() const noexcept
{
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
    for (std::size_t i = 0, j = layers_.size() - 1; i < j; ++i, --j) {
        if (!close(layers_[i].index, layers_[j].index) || !close(layers_[i].thickness, layers_[j].thickness)) {
            return false;
        }
    }
    return true;
}

double relative_difference(const TransferMatrix& a, const TransferMatrix& b)
{
    const double scale = b.matrix().norm();
    return (a.matrix() - b.matrix()).norm() / (scale > 0.0 ? scale : 1.0);
}

InterfaceCoefficients fresnel(double ni, double nj)
{
    require_index(ni, "n_i");
    require_index(nj, "n_j");
    const double sum = ni + nj;
    return {2.0 * ni / sum, -(ni - nj) / sum};
}

DoubleBoundary double_boundary(double ni, double nj)
{
    const auto ij = fresnel(ni, nj);
    const auto ji = fresnel(nj, ni);
    return {ij.t * ji.t, -ij.r * ji.r};
}

ScatterAmplitudes qw_unit_amplitudes(double n1, double n2, double w)
{
    const auto r12 = fresnel(n1, n2).r;
    const auto [T12, R12] = double_boundary(n1, n2);
    const Complex e = std::polar(1.0, kPi * w);
    const Complex denom = 1.0 - R12 * e;
    return {T12 * e / denom, r12 * (e * e - e) / denom};
}

Complex qw_unit_transmission_derivative(double n1, double n2, double w)
{
    const auto R12 = double_boundary(n1, n2).reflectance;
    const Complex e = std::polar(1.0, kPi * w);
    const Complex t = qw_unit_amplitudes(n1, n2, w).t;
    // dt/de = T12 / (1 - R12 e)^2 and de/dw = i pi e
    return Complex(0.0, kPi) * t / (1.0 - R12 * e);
}

ScatterAmplitudes cell_amplitudes(const UnitCell& cell, double w)
{
    return amplitudes_from_matrix(direct_matrix_product(cell, w));
}

TransferMatrix matrix_from_amplitudes(const ScatterAmplitudes& s)
{
    if (!(std::abs(s.t) > 1e-300)) {
        throw SingularMatrixError("transmission amplitude vanishes; transfer matrix is undefined");
    }
    const Complex inv_t = 1.0 / s.t;
    const Complex inv_tc = std::conj(inv_t);
    return {inv_t, std::conj(s.r) * inv_tc, s.r * inv_t, inv_tc};
}

ScatterAmplitudes amplitudes_from_matrix(const TransferMatrix& m)
{
    const Complex m11 = m(0, 0);
    if (!std::isfinite(std::abs(m11)) || std::abs(m11) == 0.0) {
        throw SingularMatrixError("transfer matrix has no finite transmission amplitude");
    }
    return {1.0 / m11, m(1, 0) / m11};
}

} // namespace pbg

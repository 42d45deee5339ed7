#include "pbg/fields.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"

namespace pbg {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_cell(int periods, int n)
{
    if (periods < 1) {
        throw DomainError("stack needs at least one period");
    }
    if (n < 1 || n > periods) {
        throw DomainError("cell index " + std::to_string(n) + " outside [1, " + std::to_string(periods) + "]");
    }
}

void require_frequency(double w)
{
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw DomainError("frequency must be positive");
    }
}

double sinc(double z)
{
    return std::abs(z) < 1e-4 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
}

} // namespace

BoundaryVectors boundary_vectors(Complex t, Complex r, int periods, int n)
{
    require_cell(periods, n);
    const auto m = matrix_from_amplitudes({t, r});
    const double x = bloch_cos(t).x;
    const Eigen::Vector2cd outer(stack_amplitudes(t, r, periods).t, 0.0);
    return {smrf_power(m, x, periods - n + 1).apply(outer), smrf_power(m, x, periods - n).apply(outer)};
}

BoundaryVectors boundary_vectors_closed_form(Complex t, Complex r, int periods, int n)
{
    require_cell(periods, n);
    const double x = bloch_cos(t).x;
    const auto xi = [&](int k) { return chebyshev_xi(x, k); };
    const Complex denom = xi(periods) - t * xi(periods - 1);
    const int k = periods - n;
    return {Eigen::Vector2cd((xi(k + 1) - t * xi(k)) / denom, r * xi(k + 1) / denom),
            Eigen::Vector2cd((xi(k) - t * xi(k - 1)) / denom, r * xi(k) / denom)};
}

BoundaryVectors boundary_vectors_squared_form(Complex t, Complex r, int periods, int n)
{
    require_cell(periods, n);
    const double x = bloch_cos(t).x;
    const auto xi = [&](int k) { return chebyshev_xi(x, k); };
    const Complex t2 = t * t;
    const Complex r2 = r * r;
    const Complex denom = t2 * xi(periods - 1) - xi(periods);
    const int k = periods - n;
    return {Eigen::Vector2cd((t2 * xi(k) - xi(k + 1)) / denom, -r2 * xi(k + 1) / denom),
            Eigen::Vector2cd((t2 * xi(k - 1) - xi(k)) / denom, -r2 * xi(k) / denom)};
}

EdgeSums qw_boundary_sums(double n1, double n2, int periods, int n, double w)
{
    require_cell(periods, n);
    const auto [T, R] = double_boundary(n1, n2);
    const double r12 = fresnel(n1, n2).r;
    const Complex e = std::polar(1.0, kPi * w);
    const double x = (e.real() - R) / T;
    const auto xi = [&](int k) { return chebyshev_xi(x, k); };
    // (1 + r)(1 - R e) and t (1 - R e) for the quarter-wave cell
    const Complex one_plus_r = 1.0 - R * e + r12 * e * (e - 1.0);
    const Complex t_scaled = T * e;
    const Complex denom = t_scaled * xi(periods - 1) - (1.0 - R * e) * xi(periods);
    const int k = periods - n;
    return {(t_scaled * xi(k) - one_plus_r * xi(k + 1)) / denom,
            (t_scaled * xi(k - 1) - one_plus_r * xi(k)) / denom};
}

EdgeSums qw_boundary_sums_squared_form(double n1, double n2, int periods, int n, double w)
{
    require_cell(periods, n);
    const auto [T, R] = double_boundary(n1, n2);
    const double r12 = fresnel(n1, n2).r;
    const Complex e = std::polar(1.0, kPi * w);
    const double x = (e.real() - R) / T;
    const auto xi = [&](int k) { return chebyshev_xi(x, k); };
    const Complex lead = T * T * e * e;
    const Complex cross = r12 * r12 * e * e * (1.0 - e) * (1.0 - e);
    const int k = periods - n;
    const Complex right = (lead * xi(k - 1) - (cross + (1.0 + e * R) * (1.0 + e * R)) * xi(k)) /
                          (lead * xi(periods - 1) - (1.0 + R * e) * (1.0 + R * e) * xi(periods));
    const Complex left = (lead * xi(k) - (cross + (1.0 - e * R) * (1.0 - e * R)) * xi(k + 1)) /
                         (lead * xi(periods - 1) - (1.0 - R * e) * (1.0 - R * e) * xi(periods));
    return {left, right};
}

Complex LayerField::value(double x) const
{
    const double u = wavenumber * (x - origin);
    return cos_coef * std::cos(u) + sin_coef * std::sin(u);
}

Complex LayerField::slope(double x) const
{
    const double u = wavenumber * (x - origin);
    return wavenumber * (-cos_coef * std::sin(u) + sin_coef * std::cos(u));
}

CellField::CellField(int cell_index, double offset, std::vector<LayerField> layers)
    : cell_index_(cell_index), offset_(offset), layers_(std::move(layers))
{
    if (layers_.empty()) {
        throw DomainError("cell field needs at least one layer");
    }
}

const LayerField& CellField::layer_at(double x) const
{
    for (const auto& layer : layers_) {
        if (x < layer.end) {
            return layer;
        }
    }
    return layers_.back();
}

CellField CellField::scaled(Complex factor) const
{
    auto layers = layers_;
    for (auto& layer : layers) {
        layer.cos_coef *= factor;
        layer.sin_coef *= factor;
    }
    return {cell_index_, offset_, std::move(layers)};
}

CellField propagate_cell_field(const UnitCell& cell, double w, int n, Complex value, Complex slope)
{
    require_frequency(w);
    if (n < 1) {
        throw DomainError("cell index must be >= 1");
    }
    std::vector<LayerField> layers;
    layers.reserve(cell.layers().size());
    double x = 0.0;
    for (const auto& layer : cell.layers()) {
        const double k = cell.wavenumber(layer.index, w);
        LayerField field{x, x + layer.thickness, layer.index, k, x, value, slope / k};
        const double u = k * layer.thickness;
        const Complex next_value = value * std::cos(u) + slope * layer.thickness * sinc(u);
        slope = -value * k * std::sin(u) + slope * std::cos(u);
        value = next_value;
        x += layer.thickness;
        layers.push_back(field);
    }
    layers.back().end = cell.length();
    return {n, (n - 1) * cell.length(), std::move(layers)};
}

CellField cell_field(const Stack& stack, double w, int n)
{
    require_cell(stack.periods, n);
    const auto unit = cell_amplitudes(stack.cell, w);
    const auto bv = boundary_vectors(unit.t, unit.r, stack.periods, n);
    const double k_ambient = stack.cell.wavenumber(stack.cell.ambient_index(), w);
    return propagate_cell_field(stack.cell, w, n, bv.left_sum(), kI * k_ambient * (bv.left(0) - bv.left(1)));
}

std::vector<CellField> stack_field(const Stack& stack, double w)
{
    require_cell(stack.periods, 1);
    const auto unit = cell_amplitudes(stack.cell, w);
    const double k_ambient = stack.cell.wavenumber(stack.cell.ambient_index(), w);
    std::vector<CellField> fields;
    fields.reserve(static_cast<std::size_t>(stack.periods));
    for (int n = 1; n <= stack.periods; ++n) {
        const auto bv = boundary_vectors(unit.t, unit.r, stack.periods, n);
        fields.push_back(
            propagate_cell_field(stack.cell, w, n, bv.left_sum(), kI * k_ambient * (bv.left(0) - bv.left(1))));
    }
    return fields;
}

Complex field_at(std::span<const CellField> fields, double x)
{
    if (fields.empty()) {
        throw DomainError("no cell fields");
    }
    const double d = fields.front().length();
    auto index = static_cast<std::ptrdiff_t>(std::floor(x / d));
    index = std::clamp<std::ptrdiff_t>(index, 0, static_cast<std::ptrdiff_t>(fields.size()) - 1);
    const auto& cell = fields[static_cast<std::size_t>(index)];
    return cell.value(x - cell.offset());
}

BasisCoefficients cell_coefficients_general(const BoundaryVectors& bv, const BasisFunction& f, const BasisFunction& g,
                                            int n, double d)
{
    const double left = d * (n - 1);
    const double right = d * n;
    const Complex f_l = f(left);
    const Complex f_r = f(right);
    const Complex g_l = g(left);
    const Complex g_r = g(right);
    const Complex denom = f_r * g_l - f_l * g_r;
    const double scale = std::max(std::abs(f_r * g_l), std::abs(f_l * g_r));
    if (!(std::abs(denom) > 1e-12 * scale)) {
        throw SingularBasisError("basis functions are not independent across cell " + std::to_string(n));
    }
    const Complex lambda = bv.left_sum();
    const Complex rho = bv.right_sum();
    return {(rho * g_l - lambda * g_r) / denom, (lambda * f_r - rho * f_l) / denom};
}

BasisCoefficients cell_coefficients_squared_form(Complex t, Complex r, int periods, const BasisFunction& f,
                                                 const BasisFunction& g, int n, double d)
{
    require_cell(periods, n);
    const double x = bloch_cos(t).x;
    const auto xi = [&](int k) { return chebyshev_xi(x, k); };
    const Complex t2 = t * t;
    const Complex one_r2 = 1.0 + r * r;
    const int k = periods - n;
    const Complex right_part = t2 * xi(k - 1) - one_r2 * xi(k);
    const Complex left_part = t2 * xi(k) - one_r2 * xi(k + 1);
    const double xl = d * (n - 1);
    const double xr = d * n;
    const Complex denom = (f(xr) * g(xl) - f(xl) * g(xr)) * (t2 * xi(periods - 1) - xi(periods));
    return {(-g(xr) * right_part + g(xl) * left_part) / denom, (f(xr) * right_part - f(xl) * left_part) / denom};
}

std::pair<CellField, CellField> fundamental_basis(const UnitCell& cell, double w, int n)
{
    return {propagate_cell_field(cell, w, n, 1.0, 0.0), propagate_cell_field(cell, w, n, 0.0, 1.0)};
}

QwCellField qw_cell_field(double n1, double n2, int periods, int n, double w, double reference_frequency)
{
    require_cell(periods, n);
    require_frequency(w);
    const auto cell = UnitCell::quarter_wave(n1, n2, reference_frequency);
    const double a_len = cell.layers()[0].thickness;
    const double d_len = cell.length();
    const double k1 = cell.wavenumber(n1, w);
    const double k2 = cell.wavenumber(n2, w);

    const auto sums = qw_boundary_sums(n1, n2, periods, n, w);
    const Complex lambda = sums.left;
    const Complex rho = sums.right;
    const double dn = (n1 - n2) / (n1 + n2);
    const double theta = kPi * w;
    const double sin_t = std::sin(theta);

    Complex a = lambda;
    Complex b;
    Complex c;
    Complex d;
    if (std::abs(sin_t) > 1e-3) {
        const double csc = 1.0 / sin_t;
        const double outer = theta / (1.0 + dn);
        const double inner = dn * theta / (1.0 + dn);
        b = ((dn - std::cos(theta)) * lambda + (1.0 - dn) * rho) * csc;
        c = (((1.0 + dn) * lambda - dn * rho) * std::sin(outer) + rho * std::sin(inner)) * csc;
        d = ((dn * rho - (1.0 + dn) * lambda) * std::cos(outer) + rho * std::cos(inner)) * csc;
    } else {
        // csc(pi w) diverges at integer w; use the left-edge slope instead of the
        // right-edge value. The ambient medium is n1, so B = E'(0) / k1.
        const auto unit = qw_unit_amplitudes(n1, n2, w);
        const auto bv = boundary_vectors_closed_form(unit.t, unit.r, periods, n);
        b = kI * (bv.left(0) - bv.left(1));
        const double half = 0.5 * theta;
        const Complex value_a = a * std::cos(half) + b * std::sin(half);
        const Complex scaled_slope_a = (n1 / n2) * (-a * std::sin(half) + b * std::cos(half));
        const double s = k2 * a_len;
        c = value_a * std::cos(s) - scaled_slope_a * std::sin(s);
        d = value_a * std::sin(s) + scaled_slope_a * std::cos(s);
    }

    std::vector<LayerField> layers{
        LayerField{0.0, a_len, n1, k1, 0.0, a, b},
        LayerField{a_len, d_len, n2, k2, 0.0, c, d},
    };
    return {a, b, c, d, CellField(n, (n - 1) * d_len, std::move(layers))};
}

double layer_energy(const LayerField& layer)
{
    const double k = layer.wavenumber;
    const double u0 = layer.begin - layer.origin;
    const double u1 = layer.end - layer.origin;
    const double width = u1 - u0;
    const double centre = u1 + u0;
    const double s = sinc(k * width);
    const double cos_sq = 0.5 * width * (1.0 + std::cos(k * centre) * s);
    const double sin_sq = 0.5 * width * (1.0 - std::cos(k * centre) * s);
    const double cross = 0.5 * width * s * std::sin(k * centre);
    const double intensity = std::norm(layer.cos_coef) * cos_sq + std::norm(layer.sin_coef) * sin_sq +
                             2.0 * (layer.cos_coef * std::conj(layer.sin_coef)).real() * cross;
    return layer.index * layer.index * intensity;
}

StackEnergy stack_energy(std::span<const CellField> fields)
{
    StackEnergy energy;
    energy.per_cell.reserve(fields.size());
    for (const auto& cell : fields) {
        double u = 0.0;
        for (const auto& layer : cell.layers()) {
            u += layer_energy(layer);
        }
        energy.per_cell.push_back(u);
        energy.total += u;
    }
    return energy;
}

StackEnergy stack_energy_quadrature(std::span<const CellField> fields, double tolerance)
{
    using boost::math::quadrature::gauss_kronrod;
    StackEnergy energy;
    energy.per_cell.reserve(fields.size());
    for (const auto& cell : fields) {
        double u = 0.0;
        for (const auto& layer : cell.layers()) {
            const auto integrand = [&](double x) { return layer.index * layer.index * std::norm(layer.value(x)); };
            u += gauss_kronrod<double, 31>::integrate(integrand, layer.begin, layer.end, 15, tolerance);
        }
        energy.per_cell.push_back(u);
        energy.total += u;
    }
    return energy;
}

std::vector<CellField> normalize(std::span<const CellField> fields, const StackEnergy& energy)
{
    if (!(energy.total > 0.0) || !std::isfinite(energy.total)) {
        throw DomainError("stack energy must be positive to normalise the field");
    }
    const double factor = 1.0 / std::sqrt(energy.total);
    std::vector<CellField> out;
    out.reserve(fields.size());
    for (const auto& cell : fields) {
        out.push_back(cell.scaled(factor));
    }
    return out;
}

} // namespace pbg

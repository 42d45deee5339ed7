#pragma once

// Field inside the n-th cell of an N-period stack, stack energy and
// normalisation to unit electromagnetic energy.
//
// Cells are numbered 1..N from the left. The incident wave has unit amplitude
// and zero phase at the left edge of the stack.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pbg/core.hpp"

namespace pbg {

/// Amplitude vectors at the edges of cell n: left = M^{N-n+1} rho_N,
/// right = M^{N-n} rho_N, with rho_N = (t_N, 0).
struct BoundaryVectors {
    Eigen::Vector2cd left;
    Eigen::Vector2cd right;

    /// Field value at the left / right edge (sum of the two components).
    [[nodiscard]] Complex left_sum() const { return left(0) + left(1); }
    [[nodiscard]] Complex right_sum() const { return right(0) + right(1); }
};

/// Matrix route: unit-cell matrix raised with smrf_power. Authoritative.
BoundaryVectors boundary_vectors(Complex t, Complex r, int periods, int n);

/// Same vectors written out with Chebyshev functions of the unit cell only.
BoundaryVectors boundary_vectors_closed_form(Complex t, Complex r, int periods, int n);

/// Variant carrying t^2 and r^2 where the closed form has t and r. It does not
/// reproduce the matrix route; kept so the discrepancy stays measurable.
BoundaryVectors boundary_vectors_squared_form(Complex t, Complex r, int periods, int n);

/// Edge sums for a quarter-wave stack in terms of e^{i pi w}, T12, R12, r12.
struct EdgeSums {
    Complex left;
    Complex right;
};
EdgeSums qw_boundary_sums(double n1, double n2, int periods, int n, double w);
EdgeSums qw_boundary_sums_squared_form(double n1, double n2, int periods, int n, double w);

/// E = cos_coef cos(k (x - origin)) + sin_coef sin(k (x - origin)) on [begin, end).
struct LayerField {
    double begin = 0.0;
    double end = 0.0;
    double index = 1.0;
    double wavenumber = 0.0;
    double origin = 0.0;
    Complex cos_coef{};
    Complex sin_coef{};

    [[nodiscard]] Complex value(double x) const;
    [[nodiscard]] Complex slope(double x) const;
    [[nodiscard]] double thickness() const { return end - begin; }
};

/// Piecewise field of one cell in cell-local coordinates x in [0, d].
class CellField {
public:
    CellField(int cell_index, double offset, std::vector<LayerField> layers);

    [[nodiscard]] int cell_index() const noexcept { return cell_index_; }
    /// Global position of the left edge.
    [[nodiscard]] double offset() const noexcept { return offset_; }
    [[nodiscard]] double length() const noexcept { return layers_.back().end; }
    [[nodiscard]] const std::vector<LayerField>& layers() const noexcept { return layers_; }

    /// Layer owning x; interfaces belong to the layer on their right, x = d to the last.
    [[nodiscard]] const LayerField& layer_at(double x) const;
    [[nodiscard]] Complex value(double x) const { return layer_at(x).value(x); }
    [[nodiscard]] Complex slope(double x) const { return layer_at(x).slope(x); }
    [[nodiscard]] double intensity(double x) const { return std::norm(value(x)); }

    [[nodiscard]] CellField scaled(Complex factor) const;

private:
    int cell_index_;
    double offset_;
    std::vector<LayerField> layers_;
};

/// Field in cell n from its left-edge value and slope, carried exactly through each layer.
CellField propagate_cell_field(const UnitCell& cell, double w, int n, Complex value, Complex slope);

/// Authoritative field of cell n: boundary_vectors, then exact per-layer propagation.
CellField cell_field(const Stack& stack, double w, int n);

/// All N cells.
std::vector<CellField> stack_field(const Stack& stack, double w);

/// Field at a global position (0 <= x <= N d).
Complex field_at(std::span<const CellField> fields, double x);

using BasisFunction = std::function<Complex(double)>;

struct BasisCoefficients {
    Complex a;
    Complex b;
};

/// A, B with A f + B g matching the left edge sum at x = d(n-1) and the right
/// edge sum at x = d n (global x). SingularBasisError when the 2x2 system is
/// degenerate to 1e-12 of its scale.
BasisCoefficients cell_coefficients_general(const BoundaryVectors& bv, const BasisFunction& f, const BasisFunction& g,
                                            int n, double d);

/// Same solve written with the t^2, r^2 variant and with the two edges exchanged.
BasisCoefficients cell_coefficients_squared_form(Complex t, Complex r, int periods, const BasisFunction& f,
                                                 const BasisFunction& g, int n, double d);

/// Independent solutions on cell n: f = 1, f' = 0 and g = 0, g' = 1 at its left edge.
std::pair<CellField, CellField> fundamental_basis(const UnitCell& cell, double w, int n);

/// Quarter-wave cell field: A cos + B sin in layer 1 and C cos + D sin in
/// layer 2, both phases measured from the cell's left edge.
struct QwCellField {
    Complex a, b, c, d;
    CellField field;
};
QwCellField qw_cell_field(double n1, double n2, int periods, int n, double w, double reference_frequency = 1.0);

struct StackEnergy {
    double total = 0.0;
    std::vector<double> per_cell;
};

/// Integral of n^2 |E|^2 over one layer from the cos/sin antiderivatives.
double layer_energy(const LayerField& layer);

/// U_N = sum over cells of the integral of n^2 |E_n|^2.
StackEnergy stack_energy(std::span<const CellField> fields);

/// Same integral by adaptive Gauss-Kronrod quadrature.
StackEnergy stack_energy_quadrature(std::span<const CellField> fields, double tolerance = 1e-10);

/// e_n = E_n / sqrt(U_N).
std::vector<CellField> normalize(std::span<const CellField> fields, const StackEnergy& energy);

} // namespace pbg

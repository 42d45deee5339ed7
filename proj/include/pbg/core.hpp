#pragma once

// Layered unit cells, interface coefficients and single-cell scattering.
//
// Units: c = 1. Frequencies enter as the dimensionless ratio w = omega / omega0,
// where omega0 is the reference (mid-gap) frequency carried by the unit cell.
// Amplitude vectors (F, G) hold the right- and left-moving plane-wave
// amplitudes of the ambient medium, each referenced to the edge it sits on.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

namespace pbg {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 1.0;
inline constexpr double kPi = 3.14159265358979323846;

struct Layer {
    double index = 1.0;
    double thickness = 1.0;
};

/// Indices of a quarter-wave bilayer; thicknesses follow from omega0.
struct QuarterWave {
    double n1 = 1.0;
    double n2 = 2.0;
};

class UnitCell {
public:
    UnitCell(std::vector<Layer> layers, double ambient_index, double reference_frequency = 1.0);

    /// Bilayer with n1 * a = n2 * b = pi c / (2 omega0), embedded in n1.
    static UnitCell quarter_wave(double n1, double n2, double reference_frequency = 1.0);

    [[nodiscard]] const std::vector<Layer>& layers() const noexcept { return layers_; }
    [[nodiscard]] double ambient_index() const noexcept { return ambient_index_; }
    [[nodiscard]] double reference_frequency() const noexcept { return reference_frequency_; }
    [[nodiscard]] double length() const noexcept { return length_; }
    /// Sum of index * thickness over the layers.
    [[nodiscard]] double optical_length() const noexcept;
    /// Start of layer i in cell-local coordinates.
    [[nodiscard]] double layer_begin(std::size_t i) const;
    [[nodiscard]] bool is_palindromic() const noexcept;
    [[nodiscard]] const std::optional<QuarterWave>& quarter_wave_indices() const noexcept { return quarter_wave_; }

    /// Angular frequency for a dimensionless frequency w.
    [[nodiscard]] double omega(double w) const noexcept { return w * reference_frequency_; }
    [[nodiscard]] double wavenumber(double index, double w) const noexcept
    {
        return index * omega(w) / kSpeedOfLight;
    }

private:
    std::vector<Layer> layers_;
    double ambient_index_;
    double reference_frequency_;
    double length_;
    std::optional<QuarterWave> quarter_wave_;
};

/// N identical cells in a row.
struct Stack {
    UnitCell cell;
    int periods = 1;

    [[nodiscard]] double length() const noexcept { return periods * cell.length(); }
};

struct ScatterAmplitudes {
    Complex t{1.0, 0.0};
    Complex r{0.0, 0.0};

    [[nodiscard]] double transmittance() const noexcept { return std::norm(t); }
    [[nodiscard]] double reflectance() const noexcept { return std::norm(r); }
    [[nodiscard]] double transmission_phase() const noexcept { return std::arg(t); }
    [[nodiscard]] double reflection_phase() const noexcept { return std::arg(r); }
};

/// 2x2 matrix mapping the right boundary vector of a scatterer to the left one.
class TransferMatrix {
public:
    TransferMatrix() : m_(Eigen::Matrix2cd::Identity()) {}
    explicit TransferMatrix(const Eigen::Matrix2cd& m) : m_(m) {}
    TransferMatrix(Complex m11, Complex m12, Complex m21, Complex m22)
    {
        m_ << m11, m12, m21, m22;
    }

    static TransferMatrix identity() { return {}; }

    [[nodiscard]] const Eigen::Matrix2cd& matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(int i, int j) const { return m_(i, j); }
    [[nodiscard]] Complex determinant() const { return m_.determinant(); }
    /// (m11 + m22) / 2; real for lossless cells.
    [[nodiscard]] Complex half_trace() const { return 0.5 * m_.trace(); }
    [[nodiscard]] Eigen::Vector2cd apply(const Eigen::Vector2cd& v) const { return m_ * v; }

    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b)
    {
        return TransferMatrix(Eigen::Matrix2cd(a.m_ * b.m_));
    }

private:
    Eigen::Matrix2cd m_;
};

/// Relative Frobenius distance ||a - b|| / ||b||.
double relative_difference(const TransferMatrix& a, const TransferMatrix& b);

struct InterfaceCoefficients {
    double t = 1.0;
    double r = 0.0;
};

struct DoubleBoundary {
    double transmittance = 1.0;
    double reflectance = 0.0;
};

/// t_ij = 2 n_i / (n_i + n_j), r_ij = -(n_i - n_j) / (n_i + n_j).
InterfaceCoefficients fresnel(double ni, double nj);

/// T_ij = t_ij t_ji and R_ij = -r_ij r_ji.
DoubleBoundary double_boundary(double ni, double nj);

/// Closed-form amplitudes of the quarter-wave bilayer at frequency w.
ScatterAmplitudes qw_unit_amplitudes(double n1, double n2, double w);

/// d t / d w of the quarter-wave bilayer.
Complex qw_unit_transmission_derivative(double n1, double n2, double w);

/// Amplitudes of an arbitrary piecewise-constant cell, from the per-layer product.
ScatterAmplitudes cell_amplitudes(const UnitCell& cell, double w);

/// [[1/t, r*/t*], [r/t, 1/t*]]. Throws SingularMatrixError when |t| underflows.
TransferMatrix matrix_from_amplitudes(const ScatterAmplitudes& s);

/// Inverse of matrix_from_amplitudes: t = 1/m11, r = m21/m11.
ScatterAmplitudes amplitudes_from_matrix(const TransferMatrix& m);

} // namespace pbg

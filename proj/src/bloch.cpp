#include "pbg/bloch.hpp"

#include <cmath>
#include <string>

#include "pbg/errors.hpp"

namespace pbg {
namespace {

void require_periods(int n, int lowest)
{
    if (n < lowest) {
        throw DomainError("period count must be >= " + std::to_string(lowest) + ", got " + std::to_string(n));
    }
    if (n > kMaxPeriods) {
        throw RangeError("period count " + std::to_string(n) + " exceeds the cap of " + std::to_string(kMaxPeriods));
    }
}

double checked(double v, double x, int n)
{
    if (!std::isfinite(v)) {
        throw RangeError("Chebyshev recurrence overflowed at x = " + std::to_string(x) + ", N = " + std::to_string(n));
    }
    return v;
}

} // namespace

BlochData bloch_cos(Complex t)
{
    const double norm = std::norm(t);
    if (!(norm > 0.0)) {
        throw DomainError("Bloch cosine needs a non-zero transmission amplitude");
    }
    const double x = t.real() / norm;
    return {x, std::abs(x) > 1.0};
}

ChebyshevPair chebyshev_pair(double x, int n)
{
    require_periods(n, 0);
    if (n == 0) {
        return {0.0, 1.0};
    }
    double xi_prev = 0.0;
    double xi = 1.0;
    double theta_prev = 1.0;
    double theta = x;
    for (int k = 1; k < n; ++k) {
        const double xi_next = 2.0 * x * xi - xi_prev;
        const double theta_next = 2.0 * x * theta - theta_prev;
        xi_prev = xi;
        xi = xi_next;
        theta_prev = theta;
        theta = theta_next;
    }
    return {checked(xi, x, n), checked(theta, x, n)};
}

double chebyshev_xi(double x, int n)
{
    if (n == -1) {
        return -1.0;
    }
    return chebyshev_pair(x, n).xi;
}

double chebyshev_xi_derivative(double x, int n)
{
    require_periods(n, -1);
    if (n <= 1) {
        return 0.0;
    }
    double xi_prev = 0.0;
    double xi = 1.0;
    double d_prev = 0.0;
    double d = 0.0;
    for (int k = 1; k < n; ++k) {
        const double xi_next = 2.0 * x * xi - xi_prev;
        const double d_next = 2.0 * xi + 2.0 * x * d - d_prev;
        xi_prev = xi;
        xi = xi_next;
        d_prev = d;
        d = d_next;
    }
    return checked(d, x, n);
}

TransferMatrix smrf_power(const TransferMatrix& m, double x, int n)
{
    require_periods(n, 0);
    const double half_trace = m.half_trace().real();
    if (std::abs(x - half_trace) > 1e-8 * std::max(1.0, std::abs(x))) {
        throw DomainError("Bloch cosine " + std::to_string(x) + " inconsistent with half-trace " +
                          std::to_string(half_trace));
    }
    const double xi_n = chebyshev_xi(x, n);
    const double xi_nm1 = chebyshev_xi(x, n - 1);
    return TransferMatrix(Eigen::Matrix2cd(xi_n * m.matrix() - xi_nm1 * Eigen::Matrix2cd::Identity()));
}

ScatterAmplitudes stack_amplitudes(Complex t, Complex r, int n)
{
    require_periods(n, 0);
    const double x = bloch_cos(t).x;
    const double xi_n = chebyshev_xi(x, n);
    const double xi_nm1 = chebyshev_xi(x, n - 1);
    const Complex t_n = 1.0 / (xi_n / t - xi_nm1);
    return {t_n, t_n * (r / t) * xi_n};
}

ScatterAmplitudes stack_amplitudes(const Stack& stack, double w)
{
    const auto unit = cell_amplitudes(stack.cell, w);
    return stack_amplitudes(unit.t, unit.r, stack.periods);
}

} // namespace pbg

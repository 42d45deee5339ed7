#pragma once

// Bloch cosine, Chebyshev auxiliaries and the reduction of M^N to a linear
// combination of M and the identity.

#include "pbg/core.hpp"

namespace pbg {

/// Largest period count accepted by the Chebyshev routines.
inline constexpr int kMaxPeriods = 10000;

struct BlochData {
    double x = 1.0; ///< cos(beta) = Re(1/t); |x| > 1 inside a gap
    bool in_gap = false;
};

/// Xi_N = sin(N beta) / sin(beta) = U_{N-1}(x); Theta_N = cos(N beta) = T_N(x).
struct ChebyshevPair {
    double xi = 0.0;
    double theta = 1.0;
};

BlochData bloch_cos(Complex t);

/// Evaluated by the three-term recurrence in x, valid for any real x.
ChebyshevPair chebyshev_pair(double x, int n);

/// Xi_n(x) for n >= -1 (Xi_{-1} = -1, Xi_0 = 0, Xi_1 = 1).
double chebyshev_xi(double x, int n);

/// d Xi_n / dx via the differentiated recurrence.
double chebyshev_xi_derivative(double x, int n);

/// M^N = Xi_N M - Xi_{N-1} I. Requires x to agree with Re(trace M)/2 to 1e-8
/// relative, otherwise DomainError.
TransferMatrix smrf_power(const TransferMatrix& m, double x, int n);

/// 1/t_N = Xi_N / t - Xi_{N-1}; r_N / t_N = Xi_N r / t.
ScatterAmplitudes stack_amplitudes(Complex t, Complex r, int n);

/// Convenience: unit-cell amplitudes at w pushed through stack_amplitudes.
ScatterAmplitudes stack_amplitudes(const Stack& stack, double w);

} // namespace pbg

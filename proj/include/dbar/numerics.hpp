#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Low-level 1-D numerics shared by the boundary modules: FFT-based operations
// on uniform periodic grids and local polynomial rules on midpoint grids.

namespace dbar::numerics {

using cplx = std::complex<double>;

/// Fourier coefficients c_m, m = 0..N-1 (FFT order), of samples on t_j = 2pi j/N,
/// normalized so that v_j = sum_m c_m exp(i m t_j).
std::vector<cplx> fourier_coefficients(std::span<const cplx> values);

/// Inverse of fourier_coefficients.
std::vector<cplx> fourier_synthesis(std::span<const cplx> coefficients);

/// Signed wavenumber for FFT slot m of an N-point transform, in [-N/2, N/2).
int wavenumber(std::size_t m, std::size_t n);

/// d/dt of the trigonometric interpolant (Nyquist mode dropped for even N).
std::vector<cplx> periodic_derivative(std::span<const cplx> values);

struct Primitive {
  std::vector<cplx> at_nodes;  ///< integral from t_0 = 0 to t_j
  cplx total;                  ///< integral over [0, 2pi)
};

/// Spectral primitive of v(t) = exp(i beta t) Q(t) with Q 2pi-periodic, given
/// samples v_j on the uniform grid. beta = 0 is the periodic case. Exact for
/// band-limited Q.
Primitive quasi_periodic_primitive(std::span<const cplx> values, cplx beta);

/// Finite-difference weights for the derivative of order `order` at x0 from
/// the stencil xs (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> xs, int order);

/// Local-interpolation rules on the midpoint grid x_m = (m + 1/2) h, m < n,
/// covering [0, n h]. Each cell integral uses a Lagrange interpolant through
/// `stencil` neighbouring nodes (clamped to the side).
struct MidpointRule {
  std::size_t n = 0;
  std::size_t stencil = 0;
  /// head[k]: weight of node k in the integral over [0, x_0].
  std::vector<double> head;
  /// cell[m][k]: weight of node cell_start[m]+k in the integral over [x_m, x_{m+1}].
  std::vector<std::vector<double>> cell;
  std::vector<std::size_t> cell_start;
  /// tail[k]: weight of node n-stencil+k in the integral over [x_{n-1}, n h].
  std::vector<double> tail;
  /// Total implied quadrature weight of every node (unit spacing).
  std::vector<double> weights;
};

/// Rule for n nodes at unit spacing (scale by h). Stencil 6 for n >= 8,
/// otherwise 2 (weights stay positive).
const MidpointRule& midpoint_rule(std::size_t n);

/// Weights for the first derivative at every node of a uniform midpoint grid
/// with unit spacing: five-point central stencils inside, five-point
/// one-sided stencils near the ends (fourth order). Requires n >= 5.
struct DerivativeStencils {
  std::vector<std::size_t> start;
  std::vector<std::vector<double>> weights;
};
const DerivativeStencils& derivative_stencils(std::size_t n);

}  // namespace dbar::numerics

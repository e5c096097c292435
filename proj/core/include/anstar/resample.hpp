#pragma once

// Off-grid evaluation of gridded data along one axis.
//
// Two mechanisms are provided:
//   * Non-uniform discrete Fourier sums (the spectral route).  A grid line is
//     treated as a trigonometric series; evaluating that series at arbitrary
//     targets matches the uniform transforms in fourier.hpp exactly when the
//     targets happen to be grid nodes.  A target frequency outside the
//     half-open Nyquist window [-pi/dz, pi/dz) is reported as exactly zero:
//     the series has no content there, and evaluating the aliased sum instead
//     would fabricate spurious values.
//   * Local Lagrange interpolation (orders 1 and 3) for when a cheap real-space
//     stencil is preferable.  Points outside the grid evaluate to zero.

#include <vector>

#include "anstar/grid.hpp"

namespace anstar {

// sum_j dz * line[j] * exp(-i xi z_j) for each target xi.  `line` is one line
// of samples along `ax` (a space axis); targets are frequencies.
std::vector<cplx> nudft_forward(const Axis& ax, const std::vector<cplx>& line,
                                const std::vector<double>& targets);

// sum_k dxi/(2 pi) * line[k] * exp(+i xi_k z) for each target z.  `line` is one
// line of frequency samples along `ax`; targets are space points.  Targets are
// unrestricted (the finite sum converges everywhere); it is the *forward* map
// whose targets live in a bounded window.
std::vector<cplx> nudft_inverse(const Axis& ax, const std::vector<cplx>& line,
                                const std::vector<double>& targets);

// Evaluate one grid line at an off-grid coordinate with a local Lagrange
// stencil: order 1 (linear, 2-point) or 3 (cubic, 4-point).  Outside the grid
// returns zero.
cplx lagrange_eval(const Axis& ax, const cplx* line, std::size_t stride, double t, int order);

// Resample a whole grid function along `axis` onto the nodes of `new_axis`
// (same kind of axis: space stays space, frequency stays frequency -- this
// routine moves sample locations, it does not transform).  `interp_order` 0
// selects trigonometric interpolation: the line is converted to its conjugate
// representation with a uniform transform and evaluated back at the new nodes
// with a non-uniform sum, so a frequency axis inherits the Nyquist-window
// zeroing above.  Orders 1 and 3 select the Lagrange stencils.
GridFunction resample_axis(const GridFunction& u, int axis, const Axis& new_axis,
                           int interp_order);

}  // namespace anstar

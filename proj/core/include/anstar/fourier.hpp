#ifndef ANSTAR_FOURIER_HPP
#define ANSTAR_FOURIER_HPP

// Continuum-normalized partial Fourier transforms on grid axes:
//
//   forward:  uhat(xi) = dz  * sum_j u(z_j) e^{-i xi z_j}
//   inverse:  u(z) = dxi/(2 pi) * sum_k uhat(xi_k) e^{+i xi_k z}
//
// The discrete pair is exactly mutually inverse on centered even-count
// axes; the frequency axis spans [-pi/dz, pi/dz) with spacing 2 pi/(N dz).

#include "anstar/grid.hpp"

namespace anstar {

// Transform along one axis (must be a centered position axis, even count
// >= 8); the axis is replaced by its frequency counterpart.
GridFunction partial_fourier_axis(const GridFunction& u, int axis);

// Inverse along one axis (must be a centered frequency axis); restores the
// centered position axis.
GridFunction inverse_partial_fourier_axis(const GridFunction& u, int axis);

// Transforms along the designated z axis.
GridFunction partial_fourier_z(const GridFunction& u);
GridFunction inverse_partial_fourier_z(const GridFunction& u);

// Transform along every axis (used by the flat-space product engines).
GridFunction fourier_all_axes(const GridFunction& u);
GridFunction inverse_fourier_all_axes(const GridFunction& u);

// The frequency axis conjugate to a position axis and vice versa.
Axis conjugate_axis(const Axis& ax);

// Spectral partial derivative of the given order along one position axis:
// transform, multiply by (i xi)^order, transform back.  Exact for trig
// polynomials; accurate to the spectral tail for well-resolved data.
GridFunction spectral_derivative(const GridFunction& u, int axis, int order);

// Largest spectrum magnitude on the outermost frequency shell of an axis,
// relative to the spectrum peak.  Estimates how much of the function is
// unresolved; multiplying by (xi_max)^order bounds the relative error a
// spectral derivative of that order can commit.
double spectral_edge_ratio(const GridFunction& u, int axis);

}  // namespace anstar

#endif  // ANSTAR_FOURIER_HPP

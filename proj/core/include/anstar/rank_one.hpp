#ifndef ANSTAR_RANK_ONE_HPP
#define ANSTAR_RANK_ONE_HPP

// The rank-one specialization on the plane {(a, l)}: geodesic symmetries of
// the chart as a symmetric space, the constant curvature endomorphism, the
// Unterberger coordinate change, and the two-dimensional deformed product
// with its transvection action.
//
// The plane product is the chart kernel in halved coordinates: under
// (a, l) = (2 a', z') and hbar = 2 hbar' the general kernel degenerates to
//
//   (u ⋆ v)(p0) = (pi hbar)^{-2} ∫ cosh(a1 - a2) e^{(2i/hbar) S} u(p1) v(p2),
//   S = Σ_cyc sinh(a0 - a1) l2,
//
// with the measure constant exact: it is the unique one for which
// u ⋆ v -> u v as hbar -> 0.  The transvection action restricted to the
// chart reads A_g(a, l) = (g_a + a, e^{-a} g_l + l); phase and amplitude of
// the kernel are invariant under its diagonal action.

#include <functional>

#include "anstar/analytic.hpp"
#include "anstar/star.hpp"
#include "anstar/transforms.hpp"

namespace anstar {

// Geodesic symmetry of the plane through `base`:
// s_b(a, l) = (2 b_a - a, 2 cosh(b_a - a) b_l - l).
Vec geodesic_symmetry(const Vec& base, const Vec& p);

// Constant curvature endomorphism R(d_a, d_l) in the (d_a, d_l) frame.
Mat curvature_endomorphism();

// The diffeomorphism phi(a, l) = (l / cosh a, sinh a) onto the flat plane
// and its closed inverse (q, p) -> (arcsinh p, q sqrt(1 + p^2)).
Vec unterberger_map(const Vec& p);
Vec unterberger_inverse(const Vec& p);

// Function transport along phi: pullback (phi^* f)(p) = f(phi(p)) and
// pushforward (phi_* f)(q) = f(phi^{-1}(q)) — utilities for relating the
// plane product to an externally supplied flat calculus; nothing here
// asserts the equivalence itself.
std::function<cplx(const Vec&)> unterberger_pullback(std::function<cplx(const Vec&)> f);
std::function<cplx(const Vec&)> unterberger_pushforward(std::function<cplx(const Vec&)> f);

// Transvection action on the plane and the inverse group element.
Vec rank_one_action(const Vec& g, const Vec& p);
Vec rank_one_inverse(const Vec& g);

// Phase and amplitude of the plane kernel at a triple (the kernel factor in
// the integral is amplitude * e^{(2i/hbar) phase}).
KernelValue rank_one_kernel(const Vec& p0, const Vec& p1, const Vec& p2);

// The plane product at one point by the sigma-substituted oscillatory
// quadrature (the scheme of star_kernel_direct with the halved hyperbolic
// scales; closed-form transforms are used when both factors carry the exact
// payload).  conv_tol and refine_delta behave as in star_kernel_direct.
cplx star_n1(const AnalyticFunction& u, const AnalyticFunction& v, double hbar, const Vec& at,
             const DeformationParams& par, double conv_tol = 0.0, double* refine_delta = nullptr);

}  // namespace anstar

#endif  // ANSTAR_RANK_ONE_HPP

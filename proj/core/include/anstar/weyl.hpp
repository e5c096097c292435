#ifndef ANSTAR_WEYL_HPP
#define ANSTAR_WEYL_HPP

// Flat Weyl product engine on a symplectic vector space (V, Omega), dim <= 4.
//
// Three routes to the same product, used to check one another:
//   * weyl_product_direct — tensor quadrature of the oscillatory integral
//       (pi hbar)^{-d} ∫∫ u(y) v(z) exp(-(2i/hbar) S0(x,y,z)) dy dz,
//     S0(x,y,z) = Omega(x,y) + Omega(y,z) + Omega(z,x), at one output point;
//   * weyl_product_fft — frequency-side composition on a common grid, with
//     the twisted multiplier exp((i hbar / 2) Omega(k, m)) on mode pairs;
//   * moyal_expansion — the asymptotic series in powers of the deformation
//     parameter, truncated at a requested order.
//
// Conventions.  With nu = hbar/(2i), the stationary-phase series of the
// integral is  u v + nu {u,v} + sum_{k>=2} (nu^k / k!) Lambda^k(u,v)  where
// Lambda is the Poisson bidifferential of Omega.  Equivalently, in the
// parameter theta = 2 nu = hbar/i the series reads sum_k theta^k c_k(u,v)
// with c_0 = uv and c_1 = (1/2){u,v}; MoyalSeries stores the c_k.

#include <array>
#include <vector>

#include "anstar/analytic.hpp"
#include "anstar/fourier.hpp"
#include "anstar/symplectic.hpp"
#include "anstar/transforms.hpp"

namespace anstar {

// Constant symplectic structure on the flat chart R^d, stored as the Gram
// matrix of the pairing: Omega(x, y) = <x, J y>.
struct WeylPhase {
    Mat J;

    int dim() const { return int(J.rows()); }

    // Normalized block form on the chart ordering (a, x_1..x_{d-2}, z):
    // Omega pairs a with z at unit strength and the x block carries the
    // interleaved standard form.  dim must be 2 or 4.
    static WeylPhase standard(int dim);

    // Phase of a Lie-algebra origin form (same chart ordering).
    static WeylPhase from_form(const ConstantSymplecticForm& w);

    double omega(const Vec& x, const Vec& y) const;

    // Fully antisymmetric triangle phase
    // S0(x,y,z) = Omega(x,y) + Omega(y,z) + Omega(z,x).
    double s0(const Vec& x, const Vec& y, const Vec& z) const;

    // Poisson tensor P = -J^{-1}; {f,g} = grad(f)^T P grad(g).
    Mat poisson() const;
};

// One summand of a power of the Poisson bidifferential:
// coeff * (d^du u) * (d^dv v), with du/dv per-axis derivative orders.
struct BiDiffTerm {
    double coeff = 0.0;
    std::array<int, kMaxDim> du{};
    std::array<int, kMaxDim> dv{};
};

// Merged term list of Lambda^k(u,v) = P^{i1 j1}...P^{ik jk}
// (d_{i1..ik} u)(d_{j1..jk} v).  Orders above 8 are refused: spectral
// derivatives past that lose all significance in double precision.
std::vector<BiDiffTerm> poisson_power_terms(const Mat& P, int k);

// Truncated product asymptotics.  terms[k] holds the coefficient c_k(u,v)
// of the theta = hbar/i parameterization (c_0 = uv, c_1 = {u,v}/2, and
// generally Lambda^k(u,v) / (2^k k!)), without any power of the parameter.
struct MoyalSeries {
    int order = 0;
    std::vector<GridFunction> terms;
    bool spectral_warning = false;       // some derivative lost >= half the digits
    double worst_amplification = 0.0;    // largest estimated relative derivative error

    // sum_{k<=order} theta^k terms[k] at theta = hbar/i; equals the series
    // sum (nu^k/k!) Lambda^k with nu = hbar/(2i).
    GridFunction sum(double hbar) const;
};

MoyalSeries moyal_series(const GridFunction& u, const GridFunction& v,
                         const WeylPhase& phase, int order);

// The summed expansion at deformation scale hbar.
GridFunction moyal_expansion(const GridFunction& u, const GridFunction& v,
                             const WeylPhase& phase, int order, double hbar);

// Diagnostics of the frequency-side product route.
struct TwistedProductInfo {
    double dropped_ratio = 0.0;  // out-of-window accumulated mass / total mass
    std::size_t pairs = 0;       // mode pairs accumulated
};

// Full-grid Weyl product: forward transform of both factors, twisted mode
// accumulation at k+m, inverse transform.  Factors must share axes (position
// form, dimension matching the phase).
GridFunction weyl_product_fft(const GridFunction& u, const GridFunction& v, double hbar,
                              const WeylPhase& phase, TwistedProductInfo* info = nullptr);

// Weyl product of analytic factors evaluated at one point by tensor
// Gauss-Legendre quadrature of the oscillatory integral.  Boxes derive from
// the stated decay envelopes truncated at par.band_threshold; the rule order
// per axis is par.quadrature_order.  When conv_tol > 0 the quadrature is
// repeated at twice the order and a change larger than conv_tol raises an
// error; refine_delta (optional) receives the observed change.
cplx weyl_product_direct(const AnalyticFunction& u, const AnalyticFunction& v, double hbar,
                         const Vec& at, const WeylPhase& phase, const DeformationParams& par,
                         double conv_tol = 0.0, double* refine_delta = nullptr);

// Gauss-Legendre nodes and weights on [lo, hi].
void gauss_legendre(int q, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace anstar

#endif  // ANSTAR_WEYL_HPP

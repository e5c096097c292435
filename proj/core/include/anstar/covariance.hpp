#ifndef ANSTAR_COVARIANCE_HPP
#define ANSTAR_COVARIANCE_HPP

// Moment functions of the left action as exact exponential-linear data, the
// covariance residuals of the product expansion, and the generator
// representations they induce.
//
// Every moment function is a sum of pieces  e^{kappa a} (b0 + bx.x + bz z),
// a family closed under chart derivatives, so series coefficients against
// moment data evaluate exactly and covariance residuals probe the algebra
// rather than grid resolution.
//
// Generators in the chart (X = c_A A + c_x . e + c_E E in r coefficients):
//
//   rho_hat(X)  = c_A d_a
//               + e^{-a} [ cosh(hbar xi/2) d_{c_x}
//                          - (2i/hbar) sinh(hbar xi/2) omega(x, c_x) ]
//               + c_E (2i/hbar) e^{-2a} sinh(hbar xi)
//
//   pi_hbar(X)  = c_A d_a + e^{-a} d_{c_x} + i c_hbar(X)
//
//   c_hbar(X)   = -e^{-a} (sinh(hbar xi)/hbar) (omega(x, c_x) - 2 e^{-a} c_E)
//
// The relative signs are pinned three ways: the generator property
// [pi(X), pi(Y)] = -pi([X,Y]), agreement of the E-generator with rho_hat,
// and the requirement that straightening the sinh reparametrization turns
// the multiplicative part into the z-component of the fundamental field.

#include <array>
#include <functional>
#include <vector>

#include "anstar/lie_algebra.hpp"
#include "anstar/symplectic.hpp"
#include "anstar/weyl.hpp"

namespace anstar {

// One exponential-linear piece: e^{kappa a} (b0 + bx.x + bz z) on the chart
// (a, x_1..x_{d-2}, z).
struct ExpLin {
    int dim = 0;
    double kappa = 0.0;
    double b0 = 0.0;
    Vec bx;  // length dim - 2
    double bz = 0.0;

    double eval(const Vec& p) const;
    // Exact mixed partial of the stated per-axis orders at p.
    double derivative(const std::array<int, kMaxDim>& order, const Vec& p) const;
    // Exact chart gradient at p.
    Vec gradient(const Vec& p) const;
};

// The moment functions of the r-basis [A, e_1..e_{2n-2}, E] in exponential-
// linear form, with the constant chart form they are Hamiltonian for.
struct CovariantMomentSet {
    int n = 0;
    int chart_dim = 0;  // 2n
    std::vector<ExpLin> lambdas;
    ConstantSymplecticForm form;

    static CovariantMomentSet build(const LieAlgebraData& L);

    // Moment function of a general X, as pieces of distinct exponential rate.
    std::vector<ExpLin> lambda(const Vec& X) const;
};

// Exact k-th expansion coefficient c_k(lambda_X, lambda_Y) at a chart point
// (theta-parameterization, matching MoyalSeries terms).
double moment_series_coefficient(const CovariantMomentSet& M, const Vec& X, const Vec& Y,
                                 int k, const Vec& p);

// Antisymmetry defects of the expansion coefficients on a deterministic
// probe cloud.  Entry 0 is the symmetry defect of the product term
// (identically zero); entry 1 is the defect of the covariance identity
// c_1(X,Y) - c_1(Y,X) = {lambda_X, lambda_Y} = -lambda_{[X,Y]}; entries
// k >= 2 are max_p |c_k(X,Y) - c_k(Y,X)|, all of which vanish for a
// covariant product.
std::vector<double> covariance_residual(const LieAlgebraData& L, const Vec& X, const Vec& Y,
                                        double hbar, int order);

// Both sides of the contraction identity for f = epsilon(a) mu(x) against u:
//   Lambda^k(f, u) = mu(x) eps^{(k)}(a) dz^k u + k eps^{(k-1)}(a) d_{sharp mu} dz^{k-1} u
// where Omega(sharp mu, .) = -mu.  `raw` is the explicit index summation over
// poisson_power_terms; `closed` the displayed right-hand side.  eps_derivs
// must return the m-th derivative of epsilon at a.
struct ContractionPair {
    std::function<cplx(const Vec&)> raw;
    std::function<cplx(const Vec&)> closed;
};
ContractionPair contraction_lemma_eval(const LieAlgebraData& L,
                                       const std::function<double(double, int)>& eps_derivs,
                                       const Vec& mu, const GaussSum& u, int k);

// Truncated series rho_nu(X) u = (1/2nu) [lambda_X, u]_star on a space-side
// chart grid; lambda-side derivatives exact, u-side spectral.  For X = A the
// series collapses to d_a u at every truncation order.
GridFunction star_representation_rho(const LieAlgebraData& L, const Vec& X,
                                     const GridFunction& u, double hbar, int order,
                                     bool* spectral_warning = nullptr);

// Frequency-side generator (closed form above) on an (a, x, xi) grid.
GridFunction rho_hat(const LieAlgebraData& L, const Vec& X, const GridFunction& uhat,
                     double hbar);

// Group-side generator (closed form above) on an (a, x, xi) grid.
GridFunction pi_hbar(const LieAlgebraData& L, const Vec& X, const GridFunction& f,
                     double hbar);

// The one-form value c_hbar(X) at a chart point (a, x.., xi).  Real-valued;
// returned as complex for interface uniformity.  Vanishes on a and at xi=0.
cplx c_form(const LieAlgebraData& L, const Vec& X, const Vec& point, double hbar);

}  // namespace anstar

#endif  // ANSTAR_COVARIANCE_HPP

#ifndef ANSTAR_MOMENT_HPP
#define ANSTAR_MOMENT_HPP

// Moment maps and fundamental vector fields for the left action of R on
// itself. For X = c_A A + sum_i c_i e_i + c_E E (r coefficients) the closed
// forms in the chart are
//
//   lambda_X(a,x,z) = -c_A z + e^{-a} omega(x, c_x) - c_E e^{-2a}
//   X*(a,x,z)       = (c_A, e^{-a} c_x, 2 c_E e^{-2a} + e^{-a} omega(c_x, x))
//
// and the pair satisfies i_{X*} Omega = -d lambda_X together with the
// anti-homomorphism {lambda_X, lambda_Y} = -lambda_{[X,Y]}; both signs are
// pinned by tests against the honest pullback form and structure constants.

#include <functional>

#include "anstar/common.hpp"
#include "anstar/group.hpp"
#include "anstar/lie_algebra.hpp"

namespace anstar {

// Scalar observable with an exact gradient in chart coordinates.
struct ScalarField {
    std::function<double(const IwasawaPoint&)> value;
    std::function<Vec(const IwasawaPoint&)> grad;
};

double moment_map(const LieAlgebraData& L, const Vec& X, const IwasawaPoint& p);
Vec moment_gradient(const LieAlgebraData& L, const Vec& X, const IwasawaPoint& p);
ScalarField moment_field(const LieAlgebraData& L, const Vec& X);

// Generator of left translations: X*(p) = d/dt exp(tX)·p at t = 0, as a
// chart tangent vector.
Vec fundamental_vector_field(const LieAlgebraData& L, const Vec& X, const IwasawaPoint& p);

// {f, g}(p) via the measured Poisson tensor and the fields' exact gradients.
double poisson_bracket(const LieAlgebraData& L, const ScalarField& f,
                       const ScalarField& g, const IwasawaPoint& p);

// Convenience: wraps a plain chart function with a fourth-order central
// finite-difference gradient (step scaled to the point's magnitude).
ScalarField numeric_field(int n, std::function<double(const IwasawaPoint&)> f);

}  // namespace anstar

#endif  // ANSTAR_MOMENT_HPP

#ifndef ANSTAR_SYMPLECTIC_HPP
#define ANSTAR_SYMPLECTIC_HPP

// The left-invariant symplectic structure on R = AN. The two-form at a point
// p is the pullback of Omega(u, v) = B(Z0, [u, v]) through left translation
// to the identity; in the (a, x, z) chart it is the same constant matrix at
// every point (verified numerically by the Darboux test, not assumed here:
// `pullback_symplectic` recomputes the Maurer-Cartan transport and the
// bracket from the structure constants at each call).

#include "anstar/common.hpp"
#include "anstar/group.hpp"
#include "anstar/lie_algebra.hpp"

namespace anstar {

// Constant chart form: omega(u, v) = omega_az (u_a v_z - u_z v_a)
//                                    + u_x^T omega_alpha v_x.
struct ConstantSymplecticForm {
    Mat omega_alpha;       // (2n-2) x (2n-2) interleaved standard block
    double omega_az = 0.0;

    double eval(const Vec& u, const Vec& v) const;  // tangent vectors (a,x,z)
    Mat matrix() const;                             // full 2n x 2n matrix
};

// Left-translate a chart tangent vector at p to the Lie algebra r (result in
// r coefficients [A, e.., E]); exact finite series of the Maurer-Cartan form.
Vec left_trivialize(const LieAlgebraData& L, const IwasawaPoint& p, const Vec& tangent);

// Pullback form at p evaluated on chart tangent vectors.
double pullback_symplectic(const LieAlgebraData& L, const IwasawaPoint& p,
                           const Vec& u, const Vec& v);

// Full matrix of the pullback form at p.
Mat pullback_matrix(const LieAlgebraData& L, const IwasawaPoint& p);

// The form measured at the identity, reshaped into the constant chart form;
// throws if the measured matrix does not have the split (a,z)+(x) shape.
ConstantSymplecticForm origin_form(const LieAlgebraData& L);

// Poisson tensor P = -W^{-1} of the measured origin form W; Poisson brackets
// are {f, g} = grad(f)^T P grad(g) in chart coordinates.
Mat poisson_tensor(const LieAlgebraData& L);

}  // namespace anstar

#endif  // ANSTAR_SYMPLECTIC_HPP

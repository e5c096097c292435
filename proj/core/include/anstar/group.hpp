#ifndef ANSTAR_GROUP_HPP
#define ANSTAR_GROUP_HPP

// Global chart on the Iwasawa group R = AN: a point (a, x, z) stands for
// exp(a A) · exp(x·e + z·(E/2)) with e the Darboux basis of g_1. In these
// coordinates the product is
//
//   (a1,x1,z1)·(a2,x2,z2) = (a1+a2,
//                            e^{-a2} x1 + x2,
//                            e^{-2 a2} z1 + z2 + e^{-a2} omega(x1, x2))
//
// with omega the standard interleaved symplectic pairing on R^{2n-2}; the
// Jacobian of left translation is unimodular, so Lebesgue measure da dx dz
// is the left Haar measure. The matrix bridge realizes the same chart in the
// defining representation and is the independent oracle for the closed form.

#include "anstar/common.hpp"
#include "anstar/lie_algebra.hpp"

namespace anstar {

struct IwasawaPoint {
    double a = 0.0;
    Vec x;  // size 2n-2 (empty when n = 1)
    double z = 0.0;
};

// Standard interleaved symplectic pairing on R^{2m}: sum over consecutive
// pairs of u_{2k} v_{2k+1} - u_{2k+1} v_{2k}.
double omega_standard(const Vec& u, const Vec& v);

IwasawaPoint group_identity(int n);
IwasawaPoint group_multiply(const IwasawaPoint& p, const IwasawaPoint& q);
IwasawaPoint group_inverse(const IwasawaPoint& p);

// Flat view (a, x_1 .. x_{2n-2}, z) used for gradients and tangent vectors.
int chart_dim(const IwasawaPoint& p);
Vec chart_coords(const IwasawaPoint& p);
IwasawaPoint point_from_coords(const Vec& c);

// Chart <-> defining representation.
CMat matrix_from_iwasawa(const LieAlgebraData& L, const IwasawaPoint& p);
IwasawaPoint iwasawa_from_matrix(const LieAlgebraData& L, const CMat& g);

}  // namespace anstar

#endif  // ANSTAR_GROUP_HPP

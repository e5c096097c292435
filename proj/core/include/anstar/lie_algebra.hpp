#ifndef ANSTAR_LIE_ALGEBRA_HPP
#define ANSTAR_LIE_ALGEBRA_HPP

// Construction of the rank-one pseudo-unitary algebra su(1,n) in its defining
// matrix representation, together with everything the rest of the library
// needs from it: structure constants, Killing form, Cartan involution,
// the ad(A) grading g = g_{-2} ⊕ g_{-1} ⊕ g_0 ⊕ g_1 ⊕ g_2, the distinguished
// elements A (grading generator), E (center of the nilpotent part) and Z0
// (complex structure generator in the center of k), and the solvable Iwasawa
// factor r = a ⊕ g_1 ⊕ g_2 with a fixed Darboux-adapted basis.
//
// All derived data are computed numerically from the matrices and verified
// on the fly; nothing is hard-coded beyond the defining basis and the
// normalization conventions recorded in `serialize_structure`.

#include <iosfwd>
#include <string>
#include <vector>

#include "anstar/common.hpp"

namespace anstar {

struct LieAlgebraData {
    int n = 0;           // parameter: algebra su(1,n), matrices of size n+1
    int matrix_dim = 0;  // n + 1
    int dim = 0;         // (n+1)^2 - 1
    int r_dim = 0;       // dim of the Iwasawa factor: 2n

    std::vector<CMat> basis;  // raw matrix basis b_i of the real algebra
    std::vector<std::string> basis_labels;

    // structure[k](i,j) = coefficient of b_k in [b_i, b_j]
    std::vector<Mat> structure;
    Mat killing;  // B(b_i, b_j), assembled from the structure constants
    Vec sigma;    // Cartan involution X -> -X^dagger acts as sigma_i on b_i

    Mat graded_basis;  // columns: ad(A) weight vectors (coefficients in raw basis)
    Vec grading;       // weight of each graded_basis column, in {0, ±1, ±2}

    Vec A_elem;   // grading generator, alpha(A) = 1
    Vec E_elem;   // spans g_2, normalized so B(Z0, E) = 1
    Vec Z0_elem;  // center of k with (ad Z0)^2 = -id on p
    double b_sigma_e = 0.0;  // measured B(sigma(E), E)

    // Basis of the Iwasawa factor r, columns [A, e_1 .. e_{2n-2}, E] in raw
    // coefficients. The middle block is a Darboux basis of (g_1, Omega) with
    // Omega(e_{2k-1}, e_{2k}) = +1, so the restricted symplectic matrix is the
    // standard interleaved J. Coefficient vectors of length 2n passed to the
    // moment/symplectic routines always refer to this ordering.
    Mat r_basis;
    Mat r_pinv;  // left inverse: raw coefficients -> r coefficients

    // --- linear algebra on coefficient vectors (raw basis) ---
    CMat to_matrix(const Vec& u) const;
    Vec from_matrix(const CMat& X) const;  // throws if X is outside the algebra
    Vec bracket(const Vec& u, const Vec& v) const;
    Mat ad(const Vec& u) const;
    double killing_form(const Vec& u, const Vec& v) const;
    Vec sigma_apply(const Vec& u) const;

    // --- the Iwasawa factor ---
    Vec r_to_raw(const Vec& c) const;            // c in [A, e.., E] ordering
    Vec raw_to_r(const Vec& u) const;            // throws if u is outside r
    Vec r_bracket(const Vec& cu, const Vec& cv) const;
};

// Builds su(1,n) and all derived data; throws if any structural invariant
// fails to hold numerically. n must be >= 1.
LieAlgebraData build_su1n(int n);

// Plain-text dump: basis matrices, structure constants, Killing form,
// distinguished elements, and a ledger of the normalization conventions the
// numerical values commit to.
void serialize_structure(const LieAlgebraData& L, std::ostream& os);

}  // namespace anstar

#endif  // ANSTAR_LIE_ALGEBRA_HPP

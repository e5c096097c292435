#include "anstar/symplectic.hpp"

#include <cmath>

namespace anstar {

double ConstantSymplecticForm::eval(const Vec& u, const Vec& v) const {
    const int d = int(omega_alpha.rows());
    require(u.size() == d + 2 && v.size() == d + 2, "ConstantSymplecticForm: bad sizes");
    double acc = omega_az * (u(0) * v(d + 1) - u(d + 1) * v(0));
    if (d > 0) acc += u.segment(1, d).dot(omega_alpha * v.segment(1, d));
    return acc;
}

Mat ConstantSymplecticForm::matrix() const {
    const int d = int(omega_alpha.rows());
    Mat W = Mat::Zero(d + 2, d + 2);
    W(0, d + 1) = omega_az;
    W(d + 1, 0) = -omega_az;
    if (d > 0) W.block(1, 1, d, d) = omega_alpha;
    return W;
}

Vec left_trivialize(const LieAlgebraData& L, const IwasawaPoint& p, const Vec& tangent) {
    require(tangent.size() == L.r_dim, "left_trivialize: wrong tangent size");
    // Chart position/tangent split into the A part and the nilpotent part;
    // the chart z coordinate is the coefficient of E/2.
    Vec n_r = Vec::Zero(L.r_dim);
    for (int i = 0; i < L.r_dim - 2; ++i) n_r(1 + i) = p.x(i);
    n_r(L.r_dim - 1) = 0.5 * p.z;
    Vec dn_r = Vec::Zero(L.r_dim);
    for (int i = 0; i < L.r_dim - 2; ++i) dn_r(1 + i) = tangent(1 + i);
    dn_r(L.r_dim - 1) = 0.5 * tangent(L.r_dim - 1);

    const Mat adN = L.ad(L.r_to_raw(n_r));
    // Finite nilpotent series: Ad(exp(-n)) = sum (-ad n)^k / k!  and the
    // right-trivialized differential of exp, phi(-ad n) = sum (-ad n)^k/(k+1)!.
    // ad(n) raises the grading, so its 5th power vanishes identically; powers
    // below the rounding floor of the structure constants are treated as zero.
    Mat ad_exp = Mat::Identity(L.dim, L.dim);
    Mat phi = Mat::Identity(L.dim, L.dim);
    Mat power = Mat::Identity(L.dim, L.dim);
    const double scale = 1.0 + adN.norm();
    double fact = 1.0;
    double powscale = 1.0;
    for (int k = 1; k <= 6; ++k) {
        power = (-adN) * power;
        fact *= double(k);
        powscale *= scale;
        if (power.norm() < 1e-12 * powscale) break;
        ad_exp += power / fact;
        phi += power / (fact * double(k + 1));
    }
    ensure(power.norm() < 1e-12 * powscale, "left_trivialize: ad(n) series did not terminate");

    const Vec w_raw = tangent(0) * (ad_exp * L.A_elem) + phi * L.r_to_raw(dn_r);
    return L.raw_to_r(w_raw);
}

double pullback_symplectic(const LieAlgebraData& L, const IwasawaPoint& p,
                           const Vec& u, const Vec& v) {
    const Vec wu = L.r_to_raw(left_trivialize(L, p, u));
    const Vec wv = L.r_to_raw(left_trivialize(L, p, v));
    return L.killing_form(L.Z0_elem, L.bracket(wu, wv));
}

Mat pullback_matrix(const LieAlgebraData& L, const IwasawaPoint& p) {
    Mat W(L.r_dim, L.r_dim);
    std::vector<Vec> triv(std::size_t(L.r_dim));
    for (int i = 0; i < L.r_dim; ++i) {
        Vec e = Vec::Zero(L.r_dim);
        e(i) = 1.0;
        triv[std::size_t(i)] = L.r_to_raw(left_trivialize(L, p, e));
    }
    for (int i = 0; i < L.r_dim; ++i)
        for (int j = 0; j < L.r_dim; ++j)
            W(i, j) = L.killing_form(L.Z0_elem,
                                     L.bracket(triv[std::size_t(i)], triv[std::size_t(j)]));
    return W;
}

ConstantSymplecticForm origin_form(const LieAlgebraData& L) {
    const Mat W = pullback_matrix(L, group_identity(L.n));
    const int d = L.r_dim - 2;
    ensure((W + W.transpose()).norm() < 1e-10, "origin_form: form is not antisymmetric");
    for (int i = 0; i < d; ++i) {
        ensure(std::abs(W(0, 1 + i)) < 1e-10 && std::abs(W(L.r_dim - 1, 1 + i)) < 1e-10,
               "origin_form: (a,z) and x blocks do not split");
    }
    ConstantSymplecticForm f;
    f.omega_az = W(0, L.r_dim - 1);
    f.omega_alpha = W.block(1, 1, d, d);
    ensure(std::abs(f.omega_az) > 1e-12, "origin_form: degenerate (a,z) pairing");
    return f;
}

Mat poisson_tensor(const LieAlgebraData& L) {
    const Mat W = origin_form(L).matrix();
    const Mat P = -W.inverse();
    ensure((W * P + Mat::Identity(L.r_dim, L.r_dim)).norm() < 1e-10,
           "poisson_tensor: inversion failed");
    return P;
}

}  // namespace anstar

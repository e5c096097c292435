#include "anstar/group.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

namespace anstar {

namespace {

Vec flatten(const CMat& X) {
    const int m = int(X.rows());
    Vec v(2 * m * m);
    int k = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            v(k++) = X(i, j).real();
            v(k++) = X(i, j).imag();
        }
    return v;
}

// exp(a A) in the defining representation; A is real symmetric there.
CMat exp_aA(const LieAlgebraData& L, double a) {
    const CMat Am = L.to_matrix(L.A_elem);
    ensure(Am.imag().norm() < 1e-12, "exp_aA: A is not real in this representation");
    const Mat Ar = Am.real();
    Eigen::SelfAdjointEigenSolver<Mat> es(Ar);
    Mat result = es.eigenvectors() *
                 (a * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                 es.eigenvectors().transpose();
    return result.cast<cplx>();
}

// exp(N) for nilpotent N with N^3 = 0 in this representation.
CMat exp_nilpotent(const CMat& N) {
    const CMat N2 = N * N;
    ensure((N2 * N).norm() < 1e-10 * (1.0 + N.norm() * N.norm() * N.norm()),
           "exp_nilpotent: matrix is not 3-step nilpotent");
    return CMat::Identity(N.rows(), N.cols()) + N + 0.5 * N2;
}

CMat n_part_matrix(const LieAlgebraData& L, const Vec& x, double z) {
    Vec c = Vec::Zero(L.r_dim);
    for (int i = 0; i < x.size(); ++i) c(1 + i) = x(i);
    c(L.r_dim - 1) = 0.5 * z;  // chart z is the coefficient of E/2
    return L.to_matrix(L.r_to_raw(c));
}

}  // namespace

double omega_standard(const Vec& u, const Vec& v) {
    require(u.size() == v.size() && u.size() % 2 == 0, "omega_standard: bad sizes");
    double acc = 0.0;
    for (int k = 0; k + 1 < u.size(); k += 2) acc += u(k) * v(k + 1) - u(k + 1) * v(k);
    return acc;
}

IwasawaPoint group_identity(int n) {
    require(n >= 1, "group_identity: n must be >= 1");
    IwasawaPoint p;
    p.x = Vec::Zero(2 * n - 2);
    return p;
}

IwasawaPoint group_multiply(const IwasawaPoint& p, const IwasawaPoint& q) {
    require(p.x.size() == q.x.size(), "group_multiply: mixed ranks");
    const double ea = std::exp(-q.a);
    IwasawaPoint r;
    r.a = p.a + q.a;
    r.x = ea * p.x + q.x;
    r.z = ea * ea * p.z + q.z + ea * omega_standard(p.x, q.x);
    return r;
}

IwasawaPoint group_inverse(const IwasawaPoint& p) {
    const double ea = std::exp(p.a);
    IwasawaPoint r;
    r.a = -p.a;
    r.x = -ea * p.x;
    r.z = -ea * ea * p.z;
    return r;
}

int chart_dim(const IwasawaPoint& p) { return int(p.x.size()) + 2; }

Vec chart_coords(const IwasawaPoint& p) {
    Vec c(chart_dim(p));
    c(0) = p.a;
    c.segment(1, p.x.size()) = p.x;
    c(c.size() - 1) = p.z;
    return c;
}

IwasawaPoint point_from_coords(const Vec& c) {
    require(c.size() >= 2, "point_from_coords: need at least (a, z)");
    IwasawaPoint p;
    p.a = c(0);
    p.x = c.segment(1, c.size() - 2);
    p.z = c(c.size() - 1);
    return p;
}

CMat matrix_from_iwasawa(const LieAlgebraData& L, const IwasawaPoint& p) {
    require(p.x.size() == L.r_dim - 2, "matrix_from_iwasawa: wrong rank");
    return exp_aA(L, p.a) * exp_nilpotent(n_part_matrix(L, p.x, p.z));
}

IwasawaPoint iwasawa_from_matrix(const LieAlgebraData& L, const CMat& g) {
    require(g.rows() == L.matrix_dim && g.cols() == L.matrix_dim,
            "iwasawa_from_matrix: wrong shape");
    // v+ is the unit +1 eigenvector of A; the nilpotent part annihilates it,
    // so <v+, g v+> = e^a reads off the abelian coordinate directly.
    CVec vp = CVec::Zero(L.matrix_dim);
    vp(0) = 1.0 / std::sqrt(2.0);
    vp(1) = 1.0 / std::sqrt(2.0);
    const cplx s = vp.dot(g * vp);
    ensure(std::abs(s.imag()) < 1e-9 * (1.0 + std::abs(s)) && s.real() > 0.0,
           "iwasawa_from_matrix: matrix is not in the Iwasawa image");
    const double a = std::log(s.real());

    const CMat M = exp_aA(L, -a) * g;
    const CMat K = M - CMat::Identity(L.matrix_dim, L.matrix_dim);
    ensure((K * K * K).norm() < 1e-8 * (1.0 + K.norm()),
           "iwasawa_from_matrix: residual factor is not unipotent");
    const CMat N = K - 0.5 * K * K;  // exact log of a 3-step unipotent factor

    // Decompose N on the nilpotent basis [e_1.., E/2] by least squares.
    const int nb = L.r_dim - 1;
    Mat cols(2 * L.matrix_dim * L.matrix_dim, nb);
    for (int j = 0; j < nb; ++j) {
        Vec c = Vec::Zero(L.r_dim);
        if (j < L.r_dim - 2)
            c(1 + j) = 1.0;
        else
            c(L.r_dim - 1) = 0.5;
        cols.col(j) = flatten(L.to_matrix(L.r_to_raw(c)));
    }
    const Vec target = flatten(N);
    const Vec sol = cols.colPivHouseholderQr().solve(target);
    ensure((cols * sol - target).norm() < 1e-8 * (1.0 + target.norm()),
           "iwasawa_from_matrix: nilpotent part is outside n");

    IwasawaPoint p;
    p.a = a;
    p.x = sol.head(L.r_dim - 2);
    p.z = sol(nb - 1);
    const CMat rebuilt = matrix_from_iwasawa(L, p);
    ensure((rebuilt - g).norm() < 1e-8 * (1.0 + g.norm()),
           "iwasawa_from_matrix: matrix is not in the Iwasawa image");
    return p;
}

}  // namespace anstar

#include "anstar/lie_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <ostream>

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

// Signature matrix eta = diag(-1, 1, .., 1) of the (1, n) Hermitian form.
Mat eta_matrix(int m) {
    Mat eta = Mat::Identity(m, m);
    eta(0, 0) = -1.0;
    return eta;
}

void check_in_algebra(const CMat& X, const Mat& eta) {
    const CMat cond = X.adjoint() * eta + eta * X;
    ensure(cond.norm() < 1e-12, "build_su1n: basis element violates the defining condition");
    ensure(std::abs(X.trace()) < 1e-12, "build_su1n: basis element is not traceless");
}

// Normalize the free scale/sign of a null-space column deterministically:
// unit norm with the largest-magnitude entry positive (first such on ties).
void canonicalize_column(Vec& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-14) best = i;
    if (v(best) < 0.0) v = -v;
    v /= v.norm();
}

// Orthonormal basis of the null space of M with threshold tol, columns
// canonicalized for reproducibility.
Mat null_space(const Mat& M, double tol) {
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    const int null_dim = int(M.cols()) - rank;
    Mat K(M.cols(), null_dim);
    for (int j = 0; j < null_dim; ++j) {
        Vec col = svd.matrixV().col(rank + j);
        canonicalize_column(col);
        K.col(j) = col;
    }
    return K;
}

}  // namespace

CMat LieAlgebraData::to_matrix(const Vec& u) const {
    require(u.size() == dim, "to_matrix: wrong coefficient count");
    CMat X = CMat::Zero(matrix_dim, matrix_dim);
    for (int i = 0; i < dim; ++i) X += u(i) * basis[i];
    return X;
}

Vec LieAlgebraData::from_matrix(const CMat& X) const {
    require(X.rows() == matrix_dim && X.cols() == matrix_dim, "from_matrix: wrong shape");
    Mat Bflat(2 * matrix_dim * matrix_dim, dim);
    for (int i = 0; i < dim; ++i) Bflat.col(i) = flatten(basis[i]);
    const Vec target = flatten(X);
    const Vec c = Bflat.colPivHouseholderQr().solve(target);
    ensure((Bflat * c - target).norm() < 1e-9 * (1.0 + target.norm()),
           "from_matrix: matrix is not in the algebra span");
    return c;
}

Vec LieAlgebraData::bracket(const Vec& u, const Vec& v) const {
    Vec w(dim);
    for (int k = 0; k < dim; ++k) w(k) = u.dot(structure[k] * v);
    return w;
}

Mat LieAlgebraData::ad(const Vec& u) const {
    Mat M(dim, dim);
    for (int k = 0; k < dim; ++k) M.row(k) = u.transpose() * structure[k];
    return M;
}

double LieAlgebraData::killing_form(const Vec& u, const Vec& v) const {
    return u.dot(killing * v);
}

Vec LieAlgebraData::sigma_apply(const Vec& u) const { return sigma.cwiseProduct(u); }

Vec LieAlgebraData::r_to_raw(const Vec& c) const {
    require(c.size() == r_dim, "r_to_raw: wrong coefficient count");
    return r_basis * c;
}

Vec LieAlgebraData::raw_to_r(const Vec& u) const {
    const Vec c = r_pinv * u;
    ensure((r_basis * c - u).norm() < 1e-9 * (1.0 + u.norm()),
           "raw_to_r: element is not in the Iwasawa factor");
    return c;
}

Vec LieAlgebraData::r_bracket(const Vec& cu, const Vec& cv) const {
    return raw_to_r(bracket(r_to_raw(cu), r_to_raw(cv)));
}

LieAlgebraData build_su1n(int n) {
    require(n >= 1, "build_su1n: n must be >= 1");
    LieAlgebraData L;
    L.n = n;
    const int m = n + 1;
    L.matrix_dim = m;
    L.dim = m * m - 1;
    L.r_dim = 2 * n;
    const Mat eta = eta_matrix(m);

    auto unit = [m](int i, int j) {
        CMat E = CMat::Zero(m, m);
        E(i, j) = 1.0;
        return E;
    };

    // Raw basis: p-part pairs touching the 0-th row/column, then the compact
    // off-diagonal pairs, then the anti-Hermitian diagonals.
    std::vector<double> sig;
    for (int j = 1; j <= n; ++j) {
        L.basis.push_back(unit(0, j) + unit(j, 0));
        L.basis_labels.push_back("S" + std::to_string(j));
        sig.push_back(-1.0);
        L.basis.push_back(iunit * (unit(0, j) - unit(j, 0)));
        L.basis_labels.push_back("T" + std::to_string(j));
        sig.push_back(-1.0);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            L.basis.push_back(unit(i, j) - unit(j, i));
            L.basis_labels.push_back("U" + std::to_string(i) + std::to_string(j));
            sig.push_back(1.0);
            L.basis.push_back(iunit * (unit(i, j) + unit(j, i)));
            L.basis_labels.push_back("V" + std::to_string(i) + std::to_string(j));
            sig.push_back(1.0);
        }
    for (int j = 0; j < n; ++j) {
        L.basis.push_back(iunit * (unit(j, j) - unit(j + 1, j + 1)));
        L.basis_labels.push_back("D" + std::to_string(j));
        sig.push_back(1.0);
    }
    ensure(int(L.basis.size()) == L.dim, "build_su1n: basis count mismatch");
    L.sigma = Eigen::Map<Vec>(sig.data(), L.dim);

    for (int i = 0; i < L.dim; ++i) {
        check_in_algebra(L.basis[i], eta);
        // The recorded involution signs must match -X^dagger honestly.
        const CMat sX = -L.basis[i].adjoint();
        ensure((sX - L.sigma(i) * L.basis[i]).norm() < 1e-12,
               "build_su1n: basis element is not a Cartan involution eigenvector");
    }

    // Structure constants and the Killing form from them.
    L.structure.assign(L.dim, Mat::Zero(L.dim, L.dim));
    for (int i = 0; i < L.dim; ++i)
        for (int j = i + 1; j < L.dim; ++j) {
            const CMat C = L.basis[i] * L.basis[j] - L.basis[j] * L.basis[i];
            const Vec c = L.from_matrix(C);
            for (int k = 0; k < L.dim; ++k) {
                L.structure[k](i, j) = c(k);
                L.structure[k](j, i) = -c(k);
            }
        }
    L.killing = Mat::Zero(L.dim, L.dim);
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j) {
            double acc = 0.0;
            for (int k = 0; k < L.dim; ++k)
                for (int l = 0; l < L.dim; ++l)
                    acc += L.structure[l](i, k) * L.structure[k](j, l);
            L.killing(i, j) = acc;
        }
    // Independent cross-check: for this matrix algebra B(X,Y) = 2(n+1) tr(XY).
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j) {
            const cplx tr = (L.basis[i] * L.basis[j]).trace();
            ensure(std::abs(tr.imag()) < 1e-10, "build_su1n: complex Killing entry");
            ensure(std::abs(L.killing(i, j) - 2.0 * m * tr.real()) <
                       1e-8 * (1.0 + std::abs(L.killing(i, j))),
                   "build_su1n: Killing form disagrees with the trace form");
        }

    // Grading generator: A spans the split Cartan a; its adjoint action is
    // diagonalizable with spectrum {0, ±1, ±2} after scaling.
    Vec A_raw = Vec::Zero(L.dim);
    A_raw(0) = 1.0;  // S1 = E_{01} + E_{10}
    {
        const Mat adA = L.ad(A_raw);
        Eigen::EigenSolver<Mat> es(adA);
        std::vector<double> evs;
        for (int i = 0; i < L.dim; ++i) {
            ensure(std::abs(es.eigenvalues()(i).imag()) < 1e-9,
                   "build_su1n: ad(A) has complex spectrum");
            evs.push_back(es.eigenvalues()(i).real());
        }
        std::sort(evs.begin(), evs.end());
        std::vector<double> clusters;
        for (double v : evs) {
            if (clusters.empty() || std::abs(v - clusters.back()) > 1e-8) clusters.push_back(v);
        }
        std::vector<double> positive;
        for (double v : clusters)
            if (v > 1e-8) positive.push_back(v);
        double scale = 0.0;
        if (positive.size() == 2) {
            ensure(std::abs(positive[1] - 2.0 * positive[0]) < 1e-8,
                   "build_su1n: positive ad(A) clusters are not in ratio 2");
            scale = positive[0];
        } else if (positive.size() == 1) {
            scale = positive[0] / 2.0;  // lone cluster carries the double root
        } else {
            ensure(false, "build_su1n: unexpected ad(A) cluster count");
        }
        L.A_elem = A_raw / scale;
    }

    // Graded basis: null spaces of (ad A - w) for w in {-2,-1,0,1,2}.
    {
        const Mat adA = L.ad(L.A_elem);
        std::vector<std::pair<double, Mat>> blocks;
        int total = 0;
        for (double w : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const Mat K = null_space(adA - w * Mat::Identity(L.dim, L.dim), 1e-7);
            if (K.cols() == 0) {
                ensure(n == 1 && (w == -1.0 || w == 1.0),
                       "build_su1n: missing ad(A) weight space");
                continue;
            }
            blocks.emplace_back(w, K);
            total += int(K.cols());
        }
        ensure(total == L.dim, "build_su1n: ad(A) spectrum is not {0, +-1, +-2}");
        L.graded_basis.resize(L.dim, L.dim);
        L.grading.resize(L.dim);
        int col = 0;
        for (const auto& [w, K] : blocks) {
            for (int j = 0; j < K.cols(); ++j) {
                L.graded_basis.col(col) = K.col(j);
                L.grading(col) = w;
                ++col;
            }
        }
        // Expected multiplicities: 1, 2n-2, (dim of m = g_0 minus a), 2n-2, 1.
        auto mult = [&](double w) {
            int c = 0;
            for (int i = 0; i < L.dim; ++i)
                if (std::abs(L.grading(i) - w) < 0.5) ++c;
            return c;
        };
        ensure(mult(2.0) == 1 && mult(-2.0) == 1, "build_su1n: g_{+-2} is not one-dimensional");
        ensure(mult(1.0) == 2 * n - 2 && mult(-1.0) == 2 * n - 2,
               "build_su1n: g_{+-1} has wrong dimension");
    }

    // Z0: the center of k acting on p as a complex structure.
    {
        std::vector<int> k_idx, p_idx;
        for (int i = 0; i < L.dim; ++i)
            (L.sigma(i) > 0 ? k_idx : p_idx).push_back(i);
        // Solve [Z, b_j] = 0 for Z in span(k) and all k basis elements b_j.
        Mat M(int(k_idx.size()) * L.dim, int(k_idx.size()));
        for (std::size_t c = 0; c < k_idx.size(); ++c) {
            for (std::size_t j = 0; j < k_idx.size(); ++j) {
                Vec ej = Vec::Zero(L.dim);
                ej(k_idx[j]) = 1.0;
                Vec bi = Vec::Zero(L.dim);
                bi(k_idx[c]) = 1.0;
                M.block(int(j) * L.dim, int(c), L.dim, 1) = L.bracket(bi, ej);
            }
        }
        const Mat K = null_space(M, 1e-8);
        ensure(K.cols() == 1, "build_su1n: center of k is not one-dimensional");
        Vec Z = Vec::Zero(L.dim);
        for (std::size_t c = 0; c < k_idx.size(); ++c) Z(k_idx[c]) = K(int(c), 0);
        // (ad Z)^2 must be a negative scalar mu on p; rescale to mu = -1.
        const Mat ad2 = L.ad(Z) * L.ad(Z);
        double mu = 0.0;
        for (std::size_t r = 0; r < p_idx.size(); ++r) {
            Vec ep = Vec::Zero(L.dim);
            ep(p_idx[r]) = 1.0;
            const Vec im = ad2 * ep;
            for (int i = 0; i < L.dim; ++i)
                if (i != p_idx[r])
                    ensure(std::abs(im(i)) < 1e-8, "build_su1n: (ad Z0)^2 not scalar on p");
            if (r == 0) mu = im(p_idx[0]);
            ensure(std::abs(im(p_idx[r]) - mu) < 1e-8, "build_su1n: (ad Z0)^2 not scalar on p");
        }
        ensure(mu < 0.0, "build_su1n: (ad Z0)^2 is not negative on p");
        Z /= std::sqrt(-mu);
        // Deterministic sign: positive coefficient on the leading diagonal
        // generator D0 = i (E_{00} - E_{11}).
        int d0 = -1;
        for (int i = 0; i < L.dim; ++i)
            if (L.basis_labels[i] == "D0") d0 = i;
        ensure(d0 >= 0 && std::abs(Z(d0)) > 1e-10, "build_su1n: cannot fix the sign of Z0");
        if (Z(d0) < 0.0) Z = -Z;
        L.Z0_elem = Z;
    }

    // E spans g_2; normalize against Z0 through the Killing form.
    {
        Vec E_raw;
        for (int i = 0; i < L.dim; ++i)
            if (std::abs(L.grading(i) - 2.0) < 0.5) E_raw = L.graded_basis.col(i);
        const double kappa = L.killing_form(L.Z0_elem, E_raw);
        ensure(std::abs(kappa) > 1e-10, "build_su1n: B(Z0, g_2) degenerates");
        L.E_elem = E_raw / kappa;
        L.b_sigma_e = L.killing_form(L.sigma_apply(L.E_elem), L.E_elem);
    }

    // Darboux basis of g_1 for Omega(u, v) = B(Z0, [u, v]).
    {
        std::vector<Vec> pool;
        for (int i = 0; i < L.dim; ++i)
            if (std::abs(L.grading(i) - 1.0) < 0.5) pool.push_back(L.graded_basis.col(i));
        auto omg = [&](const Vec& u, const Vec& v) {
            return L.killing_form(L.Z0_elem, L.bracket(u, v));
        };
        std::vector<Vec> darboux;
        while (!pool.empty()) {
            Vec v1 = pool.front();
            pool.erase(pool.begin());
            int best = -1;
            double best_val = 0.0;
            for (std::size_t j = 0; j < pool.size(); ++j) {
                const double w = omg(v1, pool[j]);
                if (std::abs(w) > std::abs(best_val) + 1e-12) {
                    best = int(j);
                    best_val = w;
                }
            }
            ensure(best >= 0 && std::abs(best_val) > 1e-8,
                   "build_su1n: restricted form is degenerate on g_1");
            Vec v2 = pool[best] / best_val;  // Omega(v1, v2) = 1
            pool.erase(pool.begin() + best);
            for (auto& u : pool) u = u + omg(v2, u) * v1 - omg(v1, u) * v2;
            darboux.push_back(v1);
            darboux.push_back(v2);
        }
        L.r_basis.resize(L.dim, L.r_dim);
        L.r_basis.col(0) = L.A_elem;
        for (int i = 0; i < 2 * n - 2; ++i) L.r_basis.col(1 + i) = darboux[std::size_t(i)];
        L.r_basis.col(L.r_dim - 1) = L.E_elem;
        L.r_pinv = (L.r_basis.transpose() * L.r_basis).ldlt().solve(L.r_basis.transpose());
    }

    // Structural sanity of the Iwasawa factor in its fixed basis.
    {
        Vec eA = Vec::Zero(L.r_dim), eE = Vec::Zero(L.r_dim);
        eA(0) = 1.0;
        eE(L.r_dim - 1) = 1.0;
        ensure((L.r_bracket(eA, eE) - 2.0 * eE).norm() < 1e-9, "build_su1n: [A, E] != 2E");
        for (int i = 0; i < 2 * n - 2; ++i) {
            Vec ei = Vec::Zero(L.r_dim);
            ei(1 + i) = 1.0;
            ensure((L.r_bracket(eA, ei) - ei).norm() < 1e-9, "build_su1n: [A, e_i] != e_i");
            for (int j = 0; j < 2 * n - 2; ++j) {
                Vec ej = Vec::Zero(L.r_dim);
                ej(1 + j) = 1.0;
                double expected = 0.0;
                if (j == i + 1 && i % 2 == 0) expected = 1.0;
                if (j == i - 1 && i % 2 == 1) expected = -1.0;
                const Vec br = L.r_bracket(ei, ej);
                Vec want = Vec::Zero(L.r_dim);
                want(L.r_dim - 1) = expected;
                ensure((br - want).norm() < 1e-9, "build_su1n: g_1 brackets are not Darboux");
            }
        }
        ensure(std::abs(L.killing_form(L.Z0_elem, L.E_elem) - 1.0) < 1e-10,
               "build_su1n: normalization B(Z0, E) = 1 failed");
    }

    return L;
}

void serialize_structure(const LieAlgebraData& L, std::ostream& os) {
    os.precision(17);
    os << "format: anstar-structure v1\n";
    os << "n: " << L.n << "\n";
    os << "matrix_dim: " << L.matrix_dim << "\n";
    os << "algebra_dim: " << L.dim << "\n";
    os << "iwasawa_dim: " << L.r_dim << "\n";
    os << "basis_labels:";
    for (const auto& s : L.basis_labels) os << " " << s;
    os << "\n";
    for (int b = 0; b < L.dim; ++b) {
        os << "basis " << b << " (" << L.basis_labels[std::size_t(b)] << "):\n";
        for (int i = 0; i < L.matrix_dim; ++i) {
            os << " ";
            for (int j = 0; j < L.matrix_dim; ++j) {
                const cplx v = L.basis[std::size_t(b)](i, j);
                os << " (" << v.real() << "," << v.imag() << ")";
            }
            os << "\n";
        }
    }
    os << "structure_constants (k i j value), nonzero only:\n";
    for (int k = 0; k < L.dim; ++k)
        for (int i = 0; i < L.dim; ++i)
            for (int j = 0; j < L.dim; ++j)
                if (std::abs(L.structure[std::size_t(k)](i, j)) > 1e-14)
                    os << "  " << k << " " << i << " " << j << " "
                       << L.structure[std::size_t(k)](i, j) << "\n";
    os << "killing:\n";
    for (int i = 0; i < L.dim; ++i) {
        os << " ";
        for (int j = 0; j < L.dim; ++j) os << " " << L.killing(i, j);
        os << "\n";
    }
    auto vec_line = [&](const char* name, const Vec& v) {
        os << name << ":";
        for (int i = 0; i < v.size(); ++i) os << " " << v(i);
        os << "\n";
    };
    vec_line("sigma", L.sigma);
    vec_line("grading", L.grading);
    vec_line("A", L.A_elem);
    vec_line("E", L.E_elem);
    vec_line("Z0", L.Z0_elem);
    os << "iwasawa_basis (columns A, e_1.., E):\n";
    for (int i = 0; i < L.dim; ++i) {
        os << " ";
        for (int j = 0; j < L.r_dim; ++j) os << " " << L.r_basis(i, j);
        os << "\n";
    }
    os << "conventions:\n";
    os << "  hermitian_form: eta = diag(-1, 1, .., 1)\n";
    os << "  involution: sigma(X) = -X^dagger\n";
    os << "  killing: B(X,Y) assembled from structure constants; "
          "equals 2(n+1) tr(XY) on the defining representation\n";
    os << "  grading: ad(A) weights in {0, +-1, +-2}; alpha(A) = 1\n";
    os << "  center_normalization: B(Z0, E) = 1; measured B(sigma E, E) = "
       << L.b_sigma_e << "\n";
    os << "  chart: (a, x, z) -> exp(a A) exp(x.e + z E/2)\n";
    os << "  group_law: (a1,x1,z1)(a2,x2,z2) = (a1+a2, e^{-a2} x1 + x2, "
          "e^{-2 a2} z1 + z2 + e^{-a2} omega(x1,x2))\n";
    os << "  omega_on_g1: standard interleaved Darboux pairing in the e basis\n";
    os << "  moment_maps: lambda_X = -c_A z + e^{-a} omega(x, c_x) - c_E e^{-2a}\n";
    os << "  moment_bracket_sign: {lambda_X, lambda_Y} = -lambda_{[X,Y]}\n";
}

}  // namespace anstar

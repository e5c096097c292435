#include "anstar/moment.hpp"

#include "anstar/symplectic.hpp"

#include <cmath>

namespace anstar {

namespace {

void split_r(const LieAlgebraData& L, const Vec& X, double& cA, Vec& cx, double& cE) {
    require(X.size() == L.r_dim, "moment: element must have 2n coefficients [A, e.., E]");
    cA = X(0);
    cx = X.segment(1, L.r_dim - 2);
    cE = X(L.r_dim - 1);
}

}  // namespace

double moment_map(const LieAlgebraData& L, const Vec& X, const IwasawaPoint& p) {
    double cA, cE;
    Vec cx;
    split_r(L, X, cA, cx, cE);
    const double ea = std::exp(-p.a);
    return -cA * p.z + ea * omega_standard(p.x, cx) - cE * ea * ea;
}

Vec moment_gradient(const LieAlgebraData& L, const Vec& X, const IwasawaPoint& p) {
    double cA, cE;
    Vec cx;
    split_r(L, X, cA, cx, cE);
    const double ea = std::exp(-p.a);
    Vec g = Vec::Zero(L.r_dim);
    g(0) = -ea * omega_standard(p.x, cx) + 2.0 * cE * ea * ea;
    for (int i = 0; i < L.r_dim - 2; ++i) {
        Vec e = Vec::Zero(L.r_dim - 2);
        e(i) = 1.0;
        g(1 + i) = ea * omega_standard(e, cx);
    }
    g(L.r_dim - 1) = -cA;
    return g;
}

ScalarField moment_field(const LieAlgebraData& L, const Vec& X) {
    ScalarField f;
    f.value = [&L, X](const IwasawaPoint& p) { return moment_map(L, X, p); };
    f.grad = [&L, X](const IwasawaPoint& p) { return moment_gradient(L, X, p); };
    return f;
}

Vec fundamental_vector_field(const LieAlgebraData& L, const Vec& X, const IwasawaPoint& p) {
    double cA, cE;
    Vec cx;
    split_r(L, X, cA, cx, cE);
    const double ea = std::exp(-p.a);
    Vec v(L.r_dim);
    v(0) = cA;
    v.segment(1, L.r_dim - 2) = ea * cx;
    v(L.r_dim - 1) = 2.0 * cE * ea * ea + ea * omega_standard(cx, p.x);
    return v;
}

double poisson_bracket(const LieAlgebraData& L, const ScalarField& f,
                       const ScalarField& g, const IwasawaPoint& p) {
    static thread_local Mat P;
    static thread_local int cached_dim = -1;
    if (cached_dim != L.r_dim) {
        P = poisson_tensor(L);
        cached_dim = L.r_dim;
    }
    return f.grad(p).dot(P * g.grad(p));
}

ScalarField numeric_field(int n, std::function<double(const IwasawaPoint&)> f) {
    ScalarField s;
    s.value = f;
    s.grad = [n, f](const IwasawaPoint& p) {
        const Vec c0 = chart_coords(p);
        Vec g(2 * n);
        for (int i = 0; i < 2 * n; ++i) {
            const double h = 1e-4 * (1.0 + std::abs(c0(i)));
            auto at = [&](double delta) {
                Vec c = c0;
                c(i) += delta;
                return f(point_from_coords(c));
            };
            g(i) = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
        }
        return g;
    };
    return s;
}

}  // namespace anstar

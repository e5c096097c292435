#include "anstar/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace anstar {

QuadRule gauss_legendre(int order) {
    require(order >= 1, "gauss_legendre: order must be >= 1");
    QuadRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int n = order;
    // Newton iteration from the Chebyshev-based initial guess; converges in
    // a handful of steps to machine precision for any practical order.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence: p1 = P_n(x), pp = P_n'(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact midpoint for odd orders
    return rule;
}

QuadRule gauss_legendre(int order, double a, double b) {
    QuadRule base = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
        base.nodes[i] = mid + half * base.nodes[i];
        base.weights[i] *= half;
    }
    return base;
}

QuadRule gauss_hermite(int order) {
    require(order >= 1, "gauss_hermite: order must be >= 1");
    // Golub–Welsch: eigen-decompose the symmetric Jacobi matrix of the
    // Hermite recurrence; nodes are eigenvalues, weights come from the first
    // component of each eigenvector times the total weight sqrt(pi).
    Mat J = Mat::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double off = std::sqrt(0.5 * k);
        J(k - 1, k) = off;
        J(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    ensure(es.info() == Eigen::Success, "gauss_hermite: eigen solve failed");
    QuadRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double mu0 = std::sqrt(pi);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace anstar

// Foundations: quadrature rules and the closed-form Gaussian-sum evaluator.
// The Fourier/derivative/integral members are checked against brute-force
// quadrature oracles and finite differences before any other module is
// allowed to rely on them as a reference.

#include "doctest.h"

#include <cmath>
#include <random>

#include "anstar/analytic.hpp"
#include "anstar/quadrature.hpp"

using namespace anstar;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

// A deliberately awkward 2-axis specimen: polynomial × modulated Gaussian
// plus a second displaced term, exercising every stored field.
GaussSum specimen() {
    GaussSum f = GaussSum::modulated_gaussian(2, vec2(0.3, -0.2), vec2(0.7, 1.1),
                                              vec2(1.2, -0.6), cplx(1.1, -0.4));
    f = f.times_affine(0, cplx(2.0, 0.0), cplx(-0.5, 0.3));
    f = f.times_affine(1, cplx(0.0, 1.0), cplx(0.4, 0.0));
    GaussSum g = GaussSum::gaussian(2, vec2(-0.8, 0.5), vec2(1.4, 0.9), cplx(0.35, 0.2));
    return f + g;
}

// Brute-force ∫ f(z, w) e^{s·i·ξ·z} dz at fixed w via Gauss–Legendre.
cplx slow_partial_ft(const GaussSum& f, int sign, double xi, double w) {
    const QuadRule q = gauss_legendre(400, -12.0, 12.0);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double z = q.nodes[i];
        acc += q.weights[i] * f.eval(vec2(z, w)) * std::exp(iunit * double(sign) * xi * z);
    }
    return acc;
}

cplx slow_integral_2d(const GaussSum& f) {
    const QuadRule q = gauss_legendre(300, -12.0, 12.0);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        for (std::size_t j = 0; j < q.nodes.size(); ++j)
            acc += q.weights[i] * q.weights[j] * f.eval(vec2(q.nodes[i], q.nodes[j]));
    return acc;
}

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const QuadRule q = gauss_legendre(8);  // exact through degree 15
    for (int deg : {0, 3, 7, 12, 15}) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            acc += q.weights[i] * std::pow(q.nodes[i], deg);
        const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
        CHECK(std::abs(acc - exact) < 1e-13);
    }
    const QuadRule m = gauss_legendre(16, 0.5, 2.5);
    double acc = 0.0;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        acc += m.weights[i] * std::sin(m.nodes[i]);
    CHECK(std::abs(acc - (std::cos(0.5) - std::cos(2.5))) < 1e-13);
}

TEST_CASE("gauss-hermite moments") {
    const QuadRule q = gauss_hermite(20);
    const double rpi = std::sqrt(pi);
    const double expected[] = {rpi, rpi / 2.0, 3.0 * rpi / 4.0, 15.0 * rpi / 8.0};
    for (int m = 0; m < 4; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            acc += q.weights[i] * std::pow(q.nodes[i], 2 * m);
        CHECK(std::abs(acc - expected[m]) < 1e-12 * expected[m]);
    }
}

TEST_CASE("modulated gaussian evaluates to its defining formula") {
    const GaussSum f = GaussSum::modulated_gaussian(1, Vec::Constant(1, 0.4),
                                                    Vec::Constant(1, 0.9),
                                                    Vec::Constant(1, 2.3), cplx(0.7, 0.1));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int it = 0; it < 50; ++it) {
        const double p = u(rng);
        const cplx direct = cplx(0.7, 0.1) * std::exp(-0.9 * (p - 0.4) * (p - 0.4)) *
                            std::exp(iunit * 2.3 * p);
        CHECK(std::abs(f.eval(&p) - direct) < 1e-13);
    }
}

TEST_CASE("product evaluates pointwise") {
    const GaussSum f = specimen();
    const GaussSum g = GaussSum::modulated_gaussian(2, vec2(0.1, 0.6), vec2(0.8, 0.5),
                                                    vec2(-0.9, 0.3), cplx(0.2, 1.3));
    const GaussSum fg = f * g;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int it = 0; it < 50; ++it) {
        const Vec p = vec2(u(rng), u(rng));
        const cplx lhs = fg.eval(p);
        const cplx rhs = f.eval(p) * g.eval(p);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("derivative matches finite differences") {
    const GaussSum f = specimen();
    const GaussSum d0 = f.derivative(0);
    const GaussSum d1 = f.derivative(1);
    const double h = 1e-5;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 30; ++it) {
        const double x = u(rng), y = u(rng);
        const cplx fd0 = (f.eval(vec2(x + h, y)) - f.eval(vec2(x - h, y))) / (2.0 * h);
        const cplx fd1 = (f.eval(vec2(x, y + h)) - f.eval(vec2(x, y - h))) / (2.0 * h);
        CHECK(std::abs(d0.eval(vec2(x, y)) - fd0) < 1e-8);
        CHECK(std::abs(d1.eval(vec2(x, y)) - fd1) < 1e-8);
    }
}

TEST_CASE("unit gaussian transforms to the classical pair") {
    // ∫ e^{-z²/2} e^{-iξz} dz = √(2π) e^{-ξ²/2}
    const GaussSum f = GaussSum::gaussian(1, Vec::Zero(1), Vec::Constant(1, 0.5));
    const GaussSum ft = f.partial_fourier(0, -1, 1.0);
    for (double xi : {0.0, 0.7, -1.3, 2.9}) {
        const cplx expect = std::sqrt(2.0 * pi) * std::exp(-0.5 * xi * xi);
        CHECK(std::abs(ft.eval(&xi) - expect) < 1e-13);
    }
}

TEST_CASE("partial fourier matches quadrature oracle") {
    const GaussSum f = specimen();
    for (int sign : {-1, 1}) {
        const GaussSum ft = f.partial_fourier(0, sign, 1.0);
        for (double xi : {0.0, 0.8, -1.7, 3.1}) {
            for (double w : {0.1, -0.9}) {
                const cplx slow = slow_partial_ft(f, sign, xi, w);
                const cplx fast = ft.eval(vec2(xi, w));
                CHECK(std::abs(fast - slow) < 1e-10 * (1.0 + std::abs(slow)));
            }
        }
    }
}

TEST_CASE("forward then inverse partial fourier is the identity") {
    const GaussSum f = specimen();
    const GaussSum back = f.partial_fourier(0, -1, 1.0).partial_fourier(0, 1, 1.0 / (2.0 * pi));
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int it = 0; it < 40; ++it) {
        const Vec p = vec2(u(rng), u(rng));
        CHECK(std::abs(back.eval(p) - f.eval(p)) < 1e-11);
    }
}

TEST_CASE("integral and norm match quadrature") {
    const GaussSum f = specimen();
    CHECK(std::abs(f.integral() - slow_integral_2d(f)) < 1e-10);
    const GaussSum absq = f * f.conjugate();
    CHECK(std::abs(cplx(f.norm2_sq()) - slow_integral_2d(absq)) < 1e-10);
    CHECK(f.norm2_sq() >= 0.0);
}

TEST_CASE("translate, scale, conjugate act pointwise") {
    const GaussSum f = specimen();
    const Vec t = vec2(0.6, -1.1);
    const GaussSum ft = f.translate(t);
    const GaussSum fs = f.scale_axis(0, 1.7);
    const GaussSum fc = f.conjugate();
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 30; ++it) {
        const Vec p = vec2(u(rng), u(rng));
        CHECK(std::abs(ft.eval(p) - f.eval(vec2(p(0) - 0.6, p(1) + 1.1))) < 1e-12);
        CHECK(std::abs(fs.eval(p) - f.eval(vec2(1.7 * p(0), p(1)))) < 1e-12);
        CHECK(std::abs(fc.eval(p) - std::conj(f.eval(p))) < 1e-13);
    }
}

TEST_CASE("derivative table memoizes mixed partials consistently") {
    const DerivTable table(specimen());
    const GaussSum direct = specimen().derivative(0).derivative(1).derivative(1);
    const GaussSum& cached = table.get({1, 2, 0, 0});
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int it = 0; it < 20; ++it) {
        const Vec p = vec2(u(rng), u(rng));
        CHECK(std::abs(cached.eval(p) - direct.eval(p)) < 1e-11);
    }
}

TEST_CASE("decay box half-width hits the requested drop") {
    const double L = box_for_decay(0.5, 1.0, 1e-12);
    CHECK(std::abs(std::exp(-0.5 * (L - 1.0) * (L - 1.0)) - 1e-12) < 1e-24);
    const AnalyticFunction af =
        make_analytic(specimen(), 1.0, 0.5, Vec::Zero(2));
    CHECK(af.dim == 2);
    CHECK(af.exact.has_value());
    CHECK(std::abs(af(vec2(0.2, 0.4)) - specimen().eval(vec2(0.2, 0.4))) < 1e-14);
}

// Flat product engine: phase bookkeeping, quadrature rules, series
// coefficients, and the three product routes checked against closed forms
// and against one another.

#include <doctest.h>

#include <random>

#include "anstar/covariance.hpp"
#include "anstar/lie_algebra.hpp"
#include "anstar/weyl.hpp"
#include "helpers.hpp"

using namespace anstar;

namespace {

GridFunction sample_gauss(const GaussSum& g, std::vector<Axis> axes) {
    const int zax = int(axes.size()) - 1;
    return sample_grid(std::move(axes), zax, [&](const Vec& p) { return g.eval(p); });
}

// Shared two-axis specimen pair: modulated Gaussians with clean decay on
// the (a, z) box below and spectra well inside the 64-node window.
GaussSum specimen_u() {
    Vec c(2), k(2), f(2);
    c << 0.4, -0.6;
    k << 0.9, 0.7;
    f << 0.4, 0.6;
    return GaussSum::modulated_gaussian(2, c, k, f, cplx(0.8, 0.3));
}

GaussSum specimen_v() {
    Vec c(2), k(2), f(2);
    c << -0.3, 0.5;
    k << 1.1, 0.8;
    f << -0.5, 0.35;
    return GaussSum::modulated_gaussian(2, c, k, f, cplx(0.6, -0.45));
}

std::vector<Axis> axes_2d() {
    return {centered_axis(6.0, 64), centered_axis(8.0, 64)};
}

// Exact Poisson bracket of two closed-form factors for the standard pairing
// on (a, z): {u,v} = du/da dv/dz - du/dz dv/da.
GaussSum exact_bracket_2d(const GaussSum& u, const GaussSum& v) {
    return u.derivative(0) * v.derivative(1) - u.derivative(1) * v.derivative(0);
}

AnalyticFunction analytic_of(const GaussSum& g, double decay_c, const Vec& center) {
    return make_analytic(g, 1.0, decay_c, center);
}

}  // namespace

TEST_CASE("phase data matches the measured origin forms") {
    for (int n : {1, 2}) {
        const LieAlgebraData L = build_su1n(n);
        const WeylPhase std_phase = WeylPhase::standard(2 * n);
        const WeylPhase lie_phase = WeylPhase::from_form(origin_form(L));
        CHECK((std_phase.J - lie_phase.J).cwiseAbs().maxCoeff() <= 1e-12);

        // P = -J^{-1}; for the normalized block form the two coincide.
        const Mat P = std_phase.poisson();
        CHECK((P * std_phase.J + Mat::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((P - std_phase.J).cwiseAbs().maxCoeff() <= 1e-12);
    }

    const WeylPhase w = WeylPhase::standard(4);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        Vec x(4), y(4), z(4);
        for (int i = 0; i < 4; ++i) {
            x(i) = dist(rng);
            y(i) = dist(rng);
            z(i) = dist(rng);
        }
        // Fully antisymmetric and alternating: vanishes on the diagonal and
        // flips sign under swapping any two slots.
        CHECK(std::abs(w.s0(x, x, x)) <= 1e-12);
        CHECK(std::abs(w.s0(x, y, y)) <= 1e-12);
        CHECK(std::abs(w.s0(x, y, z) + w.s0(x, z, y)) <= 1e-12);
        CHECK(std::abs(w.s0(x, y, z) - w.s0(y, z, x)) <= 1e-12);
        CHECK(std::abs(w.s0(x, y, z) - (w.omega(x, y) + w.omega(y, z) + w.omega(z, x))) <=
              1e-12);
    }
    CHECK_THROWS_AS(WeylPhase::standard(3), std::invalid_argument);
}

TEST_CASE("quadrature rules integrate polynomials and oscillatory Gaussians") {
    std::vector<double> x, w;

    // A q-point rule is exact through degree 2q-1.
    gauss_legendre(4, 0.0, 1.0, x, w);
    for (int deg = 0; deg <= 7; ++deg) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], deg);
        CHECK(std::abs(s - 1.0 / (deg + 1)) <= 1e-14);
    }

    gauss_legendre(48, -8.0, 8.0, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::exp(-x[i] * x[i]);
    CHECK(std::abs(s - std::sqrt(pi)) <= 1e-13);

    // Oscillatory: int exp(-x^2) cos(10 x) = sqrt(pi) exp(-25).  The rule
    // needs degree for the oscillation (half of omega x radius) plus the
    // Gaussian itself (about 2 sqrt(kappa R^2 ln(1/eps))).
    gauss_legendre(96, -7.0, 7.0, x, w);
    s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += w[i] * std::exp(-x[i] * x[i]) * std::cos(10.0 * x[i]);
    CHECK(std::abs(s - std::sqrt(pi) * std::exp(-25.0)) <= 1e-12);

    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0, x, w), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0, x, w), std::invalid_argument);
}

TEST_CASE("bidifferential term lists match hand enumeration") {
    const Mat P = WeylPhase::standard(2).poisson();

    auto t0 = poisson_power_terms(P, 0);
    REQUIRE(t0.size() == 1);
    CHECK(t0[0].coeff == 1.0);

    // Lambda^1 = d_a u d_z v - d_z u d_a v.
    auto t1 = poisson_power_terms(P, 1);
    REQUIRE(t1.size() == 2);
    for (const auto& t : t1) {
        if (t.du[0] == 1) {
            CHECK(t.dv[1] == 1);
            CHECK(t.coeff == 1.0);
        } else {
            CHECK(t.du[1] == 1);
            CHECK(t.dv[0] == 1);
            CHECK(t.coeff == -1.0);
        }
    }

    // Lambda^2 = d_aa u d_zz v - 2 d_az u d_az v + d_zz u d_aa v.
    auto t2 = poisson_power_terms(P, 2);
    REQUIRE(t2.size() == 3);
    for (const auto& t : t2) {
        if (t.du[0] == 2) CHECK(t.coeff == 1.0);
        if (t.du[0] == 1 && t.du[1] == 1) CHECK(t.coeff == -2.0);
        if (t.du[1] == 2) CHECK(t.coeff == 1.0);
    }

    CHECK_THROWS_AS(poisson_power_terms(P, 9), std::invalid_argument);
}

TEST_CASE("series coefficients reproduce the product and half the bracket") {
    const WeylPhase phase = WeylPhase::standard(2);
    const GaussSum u = specimen_u(), v = specimen_v();
    const GridFunction gu = sample_gauss(u, axes_2d());
    const GridFunction gv = sample_gauss(v, axes_2d());

    const MoyalSeries series = moyal_series(gu, gv, phase, 1);
    CHECK_FALSE(series.spectral_warning);

    const GaussSum uv = u * v;
    const GaussSum half_bracket = cplx(0.5) * exact_bracket_2d(u, v);
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t f = 0; f < series.terms[0].values.size(); ++f) {
        const Vec p = series.terms[0].point(f);
        e0 = std::max(e0, std::abs(series.terms[0].values[f] - uv.eval(p)));
        e1 = std::max(e1, std::abs(series.terms[1].values[f] - half_bracket.eval(p)));
    }
    CHECK(e0 <= 1e-12);
    CHECK(e1 <= 1e-9);

    // Order-zero truncation is the pointwise product.
    const GridFunction k0 = moyal_expansion(gu, gv, phase, 0, 0.5);
    CHECK(linf_diff(k0, series.terms[0]) <= 1e-14);
}

TEST_CASE("lattice plane waves multiply by the twisted composition law") {
    // e^{ikx} star e^{imx} = e^{i(k+m)x} e^{(i hbar/2) <k, P m>}: exact for
    // modes on the frequency lattice, in both supported dimensions.
    struct ModeSet {
        std::vector<Vec> k;
        std::vector<cplx> amp;
    };
    auto run = [](int dim, const std::vector<Axis>& axes, int mode_span, double hbar) {
        const WeylPhase phase = WeylPhase::standard(dim);
        const Mat P = phase.poisson();
        std::mt19937_64 rng(71 + dim);
        std::uniform_int_distribution<int> pick(-mode_span, mode_span);
        std::uniform_real_distribution<double> amp_dist(-1.0, 1.0);

        auto build = [&](int count) {
            ModeSet m;
            for (int j = 0; j < count; ++j) {
                Vec k(dim);
                for (int d = 0; d < dim; ++d)
                    k(d) = pick(rng) * conjugate_axis(axes[std::size_t(d)]).spacing;
                m.k.push_back(k);
                m.amp.push_back(cplx(amp_dist(rng), amp_dist(rng)));
            }
            return m;
        };
        auto sample = [&](const ModeSet& m) {
            return sample_grid(axes, dim - 1, [&](const Vec& p) {
                cplx s(0.0);
                for (std::size_t j = 0; j < m.k.size(); ++j)
                    s += m.amp[j] * std::exp(iunit * m.k[j].dot(p));
                return s;
            });
        };

        const ModeSet mu = build(12), mv = build(12);
        TwistedProductInfo info;
        const GridFunction got = weyl_product_fft(sample(mu), sample(mv), hbar, phase, &info);
        CHECK(info.dropped_ratio <= 1e-12);

        double err = 0.0;
        std::uniform_int_distribution<int> node(0, int(got.size()) - 1);
        for (int t = 0; t < 40; ++t) {
            const std::size_t f = std::size_t(node(rng));
            const Vec p = got.point(f);
            cplx want(0.0);
            for (std::size_t j = 0; j < mu.k.size(); ++j)
                for (std::size_t l = 0; l < mv.k.size(); ++l)
                    want += mu.amp[j] * mv.amp[l] * std::exp(iunit * (mu.k[j] + mv.k[l]).dot(p)) *
                            std::exp(cplx(0.0, 0.5 * hbar) * mu.k[j].dot(P * mv.k[l]));
            err = std::max(err, std::abs(got.values[f] - want));
        }
        return err;
    };

    CHECK(run(2, axes_2d(), 8, 0.5) <= 1e-10);
    const std::vector<Axis> axes4{centered_axis(4.0, 16), centered_axis(4.0, 16),
                                  centered_axis(4.0, 16), centered_axis(4.0, 16)};
    CHECK(run(4, axes4, 3, 0.3) <= 1e-10);
}

TEST_CASE("the product is unital on grids") {
    const WeylPhase phase = WeylPhase::standard(2);
    const GridFunction gu = sample_gauss(specimen_u(), axes_2d());
    GridFunction one = make_grid(axes_2d(), 1);
    for (cplx& v : one.values) v = 1.0;

    CHECK(linf_diff(weyl_product_fft(gu, one, 0.5, phase), gu) <= 1e-11);
    CHECK(linf_diff(weyl_product_fft(one, gu, 0.5, phase), gu) <= 1e-11);

    // Same in dimension four.
    const WeylPhase phase4 = WeylPhase::standard(4);
    std::vector<Axis> axes4{centered_axis(4.2, 16), centered_axis(4.2, 16),
                            centered_axis(4.2, 16), centered_axis(4.2, 16)};
    Vec c4 = Vec::Zero(4), k4 = Vec::Constant(4, 1.4);
    c4(0) = 0.2;
    const GridFunction g4 = sample_gauss(GaussSum::gaussian(4, c4, k4), axes4);
    GridFunction one4 = make_grid(axes4, 3);
    for (cplx& v : one4.values) v = 1.0;
    CHECK(linf_diff(weyl_product_fft(g4, one4, 0.4, phase4), g4) <= 1e-11);
}

TEST_CASE("direct quadrature agrees with the spectral product at probes") {
    const WeylPhase phase = WeylPhase::standard(2);
    const double hbar = 0.5;
    const GaussSum u = specimen_u(), v = specimen_v();
    const GridFunction gu = sample_gauss(u, axes_2d());
    const GridFunction gv = sample_gauss(v, axes_2d());
    const GridFunction w = weyl_product_fft(gu, gv, hbar, phase);

    Vec cu(2), cv(2);
    cu << 0.4, -0.6;
    cv << -0.3, 0.5;
    const AnalyticFunction au = analytic_of(u, 0.7, cu);
    const AnalyticFunction av = analytic_of(v, 0.8, cv);

    DeformationParams par = DeformationParams::for_hbar(hbar);
    par.quadrature_order = 96;

    // One hundred interior nodes; the direct oscillatory integral must land
    // on the grid values of the spectral route.
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(20, 43);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int ia = pick(rng), iz = pick(rng);
        const std::size_t flat = std::size_t(ia) * w.stride(0) + std::size_t(iz) * w.stride(1);
        const Vec at = w.point(flat);
        const cplx direct = weyl_product_direct(au, av, hbar, at, phase, par);
        worst = std::max(worst, std::abs(direct - w.values[flat]));
    }
    MESSAGE("direct vs spectral, worst of 100 probes: " << worst);
    CHECK(worst <= 1e-6);

    // Doubling the rule order barely moves a converged value, and the
    // non-convergence check trips on a hopeless order.
    Vec at(2);
    at << 0.3, -0.2;
    double delta = 0.0;
    const cplx fine = weyl_product_direct(au, av, hbar, at, phase, par, 1e-6, &delta);
    CHECK(delta <= 1e-8);
    (void)fine;

    DeformationParams coarse = par;
    coarse.quadrature_order = 8;
    CHECK_THROWS_AS(weyl_product_direct(au, av, hbar, at, phase, coarse, 1e-10, nullptr),
                    std::runtime_error);
}

TEST_CASE("direct product symmetry and semiclassical value") {
    const WeylPhase phase = WeylPhase::standard(2);
    Vec cu(2), cv(2);
    cu << 0.3, -0.2;
    cv << -0.25, 0.35;
    Vec ku = Vec::Constant(2, 1.0), kv = Vec::Constant(2, 1.3);
    const GaussSum u = GaussSum::gaussian(2, cu, ku), v = GaussSum::gaussian(2, cv, kv);
    const AnalyticFunction au = analytic_of(u, 1.0, cu), av = analytic_of(v, 1.3, cv);

    DeformationParams par = DeformationParams::for_hbar(0.5);
    par.quadrature_order = 96;
    Vec at(2);
    at << 0.1, 0.05;

    // Real factors: swapping them conjugates the product.
    const cplx uv = weyl_product_direct(au, av, 0.5, at, phase, par);
    const cplx vu = weyl_product_direct(av, au, 0.5, at, phase, par);
    CHECK(std::abs(vu - std::conj(uv)) <= 1e-10);

    // Small hbar: the product approaches the pointwise value.  Sharp factors
    // keep the oscillation resolvable: the rule needs roughly
    // (box radius) x (2 box radius / hbar) / 2 nodes per axis.
    const double hs = 1e-3;
    Vec cs(2);
    cs << 0.15, -0.1;
    const Vec ks = Vec::Constant(2, 80.0);
    const GaussSum sharp_u = GaussSum::gaussian(2, cs, ks, cplx(1.1, 0.0));
    const GaussSum sharp_v = GaussSum::gaussian(2, cs, ks, cplx(0.9, 0.0));
    const AnalyticFunction as_u = analytic_of(sharp_u, 80.0, cs);
    const AnalyticFunction as_v = analytic_of(sharp_v, 80.0, cs);
    DeformationParams sharp_par = DeformationParams::for_hbar(hs);
    sharp_par.quadrature_order = 512;
    const cplx got = weyl_product_direct(as_u, as_v, hs, cs, phase, sharp_par);
    const cplx want = sharp_u.eval(cs) * sharp_v.eval(cs);
    MESSAGE("semiclassical relative defect: " << std::abs(got - want) / std::abs(want));
    CHECK(std::abs(got - want) <= 5e-2 * std::abs(want));
}

TEST_CASE("the spectral product is associative") {
    const WeylPhase phase = WeylPhase::standard(2);
    const double hbar = 0.5;
    Vec cw(2), kw(2), fw(2);
    cw << 0.1, 0.2;
    kw << 0.8, 1.0;
    fw << 0.3, -0.4;
    const GridFunction gu = sample_gauss(specimen_u(), axes_2d());
    const GridFunction gv = sample_gauss(specimen_v(), axes_2d());
    const GridFunction gw =
        sample_gauss(GaussSum::modulated_gaussian(2, cw, kw, fw, cplx(0.7, 0.2)), axes_2d());

    const GridFunction left = weyl_product_fft(weyl_product_fft(gu, gv, hbar, phase), gw, hbar, phase);
    const GridFunction right = weyl_product_fft(gu, weyl_product_fft(gv, gw, hbar, phase), hbar, phase);

    GridFunction diff = left;
    for (std::size_t f = 0; f < diff.values.size(); ++f) diff.values[f] -= right.values[f];
    const double rel = l2_norm(diff) / l2_norm(right);
    MESSAGE("associativity relative L2 defect: " << rel);
    CHECK(rel <= 1e-8);
}

TEST_CASE("the product approaches the pointwise product at the expected rates") {
    const WeylPhase phase = WeylPhase::standard(2);
    const GaussSum u = specimen_u(), v = specimen_v();
    const GridFunction gu = sample_gauss(u, axes_2d());
    const GridFunction gv = sample_gauss(v, axes_2d());

    const GaussSum uv = u * v;
    const GaussSum bracket = exact_bracket_2d(u, v);
    const GridFunction guv = sample_gauss(uv, axes_2d());
    const GridFunction gbracket = sample_gauss(bracket, axes_2d());

    const std::vector<double> hs{0.4, 0.2, 0.1, 0.05};
    std::vector<double> err_prod, err_comm;
    for (double h : hs) {
        const GridFunction w = weyl_product_fft(gu, gv, h, phase);
        err_prod.push_back(linf_diff(w, guv));

        // Antisymmetrized product over 2 nu against the Poisson bracket.
        const GridFunction wr = weyl_product_fft(gv, gu, h, phase);
        GridFunction comm = w;
        const cplx inv_two_nu = 1.0 / (2.0 * nu_of_hbar(h));
        for (std::size_t f = 0; f < comm.values.size(); ++f)
            comm.values[f] = (w.values[f] - wr.values[f]) * inv_two_nu - gbracket.values[f];
        err_comm.push_back(comm.max_abs());
    }
    const double slope_prod = loglog_slope(hs, err_prod);
    const double slope_comm = loglog_slope(hs, err_comm);
    MESSAGE("product deviation slope: " << slope_prod << ", commutator slope: " << slope_comm);
    CHECK(slope_prod == doctest::Approx(1.0).epsilon(0.2));
    CHECK(slope_comm == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("series truncation error drops at order K+1") {
    const WeylPhase phase = WeylPhase::standard(2);
    const GridFunction gu = sample_gauss(specimen_u(), axes_2d());
    const GridFunction gv = sample_gauss(specimen_v(), axes_2d());

    const std::vector<double> hs{0.4, 0.28, 0.2, 0.14, 0.1};
    for (int K = 1; K <= 3; ++K) {
        std::vector<double> err;
        for (double h : hs) {
            const GridFunction w = weyl_product_fft(gu, gv, h, phase);
            const GridFunction s = moyal_expansion(gu, gv, phase, K, h);
            err.push_back(linf_diff(w, s));
        }
        const double slope = loglog_slope(hs, err);
        MESSAGE("truncation order " << K << " slope: " << slope);
        CHECK(std::abs(slope - (K + 1)) <= 0.3);
    }
}

TEST_CASE("spectral warning flags an unresolved grid") {
    const WeylPhase phase = WeylPhase::standard(2);

    const GridFunction fine_u = sample_gauss(specimen_u(), axes_2d());
    const GridFunction fine_v = sample_gauss(specimen_v(), axes_2d());
    const MoyalSeries good = moyal_series(fine_u, fine_v, phase, 3);
    CHECK_FALSE(good.spectral_warning);
    CHECK(good.worst_amplification < 1e-8);

    // Sixteen nodes on the same box cannot hold third derivatives.
    std::vector<Axis> coarse{centered_axis(6.0, 16), centered_axis(8.0, 16)};
    const GridFunction cu = sample_gauss(specimen_u(), coarse);
    const GridFunction cv = sample_gauss(specimen_v(), coarse);
    const MoyalSeries bad = moyal_series(cu, cv, phase, 3);
    CHECK(bad.spectral_warning);
}

TEST_CASE("product engine rejects malformed inputs") {
    const WeylPhase phase = WeylPhase::standard(2);
    const GridFunction gu = sample_gauss(specimen_u(), axes_2d());

    // Mismatched grid.
    std::vector<Axis> other{centered_axis(6.0, 64), centered_axis(9.0, 64)};
    const GridFunction gw = sample_gauss(specimen_v(), other);
    CHECK_THROWS_AS(weyl_product_fft(gu, gw, 0.5, phase), std::invalid_argument);

    // Frequency-form input.
    const GridFunction guh = partial_fourier_z(gu);
    CHECK_THROWS_AS(weyl_product_fft(guh, guh, 0.5, phase), std::invalid_argument);
    CHECK_THROWS_AS(moyal_series(guh, guh, phase, 2), std::invalid_argument);

    // Bad deformation scale and truncation order.
    CHECK_THROWS_AS(weyl_product_fft(gu, gu, 0.0, phase), std::invalid_argument);
    CHECK_THROWS_AS(moyal_series(gu, gu, phase, 9), std::invalid_argument);

    // The direct route requires the normalized pairing.
    WeylPhase skew;
    skew.J = Mat::Zero(2, 2);
    skew.J(0, 1) = 2.0;
    skew.J(1, 0) = -2.0;
    Vec c = Vec::Zero(2), k = Vec::Constant(2, 1.0), at = Vec::Zero(2);
    const AnalyticFunction f = analytic_of(GaussSum::gaussian(2, c, k), 1.0, c);
    CHECK_THROWS_AS(
        weyl_product_direct(f, f, 0.5, at, skew, DeformationParams::for_hbar(0.5)),
        std::invalid_argument);
}

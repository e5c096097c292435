// Deformation-transform layer: the frequency-side coordinate maps, the
// reparametrized z-line transform and its inverse, the full deformation pair
// T/tau with middle-axis rescaling, convergence rates toward the flat limit,
// linearity, diagnostics, and input validation.

#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "anstar/analytic.hpp"
#include "anstar/fourier.hpp"
#include "anstar/grid.hpp"
#include "anstar/transforms.hpp"

using namespace anstar;

namespace {

GridFunction sample_gauss(const GaussSum& g, std::vector<Axis> axes, int z_axis) {
    return sample_grid(std::move(axes), z_axis, [&](const Vec& p) { return g.eval(p); });
}

// Largest deviation of grid samples from a closed-form reference, over all
// nodes of g.
double max_err_vs(const GridFunction& g, const std::function<cplx(const Vec&)>& exact) {
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(g.values[i] - exact(g.point(i))));
    return worst;
}

// Two-axis specimen (a, z): spectator first axis, transformable last axis.
// Resolved to ~1e-14 on a (half 6, 16) x (half 12, 128) grid.
GaussSum specimen_az() {
    Vec c(2), k(2), f(2);
    c << 0.3, -0.4;
    k << 0.8, 1.1;
    f << 0.2, 1.0;
    return GaussSum::modulated_gaussian(2, c, k, f, cplx(0.9, -0.4));
}

std::vector<Axis> axes_az() {
    return {centered_axis(6.0, 16), centered_axis(12.0, 128)};
}

}  // namespace

TEST_CASE("frequency-side point maps match the closed forms and invert") {
    // Pinned reference values for the map at hbar = 1.
    Vec p(3);
    p << 0.0, 2.0, 1.0;
    const Vec q = phi_point(p, 1.0);
    CHECK(std::abs(q(0) - 0.0) < 1e-15);
    CHECK(std::abs(q(1) - 1.7736377679401483) < 1e-12);
    CHECK(std::abs(q(2) - 1.1752011936438014) < 1e-12);

    // Round trips in both orders, several dimensions and deformation scales.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int dim : {2, 3, 4}) {
        for (double h : {0.2, 0.7, 1.3}) {
            for (int rep = 0; rep < 50; ++rep) {
                Vec r(dim);
                for (int i = 0; i < dim; ++i) r(i) = unif(rng);
                const Vec back = phi_inverse_point(phi_point(r, h), h);
                const Vec fwd = phi_point(phi_inverse_point(r, h), h);
                CHECK((back - r).cwiseAbs().maxCoeff() < 1e-13);
                CHECK((fwd - r).cwiseAbs().maxCoeff() < 1e-13);
            }
        }
    }
}

TEST_CASE("pullback preserves the zero-frequency slice") {
    // At xi = 0 the coordinate map is the identity, so the pulled-back grid
    // must reproduce the input slice there exactly (up to round trips through
    // the uniform transform).
    Vec c(3), k(3), f(3);
    c << 0.2, -0.3, 0.1;
    k << 1.0, 1.5, 1.0;
    f << 0.0, 0.4, 0.8;
    const GaussSum u = GaussSum::modulated_gaussian(3, c, k, f, cplx(0.7, 0.2));
    const GridFunction us =
        sample_gauss(u, {centered_axis(4.0, 5), centered_axis(6.0, 16), centered_axis(10.0, 64)}, 2);
    const GridFunction uhat = partial_fourier_z(us);

    const DeformationParams par = DeformationParams::for_hbar(0.5);
    const GridFunction ph = phi_pullback(uhat, par);

    REQUIRE(ph.axes[2].count == uhat.axes[2].count);
    const int mid = uhat.axes[2].count / 2;
    REQUIRE(uhat.axes[2].coord(mid) == 0.0);
    double worst = 0.0;
    for (int ia = 0; ia < 5; ++ia)
        for (int ix = 0; ix < 16; ++ix) {
            const std::vector<int> idx = {ia, ix, mid};
            worst = std::max(worst, std::abs(ph.at(idx) - uhat.at(idx)));
        }
    CHECK(worst < 1e-12 * uhat.max_abs());
}

TEST_CASE("deformation and its inverse cancel on a two-axis grid") {
    const GaussSum u = specimen_az();
    for (double h : {0.125, 0.25}) {
        const DeformationParams par = DeformationParams::for_hbar(h);
        const GridFunction us = sample_gauss(u, axes_az(), 1);
        const GridFunction round = t_hbar(tau_hbar(us, par), par);
        // tau refines the z axis, so compare against the closed form on the
        // output nodes rather than against the input grid.
        CHECK(round.axes[1].count >= 128);
        CHECK(max_err_vs(round, [&](const Vec& p) { return u.eval(p); }) < 1e-8);
    }
}

TEST_CASE("deformation round trip with middle-axis scaling") {
    // Four-axis chart (a, x1, x2, z) with an odd spectator count: exercises
    // the slabwise rescaling of the middle axes in both directions.
    // The inverse direction compresses the middle axes (their spectra widen by
    // the squared expansion factor), so those axes need headroom beyond what
    // the input alone requires: 64 nodes over half-width 5.5 here.
    Vec c(4), k(4), f(4);
    c << 0.5, -0.3, 0.25, -0.3;
    k << 1.5, 2.2, 2.0, 0.8;
    f << 0.0, 0.0, 0.3, 0.8;
    const GaussSum u = GaussSum::modulated_gaussian(4, c, k, f, cplx(1.0, 0.5));
    const std::vector<Axis> axes = {centered_axis(4.0, 5), centered_axis(5.5, 64),
                                    centered_axis(5.5, 64), centered_axis(10.0, 64)};
    const DeformationParams par = DeformationParams::for_hbar(0.2);
    const GridFunction us = sample_gauss(u, axes, 3);
    const GridFunction round = t_hbar(tau_hbar(us, par), par);
    CHECK(max_err_vs(round, [&](const Vec& p) { return u.eval(p); }) < 1e-8);
}

TEST_CASE("z-side reparametrized transform matches the exact line transform") {
    Vec c(2), k(2), f(2);
    c << 0.1, 0.2;
    k << 1.2, 1.0;
    f << 0.0, 0.5;
    const GaussSum u = GaussSum::modulated_gaussian(2, c, k, f, cplx(0.8, -0.1));
    const GaussSum uhat = u.partial_fourier(1, -1, 1.0);
    const std::vector<Axis> axes = {centered_axis(4.0, 8), centered_axis(12.0, 128)};
    const GridFunction us = sample_gauss(u, axes, 1);
    const double window = pi / axes[1].spacing;

    for (double h : {0.25, 0.5}) {
        const DeformationParams par = DeformationParams::for_hbar(h);
        const GridFunction g = z_transform(us, par);
        // Nodes whose warped target leaves the resolved band are zeroed; the
        // closed form is itself negligible there, so the mask is harmless.
        const double err = max_err_vs(g, [&](const Vec& p) -> cplx {
            const double eta = std::sinh(h * p(1)) / h;
            if (eta < -window || eta >= window) {
                Vec w(2);
                w << p(0), eta;
                CHECK(std::abs(uhat.eval(w)) < 1e-10);
                return cplx(0.0);
            }
            Vec w(2);
            w << p(0), eta;
            return uhat.eval(w);
        });
        CHECK(err < 1e-8);
    }
}

TEST_CASE("reparametrized inverse recovers the input") {
    const GaussSum u = specimen_az();
    const GridFunction us = sample_gauss(u, axes_az(), 1);
    const double scale = us.max_abs();

    {
        const DeformationParams par = DeformationParams::for_hbar(0.25);
        const GridFunction back = z_inverse(z_transform(us, par), par);
        CHECK(linf_diff(back, us) < 1e-11 * scale);
    }
    for (double h : {0.2, 0.3}) {
        const DeformationParams par = DeformationParams::for_hbar(h);
        const GridFunction back = z_inverse(z_transform(us, par), par);
        CHECK(linf_diff(back, us) < 1e-8 * scale);
    }
}

TEST_CASE("reparametrized transform approaches the straight transform quadratically") {
    // On a fixed central band the warped transform deviates from the straight
    // one at second order in the deformation scale.
    Vec c(1), k(1);
    c << 0.2;
    k << 1.0;
    const GaussSum u = GaussSum::gaussian(1, c, k, cplx(1.0, 0.0));
    const GaussSum uhat = u.partial_fourier(0, -1, 1.0);
    const std::vector<Axis> axes = {centered_axis(14.0, 256)};
    const GridFunction us = sample_gauss(u, axes, 0);

    const std::vector<double> hs = {0.2, 0.1, 0.05, 0.025};
    std::vector<double> errs;
    for (double h : hs) {
        const DeformationParams par = DeformationParams::for_hbar(h);
        const GridFunction g = z_transform(us, par);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec p = g.point(i);
            if (std::abs(p(0)) > 2.0) continue;
            worst = std::max(worst, std::abs(g.values[i] - uhat.eval(p)));
        }
        errs.push_back(worst);
    }
    const double slope = loglog_slope(hs, errs);
    CHECK(slope > 1.7);
    CHECK(slope < 2.3);
}

TEST_CASE("deformation approaches the identity quadratically") {
    Vec c(3), k(3), f(3);
    c << 0.2, -0.3, 0.1;
    k << 1.0, 2.2, 0.8;
    f << 0.0, 0.0, 0.6;
    const GaussSum u = GaussSum::modulated_gaussian(3, c, k, f, cplx(1.0, 0.0));
    const std::vector<Axis> axes = {centered_axis(3.0, 5), centered_axis(5.0, 32),
                                    centered_axis(10.0, 64)};
    const GridFunction us = sample_gauss(u, axes, 2);

    const std::vector<double> hs = {0.3, 0.15, 0.075};
    std::vector<double> errs;
    for (double h : hs) {
        const DeformationParams par = DeformationParams::for_hbar(h);
        errs.push_back(linf_diff(t_hbar(us, par), us));
    }
    const double slope = loglog_slope(hs, errs);
    CHECK(slope > 1.7);
    CHECK(slope < 2.3);
}

TEST_CASE("transforms are linear with a pinned enlargement") {
    Vec c1(2), k1(2), f1(2);
    c1 << 0.3, -0.4;
    k1 << 0.8, 1.1;
    f1 << 0.2, 1.0;
    const GaussSum u = GaussSum::modulated_gaussian(2, c1, k1, f1, cplx(1.0, 0.0));
    Vec c2(2), k2(2), f2(2);
    c2 << -0.2, 0.5;
    k2 << 1.2, 0.9;
    f2 << 0.0, -0.7;
    const GaussSum v = GaussSum::modulated_gaussian(2, c2, k2, f2, cplx(0.4, 0.6));

    const GridFunction ug = sample_gauss(u, axes_az(), 1);
    const GridFunction vg = sample_gauss(v, axes_az(), 1);
    const cplx alpha(0.7, -0.2), beta(-0.3, 0.5);
    GridFunction wg = ug;
    for (std::size_t i = 0; i < wg.size(); ++i)
        wg.values[i] = alpha * ug.values[i] + beta * vg.values[i];

    DeformationParams par = DeformationParams::for_hbar(0.3);
    par.tau_enlarged_count = 256;  // identical output shape for all three inputs

    for (auto* op : {&tau_hbar, &t_hbar}) {
        const GridFunction ou = op(ug, par, nullptr);
        const GridFunction ov = op(vg, par, nullptr);
        const GridFunction ow = op(wg, par, nullptr);
        GridFunction combo = ou;
        for (std::size_t i = 0; i < combo.size(); ++i)
            combo.values[i] = alpha * ou.values[i] + beta * ov.values[i];
        CHECK(linf_diff(ow, combo) < 1e-12 * ow.max_abs());
    }
}

TEST_CASE("deformed functions stay bounded against polynomial weight") {
    const GaussSum u = specimen_az();
    const GridFunction us = sample_gauss(u, axes_az(), 1);
    const DeformationParams par = DeformationParams::for_hbar(0.4);
    const GridFunction g = t_hbar(us, par);
    double weighted = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double n2 = g.point(i).squaredNorm();
        weighted = std::max(weighted, std::abs(g.values[i]) * (1.0 + n2) * (1.0 + n2));
    }
    CHECK(std::isfinite(weighted));
    CHECK(weighted > 0.0);
    MESSAGE("weighted sup of the deformed specimen: ", weighted);
}

TEST_CASE("diagnostics report boundary mass, band edge and enlargement") {
    const DeformationParams par = DeformationParams::for_hbar(0.25);

    // Well-resolved input: negligible boundary and spectrum-edge mass, and the
    // enlarged axis is at least as fine as the input.
    Vec ct(2), kt(2);
    ct << 0.0, 0.0;
    kt << 2.0, 1.1;
    const GridFunction tight = sample_gauss(GaussSum::gaussian(2, ct, kt), axes_az(), 1);
    TransformDiagnostics dt;
    (void)tau_hbar(tight, par, &dt);
    CHECK(dt.input_boundary_ratio < 1e-12);
    CHECK(dt.spectrum_edge_ratio < 1e-12);
    CHECK(dt.band_limit > 0.0);
    CHECK(dt.enlarged_count >= 128);

    TransformDiagnostics df;
    (void)t_hbar(tight, par, &df);
    CHECK(df.input_boundary_ratio < 1e-12);
    CHECK(df.enlarged_count == 128);
    CHECK(df.band_limit == doctest::Approx(pi / axes_az()[1].spacing));

    // Wide input: visible mass on the box faces.
    Vec cw(2), kw(2);
    cw << 0.0, 0.0;
    kw << 0.8, 0.02;
    const GridFunction wide = sample_gauss(GaussSum::gaussian(2, cw, kw), axes_az(), 1);
    TransformDiagnostics dw;
    (void)t_hbar(wide, par, &dw);
    CHECK(dw.input_boundary_ratio > 1e-3);

    // Narrow input: visible spectrum at the band edge.
    Vec kn(2);
    kn << 0.8, 50.0;
    const GridFunction narrow = sample_gauss(GaussSum::gaussian(2, cw, kn), axes_az(), 1);
    TransformDiagnostics dn;
    (void)t_hbar(narrow, par, &dn);
    CHECK(dn.spectrum_edge_ratio > 1e-3);
}

TEST_CASE("bad transform inputs are rejected") {
    const GridFunction us = sample_gauss(specimen_az(), axes_az(), 1);
    const GridFunction uhat = partial_fourier_z(us);
    const DeformationParams par = DeformationParams::for_hbar(0.25);

    CHECK_THROWS_AS((void)z_transform(uhat, par), std::invalid_argument);
    CHECK_THROWS_AS((void)t_hbar(uhat, par), std::invalid_argument);
    CHECK_THROWS_AS((void)phi_pullback(us, par), std::invalid_argument);
    CHECK_THROWS_AS((void)phi_inverse_pullback(us, par), std::invalid_argument);
    CHECK_THROWS_AS((void)z_inverse(us, par), std::invalid_argument);

    DeformationParams bad_interp = par;
    bad_interp.interpolation_order = 2;
    CHECK_THROWS_AS((void)t_hbar(us, bad_interp), std::invalid_argument);

    DeformationParams bad_pin = par;
    bad_pin.tau_enlarged_count = 100;
    CHECK_THROWS_AS((void)tau_hbar(us, bad_pin), std::invalid_argument);
    bad_pin.tau_enlarged_count = 64;  // smaller than the 128-node z axis
    CHECK_THROWS_AS((void)tau_hbar(us, bad_pin), std::invalid_argument);

    CHECK_THROWS_AS((void)DeformationParams::for_hbar(0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS((void)DeformationParams::for_hbar(0.5).chart_axes(), std::invalid_argument);

    Vec tiny(1);
    tiny << 0.3;
    CHECK_THROWS_AS((void)phi_point(tiny, 0.5), std::invalid_argument);

    // A deformation scale so large that the enlarged axis would blow past the
    // hard cap must fail loudly instead of allocating.
    CHECK_THROWS_AS((void)tau_hbar(us, DeformationParams::for_hbar(3.0)), std::runtime_error);
}

TEST_CASE("pullback pair cancels on the common band") {
    Vec c(2), k(2), f(2);
    c << 0.1, 0.2;
    k << 1.0, 1.0;
    f << 0.0, 0.4;
    const GaussSum u = GaussSum::modulated_gaussian(2, c, k, f, cplx(0.9, 0.3));
    const GaussSum uhat_exact = u.partial_fourier(1, -1, 1.0);
    const std::vector<Axis> axes = {centered_axis(3.0, 4), centered_axis(12.0, 128)};
    const GridFunction us = sample_gauss(u, axes, 1);
    const GridFunction uhat = partial_fourier_z(us);

    const DeformationParams par = DeformationParams::for_hbar(0.25);
    const GridFunction w = phi_pullback(phi_inverse_pullback(uhat, par), par);

    const double band = 0.9 * uhat.axes[1].half_width();
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Vec p = w.point(i);
        if (std::abs(p(1)) > band) continue;
        worst = std::max(worst, std::abs(w.values[i] - uhat_exact.eval(p)));
    }
    CHECK(worst < 1e-8);
}

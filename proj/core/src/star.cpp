#include "anstar/star.hpp"

#include <algorithm>
#include <cmath>

#include "anstar/fourier.hpp"
#include "anstar/moment.hpp"

namespace anstar {

namespace {

// x-block pairing u^T W v for a chart-ordered Gram matrix.
double pair_x(const Mat& W, const Vec& u, const Vec& v) {
    if (W.rows() == 0) return 0.0;
    return u.dot(W * v);
}

void check_point_dim(const IwasawaPoint& p, int n, const char* who) {
    require(int(p.x.size()) == 2 * n - 2, std::string(who) + ": point dimension mismatch");
}

}  // namespace

InvariantKernel InvariantKernel::from_algebra(const LieAlgebraData& L, double hbar,
                                              double calibration) {
    require(hbar > 0.0, "InvariantKernel: hbar must be positive");
    InvariantKernel k;
    k.n = L.n;
    k.hbar = hbar;
    k.omega_x = origin_form(L).omega_alpha;
    k.calibration = calibration;
    return k;
}

KernelValue InvariantKernel::eval(const IwasawaPoint& p0, const IwasawaPoint& p1,
                                  const IwasawaPoint& p2) const {
    check_point_dim(p0, n, "InvariantKernel::eval");
    check_point_dim(p1, n, "InvariantKernel::eval");
    check_point_dim(p2, n, "InvariantKernel::eval");
    const double d01 = p0.a - p1.a, d12 = p1.a - p2.a, d20 = p2.a - p0.a;

    KernelValue out;
    out.phase = 0.5 * (std::sinh(2.0 * d01) * p2.z + std::sinh(2.0 * d12) * p0.z +
                       std::sinh(2.0 * d20) * p1.z);
    out.amplitude = std::cosh(2.0 * d12);
    if (n > 1) {
        const double c0 = std::cosh(d12), c1 = std::cosh(d20), c2 = std::cosh(d01);
        const Vec y0 = c0 * p0.x, y1 = c1 * p1.x, y2 = c2 * p2.x;
        out.phase -= pair_x(omega_x, y0, y1) + pair_x(omega_x, y1, y2) + pair_x(omega_x, y2, y0);
        out.amplitude *= std::pow(c1 * c2, 2.0 * n - 2.0);
    }
    return out;
}

double InvariantKernel::normalization() const {
    return calibration * std::pow(pi * hbar, -2.0 * n);
}

KernelValue kernel_eval(const IwasawaPoint& p0, const IwasawaPoint& p1, const IwasawaPoint& p2,
                        double hbar) {
    require(hbar > 0.0, "kernel_eval: hbar must be positive");
    const int dx = int(p0.x.size());
    require(dx % 2 == 0, "kernel_eval: x block must have even dimension");
    InvariantKernel k;
    k.n = dx / 2 + 1;
    k.hbar = hbar;
    k.omega_x = Mat::Zero(dx, dx);
    for (int i = 0; i + 1 < dx; i += 2) {
        k.omega_x(i, i + 1) = 1.0;
        k.omega_x(i + 1, i) = -1.0;
    }
    return k.eval(p0, p1, p2);
}

GridFunction star_compositional(const LieAlgebraData& L, const GridFunction& u,
                                const GridFunction& v, const DeformationParams& par,
                                StarDiagnostics* diag) {
    require(u.dim() == L.r_dim, "star_compositional: grid dimension does not match the algebra");
    const WeylPhase phase = WeylPhase::from_form(origin_form(L));
    TransformDiagnostics dl, dr, dt;
    TwistedProductInfo info;
    const GridFunction tu = t_hbar(u, par, diag ? &dl : nullptr);
    const GridFunction tv = t_hbar(v, par, diag ? &dr : nullptr);
    const GridFunction flat = weyl_product_fft(tu, tv, par.hbar, phase, diag ? &info : nullptr);
    GridFunction out = tau_hbar(flat, par, diag ? &dt : nullptr);
    if (diag) {
        diag->lift_left = dl;
        diag->lift_right = dr;
        diag->flat = info;
        diag->descend = dt;
    }
    return out;
}

namespace {

struct Rule {
    std::vector<double> nodes, weights;
};

Rule make_rule(int q, double lo, double hi) {
    Rule r;
    gauss_legendre(q, lo, hi, r.nodes, r.weights);
    return r;
}

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool empty() const { return !(hi > lo); }
    double half_width() const { return 0.5 * (hi - lo); }
    double max_abs() const { return std::max(std::abs(lo), std::abs(hi)); }
};

// Half-band of the z-line transform of a factor with the stated envelope:
// where exp(-sigma^2 / (4 c)) falls to thr.
double envelope_band(double decay_c, double thr) {
    return 2.0 * std::sqrt(decay_c * std::log(1.0 / thr));
}

// Admissible sigma range: the carrier factor enters through its z-line
// transform at frequency sigma (enveloped by its Gaussian width), while the
// partner factor is evaluated at the substituted position
// a = a0 - arcsinh(hbar sigma) / 2, so the partner's a-support bounds sigma
// from the other side.
Interval sigma_interval(const AnalyticFunction& carrier, const AnalyticFunction& partner,
                        double a0, double hbar, double thr) {
    const double band = envelope_band(carrier.decay_c, thr);
    const double ra = box_for_decay(partner.decay_c, 0.0, thr);
    const double ca = partner.decay_center(0);
    Interval s;
    s.lo = std::max(std::sinh(2.0 * (a0 - ca - ra)) / hbar, -band);
    s.hi = std::min(std::sinh(2.0 * (a0 - ca + ra)) / hbar, band);
    return s;
}

// Rule order for an oscillatory integral of a Gaussian-enveloped integrand:
// linear phase-resolution term plus the envelope-decay term.
int rule_order(double osc_rate, double half_width, double kappa, double thr, int floor_q,
               int cap_q) {
    const double big = std::log(1.0 / thr);
    const double q = 0.5 * osc_rate * half_width +
                     2.0 * std::sqrt(std::max(kappa, 0.0) * half_width * half_width * big);
    return std::clamp(int(std::ceil(q)) + 8, floor_q, cap_q);
}

// Largest |a - a0| the substitution reaches over a sigma interval.
double max_a_offset(const Interval& s, double hbar) {
    return 0.5 * std::asinh(hbar * s.max_abs());
}

struct DirectSetup {
    double hbar = 0.0, thr = 0.0, calib = 1.0;
    double a0 = 0.0, z0 = 0.0;
    Vec x0;
    Interval s1, s2;  // sigma1 (left-factor frequency), sigma2 (right-factor frequency)
};

// Substituted positions and measure factors at the nodes of one sigma rule.
struct SigmaNodes {
    std::vector<double> partner_a, jac;
};

SigmaNodes substitute(const Rule& r, double a0, double hbar) {
    SigmaNodes s;
    s.partner_a.resize(r.nodes.size());
    s.jac.resize(r.nodes.size());
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double hs = hbar * r.nodes[i];
        s.partner_a[i] = a0 - 0.5 * std::asinh(hs);
        s.jac[i] = 1.0 / std::sqrt(1.0 + hs * hs);
    }
    return s;
}

// n = 1 pass: the two z-line transforms are tabulated on the sigma rules
// (closed forms when both factors carry the exact payload, inner
// Gauss-Legendre z integrals otherwise) and contracted against the
// substituted measure, amplitude and residual z0 oscillation.
cplx direct_pass_n1(const AnalyticFunction& u, const AnalyticFunction& v, const DirectSetup& c,
                    int q_sigma, int scale) {
    const Rule r1 = make_rule(q_sigma * scale, c.s1.lo, c.s1.hi);
    const Rule r2 = make_rule(q_sigma * scale, c.s2.lo, c.s2.hi);
    const SigmaNodes n1 = substitute(r1, c.a0, c.hbar);  // partner positions a2(sigma1)
    const SigmaNodes n2 = substitute(r2, c.a0, c.hbar);  // partner positions a1(sigma2)
    const std::size_t m1 = r1.nodes.size(), m2 = r2.nodes.size();

    Eigen::MatrixXcd U(m2, m1), V(m1, m2);
    if (u.exact && v.exact) {
        const GaussSum uh = u.exact->partial_fourier(1, -1, 1.0);
        const GaussSum vh = v.exact->partial_fourier(1, -1, 1.0);
        Vec p(2);
        for (std::size_t i = 0; i < m2; ++i)
            for (std::size_t j = 0; j < m1; ++j) {
                p << n2.partner_a[i], r1.nodes[j];
                U(Eigen::Index(i), Eigen::Index(j)) = uh.eval(p);
            }
        for (std::size_t j = 0; j < m1; ++j)
            for (std::size_t i = 0; i < m2; ++i) {
                p << n1.partner_a[j], -r2.nodes[i];
                V(Eigen::Index(j), Eigen::Index(i)) = vh.eval(p);
            }
    } else {
        auto table = [&](const AnalyticFunction& f, const std::vector<double>& rows,
                         const Interval& band) {
            const double rz = box_for_decay(f.decay_c, 0.0, c.thr);
            const double cz = f.decay_center(1);
            const int qz =
                rule_order(band.max_abs(), rz, f.decay_c, c.thr, 24, 320) * scale;
            const Rule zr = make_rule(qz, cz - rz, cz + rz);
            Eigen::MatrixXcd samples(rows.size(), zr.nodes.size());
            Vec p(2);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t k = 0; k < zr.nodes.size(); ++k) {
                    p << rows[i], zr.nodes[k];
                    samples(Eigen::Index(i), Eigen::Index(k)) = f.eval(p);
                }
            return std::pair<Eigen::MatrixXcd, Rule>(std::move(samples), zr);
        };
        {
            auto [su, zr] = table(u, n2.partner_a, c.s1);
            Eigen::MatrixXcd E(zr.nodes.size(), m1);
            for (std::size_t k = 0; k < zr.nodes.size(); ++k)
                for (std::size_t j = 0; j < m1; ++j)
                    E(Eigen::Index(k), Eigen::Index(j)) =
                        zr.weights[k] * std::exp(cplx(0.0, -r1.nodes[j] * zr.nodes[k]));
            U = su * E;
        }
        {
            auto [sv, zr] = table(v, n1.partner_a, c.s2);
            Eigen::MatrixXcd E(zr.nodes.size(), m2);
            for (std::size_t k = 0; k < zr.nodes.size(); ++k)
                for (std::size_t i = 0; i < m2; ++i)
                    E(Eigen::Index(k), Eigen::Index(i)) =
                        zr.weights[k] * std::exp(cplx(0.0, r2.nodes[i] * zr.nodes[k]));
            V = sv * E;
        }
    }

    cplx acc(0.0);
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m1; ++j) {
            const double da = n2.partner_a[i] - n1.partner_a[j];  // a1 - a2
            const double w =
                r2.weights[i] * r1.weights[j] * n2.jac[i] * n1.jac[j] * std::cosh(2.0 * da);
            acc += w * std::exp(cplx(0.0, std::sinh(2.0 * da) * c.z0 / c.hbar)) *
                   U(Eigen::Index(i), Eigen::Index(j)) * V(Eigen::Index(j), Eigen::Index(i));
        }
    return acc * (c.calib / (4.0 * pi * pi));
}

// n = 2 probe pass: the x1 integral is absorbed into the full transform of
// the left factor evaluated at K = (2/hbar) c1 J (c2 x2 - c0 x0); the x2
// integral runs over the right factor's box against the residual coupling
// exp(-(2i/hbar) c0 c2 omega(x2, x0)).  Deliberately coarse: isolated probe
// points only.
cplx direct_pass_n2(const AnalyticFunction& u, const AnalyticFunction& v, const DirectSetup& c,
                    int q_sigma, int q_x, int scale) {
    const Rule r1 = make_rule(q_sigma * scale, c.s1.lo, c.s1.hi);
    const Rule r2 = make_rule(q_sigma * scale, c.s2.lo, c.s2.hi);
    const SigmaNodes n1 = substitute(r1, c.a0, c.hbar);
    const SigmaNodes n2 = substitute(r2, c.a0, c.hbar);

    const GaussSum ucheck = u.exact->partial_fourier(1, -1, 1.0)
                                .partial_fourier(2, -1, 1.0)
                                .partial_fourier(3, -1, 1.0);
    const GaussSum vzh = v.exact->partial_fourier(3, -1, 1.0);

    const double rx = box_for_decay(v.decay_c, 0.0, c.thr);
    const Rule rxa = make_rule(q_x * scale, v.decay_center(1) - rx, v.decay_center(1) + rx);
    const Rule rxb = make_rule(q_x * scale, v.decay_center(2) - rx, v.decay_center(2) + rx);

    cplx acc(0.0);
    Vec pu(4), pv(4);
    for (std::size_t i = 0; i < r2.nodes.size(); ++i)
        for (std::size_t j = 0; j < r1.nodes.size(); ++j) {
            const double a1 = n2.partner_a[i], a2 = n1.partner_a[j];
            const double da = a1 - a2;
            const double c0 = std::cosh(da), c1 = std::cosh(a2 - c.a0), c2 = std::cosh(c.a0 - a1);
            const double w = r2.weights[i] * r1.weights[j] * n2.jac[i] * n1.jac[j] *
                             std::cosh(2.0 * da) * (c1 * c2) * (c1 * c2);
            cplx inner(0.0);
            for (std::size_t m = 0; m < rxa.nodes.size(); ++m)
                for (std::size_t l = 0; l < rxb.nodes.size(); ++l) {
                    const double xa = rxa.nodes[m], xb = rxb.nodes[l];
                    const double wa = c2 * xa - c0 * c.x0(0), wb = c2 * xb - c0 * c.x0(1);
                    pu << a1, (2.0 / c.hbar) * c1 * wb, -(2.0 / c.hbar) * c1 * wa, r1.nodes[j];
                    pv << a2, xa, xb, -r2.nodes[i];
                    const double xphase =
                        -(2.0 / c.hbar) * c0 * c2 * (xa * c.x0(1) - xb * c.x0(0));
                    inner += rxa.weights[m] * rxb.weights[l] * ucheck.eval(pu) * vzh.eval(pv) *
                             std::exp(cplx(0.0, xphase));
                }
            acc += w * std::exp(cplx(0.0, std::sinh(2.0 * da) * c.z0 / c.hbar)) * inner;
        }
    const double hh = pi * c.hbar;
    return acc * (c.calib / (4.0 * pi * pi) / (hh * hh));
}

}  // namespace

cplx star_kernel_direct(const LieAlgebraData& L, const AnalyticFunction& u,
                        const AnalyticFunction& v, double hbar, const IwasawaPoint& at,
                        const DeformationParams& par, double conv_tol, double* refine_delta) {
    const int n = L.n, d = L.r_dim;
    require(hbar > 0.0, "star_kernel_direct: hbar must be positive");
    require(n == 1 || n == 2, "star_kernel_direct: quadrature supports n = 1 and n = 2");
    require(u.dim == d && v.dim == d, "star_kernel_direct: factor dimension mismatch");
    check_point_dim(at, n, "star_kernel_direct");
    require(bool(u.eval) && bool(v.eval), "star_kernel_direct: factors need evaluators");
    require(u.decay_c > 0.0 && v.decay_c > 0.0 && int(u.decay_center.size()) == d &&
                int(v.decay_center.size()) == d,
            "star_kernel_direct: factors need decay envelopes");
    require(par.band_threshold > 0.0 && par.band_threshold <= 1e-6,
            "star_kernel_direct: band threshold out of range");
    if (n == 2)
        require(u.exact && v.exact,
                "star_kernel_direct: the n = 2 probe quadrature needs the closed-form "
                "transform payload on both factors");

    DirectSetup c;
    c.hbar = hbar;
    c.thr = par.band_threshold;
    c.calib = par.kernel_calibration;
    c.a0 = at.a;
    c.z0 = at.z;
    c.x0 = at.x;
    c.s1 = sigma_interval(u, v, at.a, hbar, c.thr);
    c.s2 = sigma_interval(v, u, at.a, hbar, c.thr);
    if (c.s1.empty() || c.s2.empty()) {
        if (refine_delta) *refine_delta = 0.0;
        return cplx(0.0);
    }

    // The z0 phase rate per unit sigma stays below |z0| e^{2 max|a1 - a0|}
    // after the substitution; the factors' own z centers modulate on top.
    const double reach = std::exp(2.0 * std::max(max_a_offset(c.s1, hbar), max_a_offset(c.s2, hbar)));
    const double rate = std::abs(at.z) * reach +
                        std::max(std::abs(u.decay_center(d - 1)), std::abs(v.decay_center(d - 1)));
    int q1 = 0, qx = 0;
    if (n == 1) {
        const double half = std::max(c.s1.half_width(), c.s2.half_width());
        const double kappa_sigma = 0.25 / std::min(u.decay_c, v.decay_c);
        q1 = rule_order(rate, half, kappa_sigma, c.thr, std::max(par.quadrature_order, 48), 768);
    } else {
        // Coarse by design: probe points only.
        q1 = std::clamp(par.quadrature_order, 24, 48);
        const double chmax = std::cosh(max_a_offset(c.s1, hbar) + max_a_offset(c.s2, hbar));
        const double xrate = (2.0 / hbar) * chmax * chmax *
                             (c.x0.lpNorm<Eigen::Infinity>() +
                              u.decay_center.segment(1, 2).lpNorm<Eigen::Infinity>());
        const double rx = box_for_decay(v.decay_c, 0.0, c.thr);
        qx = rule_order(xrate, rx, v.decay_c, c.thr, 24, 56);
    }

    const cplx coarse = n == 1 ? direct_pass_n1(u, v, c, q1, 1) : direct_pass_n2(u, v, c, q1, qx, 1);
    if (conv_tol <= 0.0 && refine_delta == nullptr) return coarse;

    const cplx fine = n == 1 ? direct_pass_n1(u, v, c, q1, 2) : direct_pass_n2(u, v, c, q1, qx, 2);
    const double delta = std::abs(fine - coarse);
    if (refine_delta) *refine_delta = delta;
    if (conv_tol > 0.0)
        ensure(delta <= conv_tol,
               "star_kernel_direct: doubling the quadrature order changed the value beyond "
               "the requested tolerance");
    return fine;
}

double calibrate_kernel(const LieAlgebraData& L, const DeformationParams& par) {
    const int d = L.r_dim;
    require(int(par.box_half.size()) == d, "calibrate_kernel: parameter dimension mismatch");

    // Fixed Gaussian pair and interior probe; the measured ratio is the
    // residual constant the direct kernel needs on top of (pi hbar)^{-2n}.
    Vec cu(d), cv(d), ku(d), kv(d), probe(d);
    for (int k = 0; k < d; ++k) {
        cu(k) = 0.22 - 0.09 * k;
        cv(k) = -0.17 + 0.08 * k;
        ku(k) = 1.0 + 0.05 * k;
        kv(k) = 1.1 - 0.04 * k;
        probe(k) = 0.15 - 0.05 * k;
    }
    const GaussSum gu = GaussSum::gaussian(d, cu, ku);
    const GaussSum gv = GaussSum::gaussian(d, cv, kv);

    const GridFunction Gu =
        sample_grid(par.chart_axes(), d - 1, [&](const Vec& p) { return gu.eval(p); });
    const GridFunction Gv =
        sample_grid(par.chart_axes(), d - 1, [&](const Vec& p) { return gv.eval(p); });
    const GridFunction prod = star_compositional(L, Gu, Gv, par);
    const cplx reference = SpectralEvaluator(prod)(probe);

    DeformationParams raw = par;
    raw.kernel_calibration = 1.0;
    const AnalyticFunction au = make_analytic(gu, 1.0, ku.minCoeff(), cu);
    const AnalyticFunction av = make_analytic(gv, 1.0, kv.minCoeff(), cv);
    const cplx direct =
        star_kernel_direct(L, au, av, par.hbar, point_from_coords(probe), raw);
    ensure(std::abs(direct) > 1e-10 && std::abs(reference) > 1e-10,
           "calibrate_kernel: probe value too small to calibrate against");
    return (reference / direct).real();
}

GridFunction bullet_product(const GridFunction& f, const GridFunction& g,
                            const DeformationParams& par) {
    require(f.dim() == g.dim(), "bullet_product: factor dimensions differ");
    for (int a = 0; a < f.dim(); ++a) {
        const Axis &fa = f.axes[std::size_t(a)], &ga = g.axes[std::size_t(a)];
        require(fa.count == ga.count && approx_eq(fa.origin, ga.origin, 1e-12) &&
                    approx_eq(fa.spacing, ga.spacing, 1e-12) && fa.frequency == ga.frequency,
                "bullet_product: factors must share a grid");
    }
    GridFunction w = z_inverse(f, par);
    const GridFunction b = z_inverse(g, par);
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] *= b.values[i];
    return z_transform(w, par);
}

double derivation_residual(const LieAlgebraData& L, const Vec& X, const GridFunction& f,
                           const GridFunction& g, const DeformationParams& par) {
    const GridFunction both = pi_hbar(L, X, bullet_product(f, g, par), par.hbar);
    const GridFunction left = bullet_product(pi_hbar(L, X, f, par.hbar), g, par);
    const GridFunction right = bullet_product(f, pi_hbar(L, X, g, par.hbar), par);
    GridFunction defect = both;
    for (std::size_t i = 0; i < defect.values.size(); ++i)
        defect.values[i] -= left.values[i] + right.values[i];
    return l2_norm(defect);
}

double intertwine_residual(const LieAlgebraData& L, const Vec& X, const GridFunction& u,
                           const DeformationParams& par) {
    require(u.dim() == L.r_dim, "intertwine_residual: grid dimension does not match the algebra");
    const GridFunction conj = z_inverse(pi_hbar(L, X, z_transform(u, par), par.hbar), par);

    std::vector<GridFunction> partials;
    partials.reserve(std::size_t(u.dim()));
    for (int k = 0; k < u.dim(); ++k) partials.push_back(spectral_derivative(u, k, 1));

    GridFunction defect = conj;
    for (std::size_t i = 0; i < defect.values.size(); ++i) {
        const Vec field = fundamental_vector_field(L, X, point_from_coords(u.point(i)));
        cplx flow(0.0);
        for (int k = 0; k < u.dim(); ++k) flow += field(k) * partials[std::size_t(k)].values[i];
        defect.values[i] -= flow;
    }
    return l2_norm(defect);
}

namespace {

// Shift the grid along one axis by a per-line amount (constant along the
// axis itself): forward transform, modulation by exp(i xi s), inverse.
template <typename ShiftFn>
GridFunction shifted_axis(const GridFunction& u, int axis, ShiftFn&& shift) {
    GridFunction h = partial_fourier_axis(u, axis);
    for (std::size_t f = 0; f < h.values.size(); ++f) {
        const Vec p = h.point(f);
        h.values[f] *= std::exp(iunit * p(axis) * shift(p));
    }
    return inverse_partial_fourier_axis(h, axis);
}

}  // namespace

GridFunction left_translate(const IwasawaPoint& g, const GridFunction& u) {
    const int d = u.dim();
    require(d == int(g.x.size()) + 2, "left_translate: point and grid dimensions differ");
    for (int a = 0; a < d; ++a)
        require(!u.axes[std::size_t(a)].frequency, "left_translate: grid must be in position form");

    // u(gbar . p) with gbar = g^{-1}: a shifts by gbar.a, x by e^{-a} gbar.x,
    // z by e^{-2a} gbar.z + e^{-a} omega(gbar.x, x); every shift depends only
    // on coordinates that are already at their output values.
    const IwasawaPoint gb = group_inverse(g);
    GridFunction w = shifted_axis(u, 0, [&](const Vec&) { return gb.a; });
    for (int k = 1; k + 1 < d; ++k)
        w = shifted_axis(w, k, [&](const Vec& p) { return std::exp(-p(0)) * gb.x(k - 1); });
    w = shifted_axis(w, d - 1, [&](const Vec& p) {
        double s = std::exp(-2.0 * p(0)) * gb.z;
        if (d > 2) s += std::exp(-p(0)) * omega_standard(gb.x, p.segment(1, d - 2));
        return s;
    });
    return w;
}

GridFunction refine_z_axis(const GridFunction& u, int count) {
    require(u.z_axis >= 0, "refine_z_axis: grid has no designated z axis");
    const int zd = u.z_axis;
    const Axis& zax = u.axes[std::size_t(zd)];
    require(!zax.frequency, "refine_z_axis: z axis must be in position form");
    require(count >= zax.count && count % 2 == 0, "refine_z_axis: count must be even and not "
                                                  "below the current count");
    if (count == zax.count) return u;

    const GridFunction h = partial_fourier_z(u);
    const Axis& fx = h.axes[std::size_t(zd)];
    Axis big = fx;
    big.count = count;
    big.origin = -0.5 * double(count) * fx.spacing;
    std::vector<Axis> axes = h.axes;
    axes[std::size_t(zd)] = big;
    GridFunction hb = make_grid(axes, zd);

    const std::size_t off = std::size_t((count - fx.count) / 2);
    const std::size_t st = h.stride(zd), stb = hb.stride(zd);
    for_each_line(h, zd, [&](std::size_t base, std::size_t) {
        const std::size_t tbase = remap_base(h, hb, base);
        for (int k = 0; k < fx.count; ++k)
            hb.values[tbase + (off + std::size_t(k)) * stb] = h.values[base + std::size_t(k) * st];
    });
    return inverse_partial_fourier_z(hb);
}

SpectralEvaluator::SpectralEvaluator(const GridFunction& u) : hat_(fourier_all_axes(u)) {
    for (int k = 0; k < hat_.dim(); ++k) norm_ *= hat_.axes[std::size_t(k)].spacing / (2.0 * pi);
}

cplx SpectralEvaluator::operator()(const Vec& p) const {
    require(int(p.size()) == hat_.dim(), "SpectralEvaluator: point dimension mismatch");
    const int d = hat_.dim();
    std::array<std::vector<cplx>, kMaxDim> phase;
    for (int k = 0; k < d; ++k) {
        const Axis& ax = hat_.axes[std::size_t(k)];
        phase[std::size_t(k)].resize(std::size_t(ax.count));
        for (int i = 0; i < ax.count; ++i)
            phase[std::size_t(k)][std::size_t(i)] = std::exp(iunit * ax.coord(i) * p(k));
    }
    cplx acc(0.0);
    for (std::size_t f = 0; f < hat_.values.size(); ++f) {
        cplx term = hat_.values[f];
        std::size_t rest = f;
        for (int k = d - 1; k >= 0; --k) {
            const std::size_t nc = std::size_t(hat_.axes[std::size_t(k)].count);
            term *= phase[std::size_t(k)][rest % nc];
            rest /= nc;
        }
        acc += term;
    }
    return acc * norm_;
}

}  // namespace anstar

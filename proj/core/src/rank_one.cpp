#include "anstar/rank_one.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "anstar/weyl.hpp"

namespace anstar {

Vec geodesic_symmetry(const Vec& base, const Vec& p) {
    require(base.size() == 2 && p.size() == 2,
            "geodesic_symmetry: plane points have two coordinates");
    Vec s(2);
    s << 2.0 * base(0) - p(0), 2.0 * std::cosh(base(0) - p(0)) * base(1) - p(1);
    return s;
}

Mat curvature_endomorphism() {
    Mat R = Mat::Zero(2, 2);
    R(1, 0) = -1.0;
    return R;
}

Vec unterberger_map(const Vec& p) {
    require(p.size() == 2, "unterberger_map: plane points have two coordinates");
    Vec q(2);
    q << p(1) / std::cosh(p(0)), std::sinh(p(0));
    return q;
}

Vec unterberger_inverse(const Vec& q) {
    require(q.size() == 2, "unterberger_inverse: plane points have two coordinates");
    Vec p(2);
    p << std::asinh(q(1)), q(0) * std::sqrt(1.0 + q(1) * q(1));
    return p;
}

std::function<cplx(const Vec&)> unterberger_pullback(std::function<cplx(const Vec&)> f) {
    return [f = std::move(f)](const Vec& p) { return f(unterberger_map(p)); };
}

std::function<cplx(const Vec&)> unterberger_pushforward(std::function<cplx(const Vec&)> f) {
    return [f = std::move(f)](const Vec& q) { return f(unterberger_inverse(q)); };
}

Vec rank_one_action(const Vec& g, const Vec& p) {
    require(g.size() == 2 && p.size() == 2,
            "rank_one_action: plane points have two coordinates");
    Vec out(2);
    out << g(0) + p(0), std::exp(-p(0)) * g(1) + p(1);
    return out;
}

Vec rank_one_inverse(const Vec& g) {
    require(g.size() == 2, "rank_one_inverse: plane points have two coordinates");
    Vec out(2);
    out << -g(0), -std::exp(g(0)) * g(1);
    return out;
}

KernelValue rank_one_kernel(const Vec& p0, const Vec& p1, const Vec& p2) {
    require(p0.size() == 2 && p1.size() == 2 && p2.size() == 2,
            "rank_one_kernel: plane points have two coordinates");
    const double d01 = p0(0) - p1(0), d12 = p1(0) - p2(0), d20 = p2(0) - p0(0);
    KernelValue k;
    k.phase = std::sinh(d01) * p2(1) + std::sinh(d12) * p0(1) + std::sinh(d20) * p1(1);
    k.amplitude = std::cosh(d12);
    return k;
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
    bool empty() const { return !(lo < hi); }
    double half_width() const { return 0.5 * (hi - lo); }
    double max_abs() const { return std::max(std::abs(lo), std::abs(hi)); }
};

// |sigma| beyond which a Gaussian of width kappa has a line transform below thr.
double envelope_band(double kappa, double thr) {
    return 2.0 * std::sqrt(kappa * std::log(1.0 / thr));
}

int rule_order(double osc_rate, double half_width, double kappa, double thr, int floor_q,
               int cap_q) {
    const double big = std::log(1.0 / thr);
    const double q = 0.5 * osc_rate * half_width +
                     2.0 * std::sqrt(std::max(kappa, 0.0) * half_width * half_width * big);
    return std::clamp(int(std::ceil(q)) + 8, floor_q, cap_q);
}

// Admissible sigma range for the plane substitution a = a0 - arcsinh(hbar sigma / 2):
// the carrier's line-transform envelope on one side, the partner's a-support on
// the other.
Interval plane_interval(const AnalyticFunction& carrier, const AnalyticFunction& partner,
                        double a0, double hbar, double thr) {
    const double band = envelope_band(carrier.decay_c, thr);
    const double ra = box_for_decay(partner.decay_c, 0.0, thr);
    const double ca = partner.decay_center(0);
    Interval s;
    s.lo = std::max(2.0 * std::sinh(a0 - ca - ra) / hbar, -band);
    s.hi = std::min(2.0 * std::sinh(a0 - ca + ra) / hbar, band);
    return s;
}

double max_a_offset(const Interval& s, double hbar) {
    return std::asinh(0.5 * hbar * s.max_abs());
}

struct PlaneSetup {
    double hbar = 0.0, thr = 0.0, calib = 1.0;
    double a0 = 0.0, l0 = 0.0;
    Interval s1, s2;
};

struct SigmaNodes {
    std::vector<double> partner_a, jac;
};

SigmaNodes substitute(const Rule& r, double a0, double hbar) {
    SigmaNodes s;
    s.partner_a.resize(r.nodes.size());
    s.jac.resize(r.nodes.size());
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double hs = 0.5 * hbar * r.nodes[i];
        s.partner_a[i] = a0 - std::asinh(hs);
        s.jac[i] = 1.0 / std::sqrt(1.0 + hs * hs);
    }
    return s;
}

// One quadrature pass: the scheme of the chart kernel's n = 1 pass with the
// plane's single hyperbolic scale (amplitude cosh(a1 - a2), residual phase
// exp(2i sinh(a1 - a2) l0 / hbar), measure (2 pi)^{-2}).
cplx plane_pass(const AnalyticFunction& u, const AnalyticFunction& v, const PlaneSetup& c,
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
            const double rl = box_for_decay(f.decay_c, 0.0, c.thr);
            const double cl = f.decay_center(1);
            const int ql = rule_order(band.max_abs(), rl, f.decay_c, c.thr, 24, 320) * scale;
            const Rule lr = make_rule(ql, cl - rl, cl + rl);
            Eigen::MatrixXcd samples(rows.size(), lr.nodes.size());
            Vec p(2);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t k = 0; k < lr.nodes.size(); ++k) {
                    p << rows[i], lr.nodes[k];
                    samples(Eigen::Index(i), Eigen::Index(k)) = f.eval(p);
                }
            return std::pair<Eigen::MatrixXcd, Rule>(std::move(samples), lr);
        };
        {
            auto [su, lr] = table(u, n2.partner_a, c.s1);
            Eigen::MatrixXcd E(lr.nodes.size(), m1);
            for (std::size_t k = 0; k < lr.nodes.size(); ++k)
                for (std::size_t j = 0; j < m1; ++j)
                    E(Eigen::Index(k), Eigen::Index(j)) =
                        lr.weights[k] * std::exp(cplx(0.0, -r1.nodes[j] * lr.nodes[k]));
            U = su * E;
        }
        {
            auto [sv, lr] = table(v, n1.partner_a, c.s2);
            Eigen::MatrixXcd E(lr.nodes.size(), m2);
            for (std::size_t k = 0; k < lr.nodes.size(); ++k)
                for (std::size_t i = 0; i < m2; ++i)
                    E(Eigen::Index(k), Eigen::Index(i)) =
                        lr.weights[k] * std::exp(cplx(0.0, r2.nodes[i] * lr.nodes[k]));
            V = sv * E;
        }
    }

    cplx acc(0.0);
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m1; ++j) {
            const double da = n2.partner_a[i] - n1.partner_a[j];  // a1 - a2
            const double w = r2.weights[i] * r1.weights[j] * n2.jac[i] * n1.jac[j] * std::cosh(da);
            acc += w * std::exp(cplx(0.0, 2.0 * std::sinh(da) * c.l0 / c.hbar)) *
                   U(Eigen::Index(i), Eigen::Index(j)) * V(Eigen::Index(j), Eigen::Index(i));
        }
    return acc * (c.calib / (4.0 * pi * pi));
}

}  // namespace

cplx star_n1(const AnalyticFunction& u, const AnalyticFunction& v, double hbar, const Vec& at,
             const DeformationParams& par, double conv_tol, double* refine_delta) {
    require(hbar > 0.0, "star_n1: hbar must be positive");
    require(u.dim == 2 && v.dim == 2, "star_n1: factors live on the plane");
    require(at.size() == 2, "star_n1: plane points have two coordinates");
    require(bool(u.eval) && bool(v.eval), "star_n1: factors need evaluators");
    require(u.decay_c > 0.0 && v.decay_c > 0.0 && u.decay_center.size() == 2 &&
                v.decay_center.size() == 2,
            "star_n1: factors need decay envelopes");
    require(par.band_threshold > 0.0 && par.band_threshold <= 1e-6,
            "star_n1: band threshold out of range");

    PlaneSetup c;
    c.hbar = hbar;
    c.thr = par.band_threshold;
    c.calib = par.kernel_calibration;
    c.a0 = at(0);
    c.l0 = at(1);
    c.s1 = plane_interval(u, v, c.a0, hbar, c.thr);
    c.s2 = plane_interval(v, u, c.a0, hbar, c.thr);
    if (c.s1.empty() || c.s2.empty()) {
        if (refine_delta) *refine_delta = 0.0;
        return cplx(0.0);
    }

    const double reach =
        std::exp(max_a_offset(c.s1, hbar) + max_a_offset(c.s2, hbar));
    const double rate = std::abs(c.l0) * reach +
                        std::max(std::abs(u.decay_center(1)), std::abs(v.decay_center(1)));
    const double half = std::max(c.s1.half_width(), c.s2.half_width());
    const double kappa_sigma = 0.25 / std::min(u.decay_c, v.decay_c);
    const int q1 =
        rule_order(rate, half, kappa_sigma, c.thr, std::max(par.quadrature_order, 48), 768);

    const cplx coarse = plane_pass(u, v, c, q1, 1);
    if (conv_tol <= 0.0 && refine_delta == nullptr) return coarse;

    const cplx fine = plane_pass(u, v, c, q1, 2);
    const double delta = std::abs(fine - coarse);
    if (refine_delta) *refine_delta = delta;
    if (conv_tol > 0.0)
        ensure(delta <= conv_tol,
               "star_n1: doubling the quadrature order changed the value beyond the "
               "requested tolerance");
    return fine;
}

}  // namespace anstar

#include "anstar/weyl.hpp"

#include <algorithm>
#include <map>

namespace anstar {

namespace {

// Largest spectral-edge ratio over all axes: the fraction of the spectrum
// sitting at the resolution limit, which seeds derivative error estimates.
double worst_edge_ratio(const GridFunction& u) {
    double e = 0.0;
    for (int d = 0; d < u.dim(); ++d) e = std::max(e, spectral_edge_ratio(u, d));
    return e;
}

}  // namespace

WeylPhase WeylPhase::standard(int dim) {
    require(dim == 2 || dim == 4, "WeylPhase::standard: dimension must be 2 or 4");
    WeylPhase w;
    w.J = Mat::Zero(dim, dim);
    w.J(0, dim - 1) = 1.0;
    w.J(dim - 1, 0) = -1.0;
    for (int i = 1; i + 2 < dim; i += 2) {
        w.J(i, i + 1) = 1.0;
        w.J(i + 1, i) = -1.0;
    }
    return w;
}

WeylPhase WeylPhase::from_form(const ConstantSymplecticForm& w) {
    const int nx = int(w.omega_alpha.rows());
    const int dim = nx + 2;
    WeylPhase p;
    p.J = Mat::Zero(dim, dim);
    p.J(0, dim - 1) = w.omega_az;
    p.J(dim - 1, 0) = -w.omega_az;
    p.J.block(1, 1, nx, nx) = w.omega_alpha;
    return p;
}

double WeylPhase::omega(const Vec& x, const Vec& y) const {
    require(x.size() == J.rows() && y.size() == J.rows(), "WeylPhase::omega: size mismatch");
    return x.dot(J * y);
}

double WeylPhase::s0(const Vec& x, const Vec& y, const Vec& z) const {
    return omega(x, y) + omega(y, z) + omega(z, x);
}

Mat WeylPhase::poisson() const {
    return -J.inverse();
}

std::vector<BiDiffTerm> poisson_power_terms(const Mat& P, int k) {
    require(k >= 0 && k <= 8, "poisson_power_terms: order must lie in [0, 8]");
    const int d = int(P.rows());
    require(d >= 1 && d <= kMaxDim, "poisson_power_terms: dimension out of range");

    struct Key {
        std::array<int, kMaxDim> du, dv;
        bool operator<(const Key& o) const {
            if (du != o.du) return du < o.du;
            return dv < o.dv;
        }
    };
    std::map<Key, double> acc;
    acc[Key{}] = 1.0;

    for (int step = 0; step < k; ++step) {
        std::map<Key, double> next;
        for (const auto& [key, coeff] : acc) {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    const double p = P(i, j);
                    if (p == 0.0) continue;
                    Key nk = key;
                    ++nk.du[std::size_t(i)];
                    ++nk.dv[std::size_t(j)];
                    next[nk] += coeff * p;
                }
            }
        }
        acc = std::move(next);
    }

    std::vector<BiDiffTerm> out;
    out.reserve(acc.size());
    for (const auto& [key, coeff] : acc) {
        if (coeff == 0.0) continue;
        out.push_back(BiDiffTerm{coeff, key.du, key.dv});
    }
    return out;
}

GridFunction MoyalSeries::sum(double hbar) const {
    require(hbar > 0.0, "MoyalSeries::sum: hbar must be positive");
    require(!terms.empty(), "MoyalSeries::sum: empty series");
    const cplx theta = 2.0 * nu_of_hbar(hbar);  // hbar / i
    GridFunction out = terms[0];
    cplx power = 1.0;
    for (std::size_t k = 1; k < terms.size(); ++k) {
        power *= theta;
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += power * terms[k].values[i];
    }
    return out;
}

MoyalSeries moyal_series(const GridFunction& u, const GridFunction& v,
                         const WeylPhase& phase, int order) {
    require(order >= 0 && order <= 8, "moyal_series: order must lie in [0, 8]");
    const int d = u.dim();
    require(d == phase.dim(), "moyal_series: grid dimension does not match the phase");
    require(v.dim() == d, "moyal_series: factor dimensions differ");
    for (int a = 0; a < d; ++a) {
        const Axis &ua = u.axes[std::size_t(a)], &va = v.axes[std::size_t(a)];
        require(!ua.frequency && !va.frequency, "moyal_series: factors must be in position form");
        require(ua.count == va.count && approx_eq(ua.origin, va.origin, 1e-12) &&
                    approx_eq(ua.spacing, va.spacing, 1e-12),
                "moyal_series: factors must share a grid");
    }

    const Mat P = phase.poisson();
    const double edge_u = worst_edge_ratio(u), edge_v = worst_edge_ratio(v);
    const double peak_u = u.max_abs(), peak_v = v.max_abs();

    // Memoized spectral mixed partials; the error estimate for each entry is
    // the unresolved spectral mass amplified by (xi_max)^order per axis.
    struct Entry {
        GridFunction grid;
        double est_rel = 0.0;
    };
    std::map<std::array<int, kMaxDim>, Entry> cache_u, cache_v;
    auto fetch = [&](const GridFunction& base, double edge, double peak,
                     std::map<std::array<int, kMaxDim>, Entry>& cache,
                     const std::array<int, kMaxDim>& mi) -> const Entry& {
        auto it = cache.find(mi);
        if (it != cache.end()) return it->second;
        Entry e;
        e.grid = base;
        double amp = 1.0;
        for (int a = 0; a < d; ++a) {
            const int m = mi[std::size_t(a)];
            if (m == 0) continue;
            e.grid = spectral_derivative(e.grid, a, m);
            const double ximax = pi / base.axes[std::size_t(a)].spacing;
            amp *= std::pow(ximax, m);
        }
        const double scale = e.grid.max_abs();
        e.est_rel = scale > 0.0 ? edge * peak * amp / scale : 0.0;
        return cache.emplace(mi, std::move(e)).first->second;
    };

    MoyalSeries series;
    series.order = order;
    series.terms.reserve(std::size_t(order) + 1);
    double factorial = 1.0, pow2 = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            factorial *= k;
            pow2 *= 2.0;
        }
        GridFunction ck = make_grid(u.axes, u.z_axis);
        for (const BiDiffTerm& term : poisson_power_terms(P, k)) {
            const Entry& eu = fetch(u, edge_u, peak_u, cache_u, term.du);
            const Entry& ev = fetch(v, edge_v, peak_v, cache_v, term.dv);
            series.worst_amplification =
                std::max({series.worst_amplification, eu.est_rel, ev.est_rel});
            const double c = term.coeff / (pow2 * factorial);
            for (std::size_t i = 0; i < ck.values.size(); ++i)
                ck.values[i] += c * eu.grid.values[i] * ev.grid.values[i];
        }
        series.terms.push_back(std::move(ck));
    }
    series.spectral_warning = series.worst_amplification >= 1e-8;
    return series;
}

GridFunction moyal_expansion(const GridFunction& u, const GridFunction& v,
                             const WeylPhase& phase, int order, double hbar) {
    return moyal_series(u, v, phase, order).sum(hbar);
}

GridFunction weyl_product_fft(const GridFunction& u, const GridFunction& v, double hbar,
                              const WeylPhase& phase, TwistedProductInfo* info) {
    require(hbar > 0.0, "weyl_product_fft: hbar must be positive");
    const int d = u.dim();
    require(d == 2 || d == 4, "weyl_product_fft: dimension must be 2 or 4");
    require(d == phase.dim(), "weyl_product_fft: grid dimension does not match the phase");
    require(v.dim() == d, "weyl_product_fft: factor dimensions differ");
    for (int a = 0; a < d; ++a) {
        const Axis &ua = u.axes[std::size_t(a)], &va = v.axes[std::size_t(a)];
        require(!ua.frequency && !va.frequency,
                "weyl_product_fft: factors must be in position form");
        require(ua.count == va.count && approx_eq(ua.origin, va.origin, 1e-12) &&
                    approx_eq(ua.spacing, va.spacing, 1e-12),
                "weyl_product_fft: factors must share a grid");
    }

    const GridFunction uh = fourier_all_axes(u);
    const GridFunction vh = fourier_all_axes(v);
    const Mat P = phase.poisson();

    // Modes above the floor, with their per-axis indices and coordinates.
    struct Mode {
        std::array<int, kMaxDim> idx{};
        Vec k;
        cplx val;
    };
    auto collect = [&](const GridFunction& g) {
        std::vector<Mode> modes;
        const double floor_mag = 1e-15 * g.max_abs();
        for (std::size_t f = 0; f < g.values.size(); ++f) {
            if (std::abs(g.values[f]) <= floor_mag) continue;
            Mode m;
            m.val = g.values[f];
            m.k = g.point(f);
            std::size_t rest = f;
            for (int a = d - 1; a >= 0; --a) {
                m.idx[std::size_t(a)] = int(rest % std::size_t(g.axes[std::size_t(a)].count));
                rest /= std::size_t(g.axes[std::size_t(a)].count);
            }
            modes.push_back(std::move(m));
        }
        return modes;
    };
    const std::vector<Mode> mu = collect(uh), mv = collect(vh);

    GridFunction out_hat = make_grid(uh.axes, uh.z_axis);
    double norm = 1.0;
    for (int a = 0; a < d; ++a) norm *= uh.axes[std::size_t(a)].spacing / (2.0 * pi);

    double accumulated = 0.0, dropped = 0.0;
    std::size_t pairs = 0;
    const cplx half_ih(0.0, 0.5 * hbar);
    for (const Mode& a : mu) {
        const Vec pk = P.transpose() * a.k;  // <k, P m> = <P^T k, m>
        for (const Mode& b : mv) {
            const double mass = std::abs(a.val) * std::abs(b.val);
            bool inside = true;
            std::size_t flat = 0;
            for (int ax = 0; ax < d; ++ax) {
                const int count = out_hat.axes[std::size_t(ax)].count;
                const int t = a.idx[std::size_t(ax)] + b.idx[std::size_t(ax)] - count / 2;
                if (t < 0 || t >= count) {
                    inside = false;
                    break;
                }
                flat += std::size_t(t) * out_hat.stride(ax);
            }
            if (!inside) {
                dropped += mass;
                continue;
            }
            out_hat.values[flat] += a.val * b.val * std::exp(half_ih * pk.dot(b.k));
            accumulated += mass;
            ++pairs;
        }
    }
    for (cplx& vv : out_hat.values) vv *= norm;

    if (info) {
        const double total = accumulated + dropped;
        info->dropped_ratio = total > 0.0 ? dropped / total : 0.0;
        info->pairs = pairs;
    }
    return inverse_fourier_all_axes(out_hat);
}

void gauss_legendre(int q, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    require(q >= 1, "gauss_legendre: order must be positive");
    require(hi > lo, "gauss_legendre: empty interval");
    // Golub-Welsch: eigen-decomposition of the Jacobi matrix of the rule.
    Mat T = Mat::Zero(q, q);
    for (int k = 1; k < q; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        T(k - 1, k) = b;
        T(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(T);
    ensure(es.info() == Eigen::Success, "gauss_legendre: eigensolver failed");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    nodes.assign(std::size_t(q), 0.0);
    weights.assign(std::size_t(q), 0.0);
    for (int k = 0; k < q; ++k) {
        nodes[std::size_t(k)] = mid + half * es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        weights[std::size_t(k)] = 2.0 * v0 * v0 * half;
    }
}

namespace {

// One quadrature pass of the direct product at rule order q per axis.
// The bilinear coupling exp(-(2i/hbar) Omega(y,z)) factorizes across the
// conjugate-axis pairs of a normalized Darboux chart, so the 2d-dimensional
// sum contracts one y axis at a time against its partner z axis (d systems
// of rank-one kernels) instead of a full q^{2d} tensor loop.
cplx direct_pass(const AnalyticFunction& u, const AnalyticFunction& v, double hbar,
                 const Vec& at, const WeylPhase& phase, const std::array<int, kMaxDim>& partner,
                 const std::array<double, kMaxDim>& psign, double ru, double rv, int q) {
    const int d = phase.dim();
    const std::size_t qq = std::size_t(q);

    std::vector<std::vector<double>> ynodes(std::size_t(d), std::vector<double>{});
    std::vector<std::vector<double>> yweights(std::size_t(d), std::vector<double>{});
    std::vector<std::vector<double>> znodes(std::size_t(d), std::vector<double>{});
    std::vector<std::vector<double>> zweights(std::size_t(d), std::vector<double>{});
    for (int a = 0; a < d; ++a) {
        const double cu = u.decay_center(a), cv = v.decay_center(a);
        gauss_legendre(q, cu - ru, cu + ru, ynodes[std::size_t(a)], yweights[std::size_t(a)]);
        gauss_legendre(q, cv - rv, cv + rv, znodes[std::size_t(a)], zweights[std::size_t(a)]);
    }

    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= qq;

    const cplx osc = cplx(0.0, -2.0 / hbar);  // exponent scale -(2i/hbar)
    auto fill_factor = [&](const AnalyticFunction& f, const std::vector<std::vector<double>>& nodes,
                           const std::vector<std::vector<double>>& wts, bool left) {
        std::vector<cplx> vals(total, cplx(0.0));
        Vec p(d);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rest = flat;
            double w = 1.0;
            for (int a = d - 1; a >= 0; --a) {
                const std::size_t i = rest % qq;
                rest /= qq;
                p(a) = nodes[std::size_t(a)][i];
                w *= wts[std::size_t(a)][i];
            }
            // Left factor carries exp(-(2i/hbar) Omega(at, y)); the right
            // factor exp(-(2i/hbar) Omega(z, at)).
            const double ph = left ? phase.omega(at, p) : phase.omega(p, at);
            vals[flat] = w * f.eval(p) * std::exp(osc * ph);
        }
        return vals;
    };

    std::vector<cplx> T = fill_factor(u, ynodes, yweights, true);
    const std::vector<cplx> C = fill_factor(v, znodes, zweights, false);

    // Contract the current front axis (y_i) against its partner z axis,
    // appending the partner index at the end; after d steps the tensor is
    // indexed by (z_{partner[0]}, ..., z_{partner[d-1]}).
    std::vector<cplx> kernel(qq * qq, cplx(0.0)), next(total, cplx(0.0));
    for (int i = 0; i < d; ++i) {
        const int pz = partner[std::size_t(i)];
        for (std::size_t a = 0; a < qq; ++a)
            for (std::size_t b = 0; b < qq; ++b)
                kernel[a * qq + b] = std::exp(
                    osc * (psign[std::size_t(i)] * ynodes[std::size_t(i)][a] * znodes[std::size_t(pz)][b]));
        const std::size_t rest_count = total / qq;
        for (std::size_t rest = 0; rest < rest_count; ++rest) {
            for (std::size_t b = 0; b < qq; ++b) {
                cplx acc(0.0);
                for (std::size_t a = 0; a < qq; ++a)
                    acc += kernel[a * qq + b] * T[a * rest_count + rest];
                next[rest * qq + b] = acc;
            }
        }
        std::swap(T, next);
    }

    // T slot j indexes z_{partner[j]}; fold against the right factor.
    std::vector<std::size_t> tstride(std::size_t(d), 1);
    for (int j = d - 2; j >= 0; --j)
        tstride[std::size_t(j)] = tstride[std::size_t(j) + 1] * qq;
    cplx sum(0.0);
    std::array<std::size_t, kMaxDim> midx{};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (int a = d - 1; a >= 0; --a) {
            midx[std::size_t(a)] = rest % qq;
            rest /= qq;
        }
        std::size_t tflat = 0;
        for (int j = 0; j < d; ++j)
            tflat += midx[std::size_t(partner[std::size_t(j)])] * tstride[std::size_t(j)];
        sum += C[flat] * T[tflat];
    }
    return sum * std::pow(pi * hbar, -d);
}

}  // namespace

cplx weyl_product_direct(const AnalyticFunction& u, const AnalyticFunction& v, double hbar,
                         const Vec& at, const WeylPhase& phase, const DeformationParams& par,
                         double conv_tol, double* refine_delta) {
    const int d = phase.dim();
    require(hbar > 0.0, "weyl_product_direct: hbar must be positive");
    require(u.dim == d && v.dim == d, "weyl_product_direct: factor dimension mismatch");
    require(int(at.size()) == d, "weyl_product_direct: evaluation point dimension mismatch");
    require(bool(u.eval) && bool(v.eval), "weyl_product_direct: factors need evaluators");
    require(u.decay_c > 0.0 && v.decay_c > 0.0 && u.decay_center.size() == d &&
                v.decay_center.size() == d,
            "weyl_product_direct: factors need decay envelopes");
    require(par.quadrature_order >= 4, "weyl_product_direct: quadrature order too small");
    require(par.band_threshold > 0.0 && par.band_threshold <= 1e-6,
            "weyl_product_direct: band threshold out of range");

    // The factorized contraction needs the pairing in signed-permutation
    // (normalized Darboux) form: one partner per axis at unit strength.
    std::array<int, kMaxDim> partner{};
    std::array<double, kMaxDim> psign{};
    for (int i = 0; i < d; ++i) {
        int hits = 0;
        for (int j = 0; j < d; ++j) {
            const double e = phase.J(i, j);
            if (std::abs(e) <= 1e-12) continue;
            require(approx_eq(std::abs(e), 1.0, 1e-9),
                    "weyl_product_direct: phase is not a normalized Darboux pairing");
            partner[std::size_t(i)] = j;
            psign[std::size_t(i)] = e > 0.0 ? 1.0 : -1.0;
            ++hits;
        }
        require(hits == 1, "weyl_product_direct: phase is not a normalized Darboux pairing");
    }

    const double ru = box_for_decay(u.decay_c, 0.0, par.band_threshold);
    const double rv = box_for_decay(v.decay_c, 0.0, par.band_threshold);

    const int q = par.quadrature_order;
    const cplx coarse = direct_pass(u, v, hbar, at, phase, partner, psign, ru, rv, q);
    if (conv_tol <= 0.0 && refine_delta == nullptr) return coarse;

    const cplx fine = direct_pass(u, v, hbar, at, phase, partner, psign, ru, rv, 2 * q);
    const double delta = std::abs(fine - coarse);
    if (refine_delta) *refine_delta = delta;
    if (conv_tol > 0.0)
        ensure(delta <= conv_tol,
               "weyl_product_direct: doubling the quadrature order changed the value "
               "beyond the requested tolerance");
    return fine;
}

}  // namespace anstar

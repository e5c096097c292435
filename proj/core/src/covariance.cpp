#include "anstar/covariance.hpp"

#include <map>
#include <memory>
#include <random>

namespace anstar {

namespace {

int linear_order_total(const std::array<int, kMaxDim>& order, int dim) {
    int t = 0;
    for (int a = 1; a < dim; ++a) t += order[std::size_t(a)];
    return t;
}

// kappa^m with the 0^0 = 1 convention of derivative prefactors.
double rate_power(double kappa, int m) { return m == 0 ? 1.0 : std::pow(kappa, m); }

}  // namespace

double ExpLin::eval(const Vec& p) const {
    require(int(p.size()) == dim, "ExpLin::eval: point dimension mismatch");
    double affine = b0 + bz * p(dim - 1);
    for (int i = 0; i + 2 < dim; ++i) affine += bx(i) * p(i + 1);
    return std::exp(kappa * p(0)) * affine;
}

double ExpLin::derivative(const std::array<int, kMaxDim>& order, const Vec& p) const {
    require(int(p.size()) == dim, "ExpLin::derivative: point dimension mismatch");
    const int lin = linear_order_total(order, dim);
    if (lin >= 2) return 0.0;
    const double head = rate_power(kappa, order[0]) * std::exp(kappa * p(0));
    if (lin == 0) {
        double affine = b0 + bz * p(dim - 1);
        for (int i = 0; i + 2 < dim; ++i) affine += bx(i) * p(i + 1);
        return head * affine;
    }
    if (order[std::size_t(dim - 1)] == 1) return head * bz;
    for (int i = 0; i + 2 < dim; ++i)
        if (order[std::size_t(i + 1)] == 1) return head * bx(i);
    return 0.0;  // unreachable: lin == 1 names exactly one linear axis
}

Vec ExpLin::gradient(const Vec& p) const {
    Vec g = Vec::Zero(dim);
    const double ea = std::exp(kappa * p(0));
    g(0) = kappa * eval(p);
    for (int i = 0; i + 2 < dim; ++i) g(i + 1) = ea * bx(i);
    g(dim - 1) = ea * bz;
    return g;
}

CovariantMomentSet CovariantMomentSet::build(const LieAlgebraData& L) {
    CovariantMomentSet M;
    M.n = L.n;
    M.chart_dim = L.r_dim;
    M.form = origin_form(L);
    const int nx = M.chart_dim - 2;

    ExpLin base;
    base.dim = M.chart_dim;
    base.bx = Vec::Zero(nx);

    ExpLin la = base;  // lambda_A = -z
    la.bz = -1.0;
    M.lambdas.push_back(la);

    for (int i = 0; i < nx; ++i) {  // lambda_{e_i} = e^{-a} omega(x, e_i)
        ExpLin ly = base;
        ly.kappa = -1.0;
        ly.bx = M.form.omega_alpha.col(i);
        M.lambdas.push_back(ly);
    }

    ExpLin le = base;  // lambda_E = -e^{-2a}
    le.kappa = -2.0;
    le.b0 = -1.0;
    M.lambdas.push_back(le);
    return M;
}

std::vector<ExpLin> CovariantMomentSet::lambda(const Vec& X) const {
    require(int(X.size()) == chart_dim, "CovariantMomentSet::lambda: coefficient size mismatch");
    const int nx = chart_dim - 2;
    std::vector<ExpLin> pieces;

    if (X(0) != 0.0) {
        ExpLin la;
        la.dim = chart_dim;
        la.bx = Vec::Zero(nx);
        la.bz = -X(0);
        pieces.push_back(la);
    }
    const Vec cx = X.segment(1, nx);
    if (nx > 0 && cx.cwiseAbs().maxCoeff() > 0.0) {
        ExpLin ly;
        ly.dim = chart_dim;
        ly.kappa = -1.0;
        ly.bx = form.omega_alpha * cx;
        ly.bz = 0.0;
        pieces.push_back(ly);
    }
    if (X(chart_dim - 1) != 0.0) {
        ExpLin le;
        le.dim = chart_dim;
        le.kappa = -2.0;
        le.b0 = -X(chart_dim - 1);
        le.bx = Vec::Zero(nx);
        pieces.push_back(le);
    }
    return pieces;
}

namespace {

double pieces_derivative(const std::vector<ExpLin>& pieces, const std::array<int, kMaxDim>& order,
                         const Vec& p) {
    double s = 0.0;
    for (const ExpLin& piece : pieces) s += piece.derivative(order, p);
    return s;
}

// Whether a derivative of the piece can be nonzero somewhere: mirrors
// ExpLin::derivative, deciding from the coefficients alone.
bool piece_alive(const ExpLin& piece, const std::array<int, kMaxDim>& order) {
    const int lin = linear_order_total(order, piece.dim);
    if (lin >= 2) return false;
    if (lin == 0)
        return piece.b0 != 0.0 || piece.bz != 0.0 ||
               (piece.bx.size() > 0 && piece.bx.cwiseAbs().maxCoeff() > 0.0);
    if (order[std::size_t(piece.dim - 1)] == 1) return piece.bz != 0.0;
    for (int i = 0; i + 2 < piece.dim; ++i)
        if (order[std::size_t(i + 1)] == 1) return piece.bx(i) != 0.0;
    return false;
}

bool pieces_alive(const std::vector<ExpLin>& pieces, const std::array<int, kMaxDim>& order) {
    for (const ExpLin& piece : pieces)
        if (piece_alive(piece, order)) return true;
    return false;
}

double pieces_eval(const std::vector<ExpLin>& pieces, const Vec& p) {
    double s = 0.0;
    for (const ExpLin& piece : pieces) s += piece.eval(p);
    return s;
}

double series_coefficient(const std::vector<BiDiffTerm>& terms, double scale,
                          const std::vector<ExpLin>& lx, const std::vector<ExpLin>& ly,
                          const Vec& p) {
    double s = 0.0;
    for (const BiDiffTerm& t : terms)
        s += t.coeff * pieces_derivative(lx, t.du, p) * pieces_derivative(ly, t.dv, p);
    return scale * s;
}

}  // namespace

double moment_series_coefficient(const CovariantMomentSet& M, const Vec& X, const Vec& Y,
                                 int k, const Vec& p) {
    const Mat P = WeylPhase::from_form(M.form).poisson();
    double scale = 1.0;
    for (int j = 1; j <= k; ++j) scale /= 2.0 * j;
    return series_coefficient(poisson_power_terms(P, k), scale, M.lambda(X), M.lambda(Y), p);
}

std::vector<double> covariance_residual(const LieAlgebraData& L, const Vec& X, const Vec& Y,
                                        double hbar, int order) {
    require(hbar > 0.0, "covariance_residual: hbar must be positive");
    require(order >= 1 && order <= 8, "covariance_residual: order must lie in [1, 8]");
    const CovariantMomentSet M = CovariantMomentSet::build(L);
    const Mat P = WeylPhase::from_form(M.form).poisson();
    const std::vector<ExpLin> lx = M.lambda(X), ly = M.lambda(Y);
    const std::vector<ExpLin> lbracket = M.lambda(L.r_bracket(X, Y));

    std::vector<std::vector<BiDiffTerm>> terms;
    std::vector<double> scale;
    double sc = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) sc /= 2.0 * k;
        terms.push_back(poisson_power_terms(P, k));
        scale.push_back(sc);
    }

    // Deterministic probe cloud over the working chart box.
    std::mt19937_64 rng(0x5eedcafe);
    std::uniform_real_distribution<double> dist_a(-1.5, 1.5), dist_lin(-2.0, 2.0);
    const int probes = 200;

    std::vector<double> res(std::size_t(order) + 1, 0.0);
    Vec p(M.chart_dim);
    for (int t = 0; t < probes; ++t) {
        p(0) = dist_a(rng);
        for (int i = 1; i < M.chart_dim; ++i) p(i) = dist_lin(rng);
        for (int k = 0; k <= order; ++k) {
            const double cxy = series_coefficient(terms[std::size_t(k)], scale[std::size_t(k)],
                                                  lx, ly, p);
            const double cyx = series_coefficient(terms[std::size_t(k)], scale[std::size_t(k)],
                                                  ly, lx, p);
            double defect = std::abs(cxy - cyx);
            if (k == 1) defect = std::abs((cxy - cyx) + pieces_eval(lbracket, p));
            res[std::size_t(k)] = std::max(res[std::size_t(k)], defect);
        }
    }
    return res;
}

ContractionPair contraction_lemma_eval(const LieAlgebraData& L,
                                       const std::function<double(double, int)>& eps_derivs,
                                       const Vec& mu, const GaussSum& u, int k) {
    require(bool(eps_derivs), "contraction_lemma_eval: missing epsilon derivatives");
    require(k >= 1 && k <= 8, "contraction_lemma_eval: order must lie in [1, 8]");
    const int d = L.r_dim;
    require(u.dim() == d, "contraction_lemma_eval: test function dimension mismatch");
    const int nx = d - 2;
    require(int(mu.size()) == nx, "contraction_lemma_eval: covector must live on the x block");

    const ConstantSymplecticForm form = origin_form(L);
    const Mat P = WeylPhase::from_form(form).poisson();
    const auto terms = poisson_power_terms(P, k);

    // Omega(sharp mu, .) = -mu  =>  sharp mu = -omega_alpha^{-T} mu.
    Vec sharp = Vec::Zero(nx);
    if (nx > 0) sharp = -form.omega_alpha.transpose().fullPivLu().solve(mu);

    const auto table = std::make_shared<DerivTable>(u);

    ContractionPair pair;
    pair.raw = [=](const Vec& p) -> cplx {
        cplx s(0.0);
        for (const BiDiffTerm& t : terms) {
            // Left factor eps(a) mu(x): vanishes beyond one linear derivative
            // or any z derivative.
            if (t.du[std::size_t(d - 1)] > 0) continue;
            const int lin = linear_order_total(t.du, d);
            if (lin >= 2) continue;
            double fval = 0.0;
            if (lin == 0) {
                double mu_x = 0.0;
                for (int i = 0; i < nx; ++i) mu_x += mu(i) * p(i + 1);
                fval = eps_derivs(p(0), t.du[0]) * mu_x;
            } else {
                for (int i = 0; i < nx; ++i)
                    if (t.du[std::size_t(i + 1)] == 1) fval = eps_derivs(p(0), t.du[0]) * mu(i);
            }
            if (fval == 0.0) continue;
            s += t.coeff * fval * table->get(t.dv).eval(p);
        }
        return s;
    };
    pair.closed = [=](const Vec& p) -> cplx {
        double mu_x = 0.0;
        for (int i = 0; i < nx; ++i) mu_x += mu(i) * p(i + 1);

        std::array<int, kMaxDim> dz{};
        dz[std::size_t(d - 1)] = k;
        cplx s = mu_x * eps_derivs(p(0), k) * table->get(dz).eval(p);

        for (int i = 0; i < nx; ++i) {
            if (sharp(i) == 0.0) continue;
            std::array<int, kMaxDim> mixed{};
            mixed[std::size_t(d - 1)] = k - 1;
            mixed[std::size_t(i + 1)] = 1;
            s += double(k) * eps_derivs(p(0), k - 1) * sharp(i) * table->get(mixed).eval(p);
        }
        return s;
    };
    return pair;
}

namespace {

// Shared spectral-derivative cache with the same error estimate the series
// expansion uses: unresolved spectral mass times (xi_max)^order per axis.
// Edge ratios are probed lazily so that axes the series never differentiates
// (parameter axes, which need not be transformable) stay untouched.
struct SpectralCache {
    const GridFunction& base;
    double peak;
    double worst = 0.0;
    std::array<double, kMaxDim> axis_edge;
    std::map<std::array<int, kMaxDim>, GridFunction> store;

    explicit SpectralCache(const GridFunction& b) : base(b), peak(b.max_abs()) {
        axis_edge.fill(-1.0);
    }

    const GridFunction& get(const std::array<int, kMaxDim>& mi) {
        auto it = store.find(mi);
        if (it != store.end()) return it->second;
        GridFunction g = base;
        double amp = 1.0, edge = 0.0;
        for (int a = 0; a < base.dim(); ++a) {
            const int m = mi[std::size_t(a)];
            if (m == 0) continue;
            if (axis_edge[std::size_t(a)] < 0.0)
                axis_edge[std::size_t(a)] = spectral_edge_ratio(base, a);
            edge = std::max(edge, axis_edge[std::size_t(a)]);
            g = spectral_derivative(g, a, m);
            amp *= std::pow(pi / base.axes[std::size_t(a)].spacing, m);
        }
        const double scale = g.max_abs();
        if (scale > 0.0) worst = std::max(worst, edge * peak * amp / scale);
        return store.emplace(mi, std::move(g)).first->second;
    }
};

}  // namespace

GridFunction star_representation_rho(const LieAlgebraData& L, const Vec& X,
                                     const GridFunction& u, double hbar, int order,
                                     bool* spectral_warning) {
    require(hbar > 0.0, "star_representation_rho: hbar must be positive");
    require(order >= 1 && order <= 8, "star_representation_rho: order must lie in [1, 8]");
    require(u.dim() == L.r_dim, "star_representation_rho: grid dimension mismatch");
    for (const Axis& ax : u.axes)
        require(!ax.frequency, "star_representation_rho: grid must be in position form");

    const CovariantMomentSet M = CovariantMomentSet::build(L);
    const std::vector<ExpLin> pieces = M.lambda(X);
    const Mat P = WeylPhase::from_form(M.form).poisson();
    const cplx nu = nu_of_hbar(hbar);

    SpectralCache cache(u);
    GridFunction out = make_grid(u.axes, u.z_axis);

    // (1/2nu)[lambda, u]_star = sum over odd k of (nu^{k-1}/k!) Lambda^k(lambda, u).
    for (int k = 1; k <= order; k += 2) {
        cplx factor = 1.0;
        for (int j = 2; j <= k; ++j) factor *= nu / double(j);  // nu^{k-1}/k!
        for (const BiDiffTerm& t : poisson_power_terms(P, k)) {
            // Dead lambda-side factors must be skipped before the u-side
            // derivative is fetched: parameter axes of the grid need not
            // support transforms.
            if (!pieces_alive(pieces, t.du)) continue;
            const GridFunction& dv = cache.get(t.dv);
            for (std::size_t f = 0; f < out.values.size(); ++f) {
                const double lval = pieces_derivative(pieces, t.du, out.point(f));
                if (lval != 0.0) out.values[f] += factor * t.coeff * lval * dv.values[f];
            }
        }
    }
    if (spectral_warning) *spectral_warning = cache.worst >= 1e-8;
    return out;
}

namespace {

// Common chart checks and coefficient split for the frequency-side
// generators: z axis in frequency form, a and x axes in position form.
struct GeneratorData {
    int dim = 0, nx = 0;
    double ca = 0.0, ce = 0.0;
    Vec cx, w;  // w = omega_alpha * cx, so omega(x, c_x) = x . w
};

GeneratorData generator_data(const LieAlgebraData& L, const Vec& X, const GridFunction& g,
                             const char* who) {
    require(int(X.size()) == L.r_dim, std::string(who) + ": coefficient size mismatch");
    require(g.dim() == L.r_dim, std::string(who) + ": grid dimension mismatch");
    require(g.z_axis == g.dim() - 1, std::string(who) + ": grid needs a trailing z axis");
    require(g.axes.back().frequency, std::string(who) + ": z axis must be in frequency form");
    for (int a = 0; a + 1 < g.dim(); ++a)
        require(!g.axes[std::size_t(a)].frequency,
                std::string(who) + ": a and x axes must be in position form");

    GeneratorData gd;
    gd.dim = L.r_dim;
    gd.nx = gd.dim - 2;
    gd.ca = X(0);
    gd.ce = X(gd.dim - 1);
    gd.cx = X.segment(1, gd.nx);
    gd.w = origin_form(L).omega_alpha * gd.cx;
    return gd;
}

// c_A d_a u plus e^{-a}-free combination sum_i c_i d_{x_i} u, both spectral;
// either part may be absent.
void accumulate_derivative_parts(const GridFunction& g, const GeneratorData& gd,
                                 GridFunction& da, GridFunction& dc, bool& has_da,
                                 bool& has_dc) {
    has_da = gd.ca != 0.0;
    if (has_da) da = spectral_derivative(g, 0, 1);
    has_dc = false;
    for (int i = 0; i < gd.nx; ++i) {
        if (gd.cx(i) == 0.0) continue;
        GridFunction di = spectral_derivative(g, 1 + i, 1);
        if (!has_dc) {
            dc = make_grid(g.axes, g.z_axis);
            has_dc = true;
        }
        for (std::size_t f = 0; f < dc.values.size(); ++f)
            dc.values[f] += gd.cx(i) * di.values[f];
    }
}

}  // namespace

GridFunction rho_hat(const LieAlgebraData& L, const Vec& X, const GridFunction& uhat,
                     double hbar) {
    require(hbar > 0.0, "rho_hat: hbar must be positive");
    const GeneratorData gd = generator_data(L, X, uhat, "rho_hat");

    GridFunction da, dc;
    bool has_da = false, has_dc = false;
    accumulate_derivative_parts(uhat, gd, da, dc, has_da, has_dc);

    GridFunction out = make_grid(uhat.axes, uhat.z_axis);
    const cplx two_i_over_h(0.0, 2.0 / hbar);
    for (std::size_t f = 0; f < out.values.size(); ++f) {
        const Vec p = out.point(f);
        const double a = p(0), xi = p(gd.dim - 1);
        const double ea = std::exp(-a);
        cplx acc(0.0);
        if (has_da) acc += gd.ca * da.values[f];
        if (has_dc) {
            double xw = 0.0;
            for (int i = 0; i < gd.nx; ++i) xw += p(i + 1) * gd.w(i);
            acc += ea * std::cosh(0.5 * hbar * xi) * dc.values[f];
            acc -= ea * std::sinh(0.5 * hbar * xi) * two_i_over_h * xw * uhat.values[f];
        }
        if (gd.ce != 0.0)
            acc += gd.ce * two_i_over_h * ea * ea * std::sinh(hbar * xi) * uhat.values[f];
        out.values[f] = acc;
    }
    return out;
}

GridFunction pi_hbar(const LieAlgebraData& L, const Vec& X, const GridFunction& f,
                     double hbar) {
    require(hbar > 0.0, "pi_hbar: hbar must be positive");
    const GeneratorData gd = generator_data(L, X, f, "pi_hbar");

    GridFunction da, dc;
    bool has_da = false, has_dc = false;
    accumulate_derivative_parts(f, gd, da, dc, has_da, has_dc);

    GridFunction out = make_grid(f.axes, f.z_axis);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        const Vec p = out.point(idx);
        const double a = p(0), xi = p(gd.dim - 1);
        const double ea = std::exp(-a);
        double xw = 0.0;
        for (int i = 0; i < gd.nx; ++i) xw += p(i + 1) * gd.w(i);
        const double cval = -ea * (std::sinh(hbar * xi) / hbar) * (xw - 2.0 * ea * gd.ce);
        cplx acc = iunit * cval * f.values[idx];
        if (has_da) acc += gd.ca * da.values[idx];
        if (has_dc) acc += ea * dc.values[idx];
        out.values[idx] = acc;
    }
    return out;
}

cplx c_form(const LieAlgebraData& L, const Vec& X, const Vec& point, double hbar) {
    require(hbar > 0.0, "c_form: hbar must be positive");
    require(int(X.size()) == L.r_dim, "c_form: coefficient size mismatch");
    require(int(point.size()) == L.r_dim, "c_form: point dimension mismatch");
    const int nx = L.r_dim - 2;
    const double a = point(0), xi = point(L.r_dim - 1);
    const Vec w = origin_form(L).omega_alpha * X.segment(1, nx);
    double xw = 0.0;
    for (int i = 0; i < nx; ++i) xw += point(i + 1) * w(i);
    const double ea = std::exp(-a);
    return cplx(-ea * (std::sinh(hbar * xi) / hbar) * (xw - 2.0 * ea * X(L.r_dim - 1)), 0.0);
}

}  // namespace anstar

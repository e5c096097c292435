#include "anstar/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace anstar {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
    return r;
}

cplx ipow(cplx base, int m) {
    cplx r = 1.0;
    for (int j = 0; j < m; ++j) r *= base;
    return r;
}

double double_factorial(int m) {  // (m-1)!! for even m ≥ 0, with (−1)!! = 1
    double r = 1.0;
    for (int j = m - 1; j >= 2; j -= 2) r *= double(j);
    return r;
}

void merge_poly(std::vector<Monomial>& poly) {
    std::sort(poly.begin(), poly.end(),
              [](const Monomial& a, const Monomial& b) { return a.pow < b.pow; });
    std::vector<Monomial> out;
    out.reserve(poly.size());
    for (const auto& m : poly) {
        if (!out.empty() && out.back().pow == m.pow) {
            out.back().coeff += m.coeff;
        } else {
            out.push_back(m);
        }
    }
    std::erase_if(out, [](const Monomial& m) { return std::abs(m.coeff) == 0.0; });
    poly = std::move(out);
}

// Re-express a polynomial in (p − from) as a polynomial in (p − to).
std::vector<Monomial> recenter_poly(const std::vector<Monomial>& poly,
                                    const std::array<cplx, kMaxDim>& from,
                                    const std::array<cplx, kMaxDim>& to, int dim) {
    std::vector<Monomial> cur = poly;
    for (int ax = 0; ax < dim; ++ax) {
        const cplx shift = to[ax] - from[ax];  // (p−from) = (p−to) + shift
        if (shift == cplx(0.0)) continue;
        std::vector<Monomial> next;
        next.reserve(cur.size() * 2);
        for (const auto& m : cur) {
            const int mp = m.pow[ax];
            if (mp == 0) {
                next.push_back(m);
                continue;
            }
            for (int j = 0; j <= mp; ++j) {
                Monomial nm = m;
                nm.pow[ax] = std::uint8_t(j);
                nm.coeff = m.coeff * binom(mp, j) * ipow(shift, mp - j);
                next.push_back(nm);
            }
        }
        cur = std::move(next);
        merge_poly(cur);
    }
    return cur;
}

// Multiply a term in place by exp(beta · p_axis); requires Gaussian decay on
// that axis. Completing the square shifts the (complex) center by beta/(2k)
// and produces the constant exp(beta·b + beta²/(4k)).
void absorb_linear_exp(GaussTerm& t, int axis, cplx beta, int dim) {
    if (beta == cplx(0.0)) return;
    const double k = t.kappa[axis];
    ensure(k > 0.0, "absorb_linear_exp: axis lacks Gaussian decay");
    const cplx b_old = t.center[axis];
    const cplx factor = std::exp(beta * b_old + beta * beta / (4.0 * k));
    auto from = t.center;
    t.center[axis] = b_old + beta / (2.0 * k);
    t.poly = recenter_poly(t.poly, from, t.center, dim);
    for (auto& m : t.poly) m.coeff *= factor;
}

int max_axis_power(const GaussTerm& t, int axis) {
    int m = 0;
    for (const auto& mono : t.poly) m = std::max(m, int(mono.pow[axis]));
    return m;
}

}  // namespace

GaussSum GaussSum::gaussian(int dim, const Vec& center, const Vec& kappa, cplx amp) {
    require(center.size() == dim && kappa.size() == dim, "gaussian: size mismatch");
    GaussSum g(dim);
    GaussTerm t;
    for (int i = 0; i < dim; ++i) {
        require(kappa(i) >= 0.0, "gaussian: negative width");
        t.center[i] = center(i);
        t.kappa[i] = kappa(i);
    }
    t.poly.push_back(Monomial{{}, amp});
    g.terms_.push_back(std::move(t));
    return g;
}

GaussSum GaussSum::modulated_gaussian(int dim, const Vec& center, const Vec& kappa,
                                      const Vec& freq, cplx amp) {
    GaussSum g = gaussian(dim, center, kappa, amp);
    for (int i = 0; i < dim; ++i) {
        if (freq(i) == 0.0) continue;
        absorb_linear_exp(g.terms_[0], i, iunit * freq(i), dim);
    }
    return g;
}

cplx GaussSum::eval(const double* p) const {
    cplx total = 0.0;
    for (const auto& t : terms_) {
        cplx expo = 0.0;
        std::array<cplx, kMaxDim> dz{};
        for (int i = 0; i < dim_; ++i) {
            dz[i] = cplx(p[i]) - t.center[i];
            expo -= t.kappa[i] * dz[i] * dz[i];
        }
        cplx acc = 0.0;
        for (const auto& m : t.poly) {
            cplx v = m.coeff;
            for (int i = 0; i < dim_; ++i) {
                for (int j = 0; j < m.pow[i]; ++j) v *= dz[i];
            }
            acc += v;
        }
        total += acc * std::exp(expo);
    }
    return total;
}

GaussSum& GaussSum::operator+=(const GaussSum& other) {
    if (dim_ == 0) dim_ = other.dim_;
    require(other.dim_ == dim_ || other.terms_.empty(), "GaussSum+: dim mismatch");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

GaussSum& GaussSum::operator*=(cplx s) {
    for (auto& t : terms_)
        for (auto& m : t.poly) m.coeff *= s;
    return *this;
}

GaussSum GaussSum::multiply(const GaussSum& a, const GaussSum& b) {
    require(a.dim_ == b.dim_, "GaussSum*: dim mismatch");
    GaussSum out(a.dim_);
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            GaussTerm t;
            cplx pref = 1.0;
            for (int i = 0; i < a.dim_; ++i) {
                const double k1 = ta.kappa[i], k2 = tb.kappa[i];
                const cplx b1 = ta.center[i], b2 = tb.center[i];
                const double k = k1 + k2;
                t.kappa[i] = k;
                if (k > 0.0) {
                    t.center[i] = (k1 * b1 + k2 * b2) / k;
                    pref *= std::exp(-(k1 * k2 / k) * (b1 - b2) * (b1 - b2));
                } else {
                    t.center[i] = 0.0;
                }
            }
            const auto pa = recenter_poly(ta.poly, ta.center, t.center, a.dim_);
            const auto pb = recenter_poly(tb.poly, tb.center, t.center, a.dim_);
            t.poly.reserve(pa.size() * pb.size());
            for (const auto& ma : pa) {
                for (const auto& mb : pb) {
                    Monomial m;
                    for (int i = 0; i < kMaxDim; ++i) {
                        const int s = int(ma.pow[i]) + int(mb.pow[i]);
                        ensure(s <= 255, "GaussSum*: polynomial degree overflow");
                        m.pow[i] = std::uint8_t(s);
                    }
                    m.coeff = ma.coeff * mb.coeff * pref;
                    t.poly.push_back(m);
                }
            }
            merge_poly(t.poly);
            if (!t.poly.empty()) out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

GaussSum GaussSum::derivative(int axis) const {
    require(axis >= 0 && axis < dim_, "derivative: bad axis");
    GaussSum out(dim_);
    for (const auto& t : terms_) {
        GaussTerm nt;
        nt.center = t.center;
        nt.kappa = t.kappa;
        const double k = t.kappa[axis];
        for (const auto& m : t.poly) {
            if (m.pow[axis] > 0) {
                Monomial d = m;
                d.pow[axis] = std::uint8_t(m.pow[axis] - 1);
                d.coeff = m.coeff * double(m.pow[axis]);
                nt.poly.push_back(d);
            }
            if (k > 0.0) {
                Monomial g = m;
                ensure(int(m.pow[axis]) + 1 <= 255, "derivative: degree overflow");
                g.pow[axis] = std::uint8_t(m.pow[axis] + 1);
                g.coeff = m.coeff * (-2.0 * k);
                nt.poly.push_back(g);
            }
        }
        merge_poly(nt.poly);
        if (!nt.poly.empty()) out.terms_.push_back(std::move(nt));
    }
    return out;
}

GaussSum GaussSum::mixed_derivative(const std::array<int, kMaxDim>& order) const {
    GaussSum cur = *this;
    for (int ax = 0; ax < dim_; ++ax)
        for (int j = 0; j < order[ax]; ++j) cur = cur.derivative(ax);
    return cur;
}

GaussSum GaussSum::times_affine(int axis, cplx alpha, cplx beta) const {
    require(axis >= 0 && axis < dim_, "times_affine: bad axis");
    GaussSum out(dim_);
    for (const auto& t : terms_) {
        GaussTerm nt;
        nt.center = t.center;
        nt.kappa = t.kappa;
        const cplx c0 = alpha * t.center[axis] + beta;  // (αp+β) = α(p−b) + (αb+β)
        for (const auto& m : t.poly) {
            if (alpha != cplx(0.0)) {
                Monomial up = m;
                ensure(int(m.pow[axis]) + 1 <= 255, "times_affine: degree overflow");
                up.pow[axis] = std::uint8_t(m.pow[axis] + 1);
                up.coeff = m.coeff * alpha;
                nt.poly.push_back(up);
            }
            if (c0 != cplx(0.0)) {
                Monomial same = m;
                same.coeff = m.coeff * c0;
                nt.poly.push_back(same);
            }
        }
        merge_poly(nt.poly);
        if (!nt.poly.empty()) out.terms_.push_back(std::move(nt));
    }
    return out;
}

GaussSum GaussSum::partial_fourier(int axis, int sign, double norm) const {
    require(axis >= 0 && axis < dim_, "partial_fourier: bad axis");
    require(sign == 1 || sign == -1, "partial_fourier: sign must be ±1");
    GaussSum out(dim_);
    for (const auto& t : terms_) {
        const double k = t.kappa[axis];
        ensure(k > 0.0, "partial_fourier: term lacks Gaussian decay along the transform axis");
        const cplx b = t.center[axis];
        const double k_xi = 1.0 / (4.0 * k);
        // 1D chain g_m(ξ) = d^m/dξ^m [ sqrt(π/k) exp(−ξ²/(4k)) ], stored as
        // polynomials in ξ (center 0): the m-th moment integral equals
        // (−sign·i)^m g_m(ξ) before the modulation from the complex center.
        const int mmax = max_axis_power(t, axis);
        std::vector<std::vector<std::pair<int, cplx>>> chain(mmax + 1);
        chain[0] = {{0, cplx(std::sqrt(pi / k))}};
        for (int m = 1; m <= mmax; ++m) {
            std::vector<std::pair<int, cplx>> next;
            for (const auto& [q, c] : chain[m - 1]) {
                if (q > 0) next.emplace_back(q - 1, double(q) * c);
                next.emplace_back(q + 1, -2.0 * k_xi * c);
            }
            std::sort(next.begin(), next.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            std::vector<std::pair<int, cplx>> merged;
            for (const auto& e : next) {
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second += e.second;
                else
                    merged.push_back(e);
            }
            chain[m] = std::move(merged);
        }
        GaussTerm nt;
        nt.center = t.center;
        nt.kappa = t.kappa;
        nt.center[axis] = 0.0;
        nt.kappa[axis] = k_xi;
        for (const auto& m : t.poly) {
            const int mp = m.pow[axis];
            const cplx factor = ipow(cplx(0.0, -double(sign)), mp);
            for (const auto& [q, c1d] : chain[mp]) {
                Monomial nm = m;
                ensure(q <= 255, "partial_fourier: degree overflow");
                nm.pow[axis] = std::uint8_t(q);
                nm.coeff = m.coeff * factor * c1d;
                nt.poly.push_back(nm);
            }
        }
        merge_poly(nt.poly);
        absorb_linear_exp(nt, axis, cplx(0.0, double(sign)) * b, dim_);
        for (auto& m : nt.poly) m.coeff *= norm;
        if (!nt.poly.empty()) out.terms_.push_back(std::move(nt));
    }
    return out;
}

cplx GaussSum::integral() const {
    cplx total = 0.0;
    for (const auto& t : terms_) {
        for (int i = 0; i < dim_; ++i)
            ensure(t.kappa[i] > 0.0, "integral: term lacks Gaussian decay along some axis");
        for (const auto& m : t.poly) {
            cplx v = m.coeff;
            bool zero = false;
            for (int i = 0; i < dim_; ++i) {
                const int mp = m.pow[i];
                if (mp % 2 == 1) { zero = true; break; }
                const double k = t.kappa[i];
                v *= std::sqrt(pi / k) * double_factorial(mp) / std::pow(2.0 * k, mp / 2);
            }
            if (!zero) total += v;
        }
    }
    return total;
}

double GaussSum::norm2_sq() const {
    const GaussSum prod = multiply(*this, conjugate());
    return prod.integral().real();
}

GaussSum GaussSum::conjugate() const {
    GaussSum out(dim_);
    out.terms_ = terms_;
    for (auto& t : out.terms_) {
        for (auto& c : t.center) c = std::conj(c);
        for (auto& m : t.poly) m.coeff = std::conj(m.coeff);
    }
    return out;
}

GaussSum GaussSum::translate(const Vec& t) const {
    require(t.size() == dim_, "translate: size mismatch");
    GaussSum out = *this;
    for (auto& term : out.terms_)
        for (int i = 0; i < dim_; ++i) term.center[i] += t(i);
    return out;
}

GaussSum GaussSum::scale_axis(int axis, double s) const {
    require(axis >= 0 && axis < dim_, "scale_axis: bad axis");
    require(s != 0.0, "scale_axis: zero scale");
    GaussSum out = *this;
    for (auto& t : out.terms_) {
        t.kappa[axis] *= s * s;
        t.center[axis] /= s;
        for (auto& m : t.poly) m.coeff *= ipow(cplx(s), m.pow[axis]);
    }
    return out;
}

void GaussSum::prune(double tol) {
    for (auto& t : terms_)
        std::erase_if(t.poly, [tol](const Monomial& m) { return std::abs(m.coeff) < tol; });
    std::erase_if(terms_, [](const GaussTerm& t) { return t.poly.empty(); });
}

const GaussSum& DerivTable::get(const std::array<int, kMaxDim>& order) const {
    auto it = cache_.find(order);
    if (it != cache_.end()) return it->second;
    bool zero = true;
    for (int v : order) zero = zero && v == 0;
    if (zero) return cache_.emplace(order, base_).first->second;
    for (int ax = 0; ax < kMaxDim; ++ax) {
        if (order[ax] > 0) {
            auto lower = order;
            lower[ax] -= 1;
            GaussSum d = get(lower).derivative(ax);
            return cache_.emplace(order, std::move(d)).first->second;
        }
    }
    return base_;  // unreachable
}

AnalyticFunction make_analytic(const GaussSum& g, double decay_C, double decay_c,
                               const Vec& decay_center) {
    AnalyticFunction f;
    f.dim = g.dim();
    auto payload = std::make_shared<GaussSum>(g);
    f.eval = [payload](const Vec& p) { return payload->eval(p); };
    f.exact = g;
    f.decay_C = decay_C;
    f.decay_c = decay_c;
    f.decay_center = decay_center;
    return f;
}

double box_for_decay(double decay_c, double center_offset, double target) {
    require(decay_c > 0.0 && target > 0.0 && target < 1.0, "box_for_decay: bad arguments");
    return center_offset + std::sqrt(std::log(1.0 / target) / decay_c);
}

}  // namespace anstar

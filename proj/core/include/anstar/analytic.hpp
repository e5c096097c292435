#ifndef ANSTAR_ANALYTIC_HPP
#define ANSTAR_ANALYTIC_HPP

// Closed-form evaluator family: complex linear combinations of
//
//   term(p) = Σ_monomials c · Π_i (p_i − b_i)^{m_i} · Π_i exp(−k_i (p_i − b_i)²)
//
// on R^d (d ≤ 4), with real widths k_i ≥ 0 and complex centers b_i (a complex
// center encodes a plane-wave modulation of a real Gaussian). The family is
// closed under addition, multiplication, differentiation, axis-wise Fourier
// transform, translation and axis scaling, so every transform of a member is
// exact; grids and quadratures are tested against these evaluators.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "anstar/common.hpp"

namespace anstar {

inline constexpr int kMaxDim = 4;

using PowKey = std::array<std::uint8_t, kMaxDim>;

struct Monomial {
    PowKey pow{};
    cplx coeff{0.0, 0.0};
};

struct GaussTerm {
    std::array<cplx, kMaxDim> center{};   // b_i
    std::array<double, kMaxDim> kappa{};  // k_i ≥ 0
    std::vector<Monomial> poly;           // polynomial in (p − b)
};

class GaussSum {
  public:
    GaussSum() : dim_(0) {}
    explicit GaussSum(int dim) : dim_(dim) { require(dim >= 1 && dim <= kMaxDim, "GaussSum: dim out of range"); }

    // amp · exp(−Σ kappa_i (p_i − center_i)²)
    static GaussSum gaussian(int dim, const Vec& center, const Vec& kappa, cplx amp = 1.0);
    // as above with a plane-wave factor exp(i freq·p)
    static GaussSum modulated_gaussian(int dim, const Vec& center, const Vec& kappa, const Vec& freq, cplx amp = 1.0);

    int dim() const { return dim_; }
    const std::vector<GaussTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    cplx eval(const double* p) const;
    cplx eval(const Vec& p) const { return eval(p.data()); }

    GaussSum& operator+=(const GaussSum& other);
    GaussSum& operator*=(cplx s);
    friend GaussSum operator+(GaussSum a, const GaussSum& b) { a += b; return a; }
    friend GaussSum operator*(cplx s, GaussSum a) { a *= s; return a; }
    friend GaussSum operator*(const GaussSum& a, const GaussSum& b) { return multiply(a, b); }
    friend GaussSum operator-(GaussSum a, const GaussSum& b) {
        GaussSum nb = b; nb *= cplx(-1.0); a += nb; return a;
    }

    static GaussSum multiply(const GaussSum& a, const GaussSum& b);

    GaussSum derivative(int axis) const;
    GaussSum mixed_derivative(const std::array<int, kMaxDim>& order) const;

    // Multiply by the affine factor (alpha·p_axis + beta).
    GaussSum times_affine(int axis, cplx alpha, cplx beta) const;

    // ∫ f(p) exp(sign·i·xi·p_axis) dp_axis, times norm; the frequency variable
    // takes the old axis slot. sign=-1, norm=1 is the forward transform used
    // throughout; sign=+1, norm=1/(2π) inverts it.
    GaussSum partial_fourier(int axis, int sign, double norm) const;

    // ∫_{R^dim} f — requires decay (kappa > 0) along every axis carrying dependence.
    cplx integral() const;
    // ∫ |f|²  and its square root.
    double norm2_sq() const;
    double norm2() const { return std::sqrt(norm2_sq()); }

    GaussSum conjugate() const;
    GaussSum translate(const Vec& t) const;   // returns p ↦ f(p − t) (graph moved by +t)
    GaussSum scale_axis(int axis, double s) const;  // f with p_axis replaced by s·p_axis

    void prune(double tol = 1e-300);

  private:
    int dim_;
    std::vector<GaussTerm> terms_;
};

// Memoized mixed partials of a GaussSum (used by series expansions that
// request the same derivative many times at different points).
class DerivTable {
  public:
    explicit DerivTable(GaussSum base) : base_(std::move(base)) {}
    const GaussSum& get(const std::array<int, kMaxDim>& order) const;

  private:
    GaussSum base_;
    mutable std::map<std::array<int, kMaxDim>, GaussSum> cache_;
};

// Evaluator contract for test functions: total smooth evaluation plus an
// optional exact payload for transform oracles, with a stated decay bound
// |f(p)| ≤ C exp(−c·min_kappa·…) recorded as the plain Gaussian envelope.
struct AnalyticFunction {
    int dim = 0;
    std::function<cplx(const Vec&)> eval;
    std::optional<GaussSum> exact;
    double decay_C = 1.0;  // envelope amplitude
    double decay_c = 1.0;  // envelope exponent: |f| ≤ C exp(−c ||p − p0||²) outside the core
    Vec decay_center;

    cplx operator()(const Vec& p) const { return eval(p); }
};

AnalyticFunction make_analytic(const GaussSum& g, double decay_C, double decay_c, const Vec& decay_center);

// Half-width so the stated envelope falls to `target` relative to its peak.
double box_for_decay(double decay_c, double center_offset, double target = 1e-12);

}  // namespace anstar

#endif  // ANSTAR_ANALYTIC_HPP

#pragma once

// The hyperbolic transform chain on chart grids (a, x_1..x_{2n-2}, z):
//
//   * z_transform / z_inverse — the frequency-warped partial transform
//       (Z u)(a,x,xi) = F_z(u)(a,x, sinh(hbar·xi)/hbar),
//     inverted by evaluating the trig interpolant of Z(u) back at the
//     compressed points arcsinh(hbar·eta)/hbar and applying the uniform
//     inverse transform.
//   * phi_pullback / phi_inverse_pullback — composition with the frequency-
//     side diffeomorphism
//       phi(a, x, xi) = (a, x / cosh(hbar·xi/2), sinh(hbar·xi)/hbar)
//     acting on partially transformed grids.
//   * t_map / tau_map (public names t_hbar, tau_hbar) — the conjugated pair
//       T = F^{-1} ∘ phi-pullback ∘ F,   tau = F^{-1} ∘ phi-inverse-pullback ∘ F,
//     with T ∘ tau = id on well-resolved data.
//
// tau expands frequency content by the sinh warp, so its output carries an
// enlarged frequency axis: same spacing, power-of-two count sized from the
// occupied band of the input spectrum (or pinned explicitly), which after the
// final inverse transform yields a finer z-grid over the same box.  Content
// warped beyond the representable Nyquist window is set to exactly zero.

#include <vector>

#include "anstar/grid.hpp"

namespace anstar {

// Pipeline configuration shared by the transform, product, and kernel layers.
struct DeformationParams {
    double hbar = 0.5;

    std::vector<double> box_half;  // chart box half-widths, (a, x..., z) order
    std::vector<int> grid_count;   // samples per axis, same order

    int quadrature_order = 64;    // Gauss-Legendre nodes per integration axis
    int interpolation_order = 0;  // off-grid evaluation: 0 spectral, 1 linear, 3 cubic

    // Direct-kernel normalization constant (calibrated once against the
    // compositional product and then frozen).
    double kernel_calibration = 1.0;

    // tau enlargement: 0 sizes the output frequency axis from the occupied
    // band of the input spectrum; a positive power of two pins the count.
    int tau_enlarged_count = 0;
    // Relative cutoff for the occupied-band scan (cosh-weighted).
    double band_threshold = 1e-14;

    static DeformationParams for_hbar(double h) {
        DeformationParams p;
        p.hbar = h;
        return p;
    }
    void validate() const;

    // Chart axes from box_half/grid_count; the final axis is the z axis.
    std::vector<Axis> chart_axes() const;
};

// Optional per-call accuracy report.
struct TransformDiagnostics {
    double input_boundary_ratio = 0.0;  // box-face samples / peak, before transform
    double spectrum_edge_ratio = 0.0;   // spectrum at the used band edge / peak spectrum
    double band_limit = 0.0;            // |xi| up to which source content was kept
    int enlarged_count = 0;             // frequency nodes after tau enlargement
};

// Pointwise frequency-side coordinate maps on (a, x..., xi); the last slot is
// the frequency coordinate.
Vec phi_point(const Vec& p, double hbar);
Vec phi_inverse_point(const Vec& p, double hbar);

// Frequency-side pullbacks: input and output carry the z axis in frequency
// form. phi_inverse_pullback returns the enlarged-axis grid.
GridFunction phi_pullback(const GridFunction& uhat, const DeformationParams& par,
                          TransformDiagnostics* diag = nullptr);
GridFunction phi_inverse_pullback(const GridFunction& uhat, const DeformationParams& par,
                                  TransformDiagnostics* diag = nullptr);

// (Z u)(a,x,xi_k) = trig series of the z-samples at sinh(hbar·xi_k)/hbar,
// zero outside the Nyquist window; output z axis in frequency form.
GridFunction z_transform(const GridFunction& u, const DeformationParams& par,
                         TransformDiagnostics* diag = nullptr);
GridFunction z_inverse(const GridFunction& g, const DeformationParams& par);

// The conjugated pair. t_hbar preserves the grid shape; tau_hbar refines the
// z axis (same box) through the enlarged frequency axis.
GridFunction t_hbar(const GridFunction& u, const DeformationParams& par,
                    TransformDiagnostics* diag = nullptr);
GridFunction tau_hbar(const GridFunction& u, const DeformationParams& par,
                      TransformDiagnostics* diag = nullptr);

}  // namespace anstar

#include "anstar/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "anstar/fourier.hpp"
#include "anstar/resample.hpp"

namespace anstar {

namespace {

bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int next_power_of_two(int n) {
    int p = 8;
    while (p < n) p *= 2;
    return p;
}

void check_space_z_axis(const GridFunction& u) {
    require(u.z_axis >= 0, "transform: grid has no designated z axis");
    const Axis& zax = u.axes[std::size_t(u.z_axis)];
    require(!zax.frequency, "transform: z axis must be in position form here");
    require(zax.count >= 8 && zax.count % 2 == 0 && zax.centered(),
            "transform: z axis must be centered with even count >= 8");
}

// x axes of a chart grid (a, x..., z): everything except axis 0 and the z axis.
std::vector<int> x_axes_of(const GridFunction& u) {
    std::vector<int> xs;
    for (int d = 0; d < u.dim(); ++d)
        if (d != 0 && d != u.z_axis) xs.push_back(d);
    return xs;
}

// Evaluate the trig series of every z-line at arbitrary frequency targets,
// one target per node of `out_axis`; targets outside the half-open Nyquist
// window [-pi/dz, pi/dz) yield exactly zero.
GridFunction warped_z_eval(const GridFunction& u, const Axis& out_axis,
                           const std::vector<double>& targets) {
    const int zd = u.z_axis;
    const Axis& zax = u.axes[std::size_t(zd)];
    require(!zax.frequency, "warped evaluation needs position-form z samples");
    require(int(targets.size()) == out_axis.count, "warped evaluation: target count mismatch");

    GridFunction out;
    out.axes = u.axes;
    out.axes[std::size_t(zd)] = out_axis;
    out.z_axis = zd;
    out.values.assign(out.size(), cplx(0.0, 0.0));

    const int N = zax.count;
    const int M = out_axis.count;
    const double dz = zax.spacing;
    const double z0 = zax.origin;
    const double window = pi / dz;
    const std::size_t ost = out.stride(zd);

    std::vector<char> live(std::size_t(M), 0);
    std::vector<cplx> step(std::size_t(M), cplx(0.0));
    for (int k = 0; k < M; ++k) {
        const double t = targets[std::size_t(k)];
        live[std::size_t(k)] = (t >= -window && t < window) ? 1 : 0;
        step[std::size_t(k)] = std::exp(cplx(0.0, -t * dz));
    }

    for_each_line(u, zd, [&](std::size_t base, std::size_t stride) {
        const std::size_t obase = remap_base(u, out, base);
        for (int k = 0; k < M; ++k) {
            if (!live[std::size_t(k)]) continue;
            const double t = targets[std::size_t(k)];
            cplx acc(0.0, 0.0);
            cplx ph(0.0, 0.0);
            for (int j = 0; j < N; ++j) {
                // Phase recurrence, re-seeded periodically to stop drift.
                if ((j & 127) == 0) ph = std::exp(cplx(0.0, -t * (z0 + j * dz)));
                acc += u.values[base + std::size_t(j) * stride] * ph;
                ph *= step[std::size_t(k)];
            }
            out.values[obase + std::size_t(k) * ost] = dz * acc;
        }
    });
    return out;
}

// Replace each line along x-axis `d` by its interpolant evaluated at
// scale[k] * x_i, where k is the line's frequency-slab index; coordinates
// landing outside the axis range give zero.
GridFunction x_scale_axis(const GridFunction& g, int d, const std::vector<double>& scale,
                          int interp_order) {
    const int zd = g.z_axis;
    require(d != zd && d != 0, "x scaling applies to the middle chart axes only");
    const Axis& xax = g.axes[std::size_t(d)];
    const std::size_t zst = g.stride(zd);
    const std::size_t nz = std::size_t(g.axes[std::size_t(zd)].count);
    const double lo = xax.coord(0);
    const double hi = xax.coord(xax.count - 1);

    GridFunction out = g;

    if (interp_order == 0) {
        const GridFunction gf = partial_fourier_axis(g, d);
        const Axis& fax = gf.axes[std::size_t(d)];
        std::vector<cplx> line(std::size_t(fax.count));
        std::vector<double> targets(std::size_t(xax.count));
        for_each_line(gf, d, [&](std::size_t base, std::size_t stride) {
            const int k = int((base / zst) % nz);
            const double s = scale[std::size_t(k)];
            if (s == 1.0) return;  // slab untouched; `out` already holds g
            for (int j = 0; j < fax.count; ++j)
                line[std::size_t(j)] = gf.values[base + std::size_t(j) * stride];
            for (int i = 0; i < xax.count; ++i) targets[std::size_t(i)] = s * xax.coord(i);
            const std::vector<cplx> vals = nudft_inverse(fax, line, targets);
            for (int i = 0; i < xax.count; ++i) {
                const double t = targets[std::size_t(i)];
                out.values[base + std::size_t(i) * stride] =
                    (t < lo || t > hi) ? cplx(0.0, 0.0) : vals[std::size_t(i)];
            }
        });
    } else {
        for_each_line(g, d, [&](std::size_t base, std::size_t stride) {
            const int k = int((base / zst) % nz);
            const double s = scale[std::size_t(k)];
            if (s == 1.0) return;
            for (int i = 0; i < xax.count; ++i)
                out.values[base + std::size_t(i) * stride] =
                    lagrange_eval(xax, g.values.data() + base, stride, s * xax.coord(i),
                                  interp_order);
        });
    }
    return out;
}

// Largest |xi| whose cosh-weighted spectral magnitude exceeds threshold*peak,
// padded by two bins and clamped to the window; also reports the relative
// spectrum magnitude at the window edge (an aliasing indicator).
double detect_band(const GridFunction& u, double hbar, double threshold, double* edge_ratio) {
    const GridFunction sp = partial_fourier_z(u);
    const int zd = sp.z_axis;
    const Axis& fax = sp.axes[std::size_t(zd)];
    const std::size_t st = sp.stride(zd);
    const std::size_t M = std::size_t(fax.count);

    std::vector<double> mag(M, 0.0);
    for (std::size_t i = 0; i < sp.values.size(); ++i) {
        const std::size_t k = (i / st) % M;
        mag[k] = std::max(mag[k], std::abs(sp.values[i]));
    }
    const double peak = *std::max_element(mag.begin(), mag.end());
    if (edge_ratio) *edge_ratio = peak > 0.0 ? std::max(mag[0], mag[M - 1]) / peak : 0.0;
    if (peak == 0.0) return fax.spacing;

    double band = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        const double xi = fax.coord(int(k));
        if (mag[k] * std::cosh(hbar * xi) > threshold * peak)
            band = std::max(band, std::abs(xi));
    }
    band += 2.0 * fax.spacing;
    return std::min(band, -fax.origin);
}

// The frequency-side core of T: warp the z series to sinh targets, shrink the
// x axes slabwise. Input in position form, output in frequency form.
GridFunction t_frequency_side(const GridFunction& u, const DeformationParams& par,
                              TransformDiagnostics* diag) {
    check_space_z_axis(u);
    const double h = par.hbar;
    const Axis fout = conjugate_axis(u.axes[std::size_t(u.z_axis)]);

    std::vector<double> eta(std::size_t(fout.count), 0.0);
    std::vector<double> shrink(std::size_t(fout.count), 0.0);
    for (int k = 0; k < fout.count; ++k) {
        const double xi = fout.coord(k);
        eta[std::size_t(k)] = std::sinh(h * xi) / h;
        shrink[std::size_t(k)] = 1.0 / std::cosh(h * xi / 2.0);
    }

    if (diag) {
        diag->input_boundary_ratio = boundary_ratio(u);
        diag->band_limit = fout.half_width();
        diag->enlarged_count = fout.count;
        detect_band(u, h, par.band_threshold, &diag->spectrum_edge_ratio);
    }

    GridFunction gh = warped_z_eval(u, fout, eta);
    for (int d : x_axes_of(gh)) gh = x_scale_axis(gh, d, shrink, par.interpolation_order);
    return gh;
}

// The frequency-side core of tau: enlarged frequency axis, arcsinh targets,
// slabwise x expansion (zero beyond the box).
GridFunction tau_frequency_side(const GridFunction& u, const DeformationParams& par,
                                TransformDiagnostics* diag) {
    check_space_z_axis(u);
    const double h = par.hbar;
    const Axis& zax = u.axes[std::size_t(u.z_axis)];
    const Axis fref = conjugate_axis(zax);

    double edge = 0.0;
    double band = fref.half_width() - fref.spacing;
    int count = par.tau_enlarged_count;
    if (count > 0) {
        require(power_of_two(count) && count >= zax.count,
                "tau: pinned enlarged count must be a power of two >= the z count");
        detect_band(u, h, par.band_threshold, &edge);
    } else {
        band = detect_band(u, h, par.band_threshold, &edge);
        const double reach = std::sinh(h * band) / h;
        // Guard in floating point before narrowing: sinh growth can overflow
        // int long before the allocation cap is reached.
        const double needed = 2.0 * reach / fref.spacing;
        ensure(needed <= double(1 << 18),
               "tau: enlarged frequency axis would exceed 2^18 nodes; reduce hbar or grid density");
        count = std::max(next_power_of_two(int(std::ceil(needed))), zax.count);
    }
    ensure(count <= (1 << 18),
           "tau: enlarged frequency axis would exceed 2^18 nodes; reduce hbar or grid density");

    Axis fout;
    fout.spacing = fref.spacing;
    fout.count = count;
    fout.origin = -0.5 * fout.spacing * count;
    fout.frequency = true;

    std::vector<double> compressed(std::size_t(count), 0.0);
    std::vector<double> expand(std::size_t(count), 0.0);
    for (int k = 0; k < count; ++k) {
        const double xi = fout.coord(k);
        const double xt = std::asinh(h * xi) / h;
        compressed[std::size_t(k)] = xt;
        expand[std::size_t(k)] = std::cosh(h * xt / 2.0);
    }

    if (diag) {
        diag->input_boundary_ratio = boundary_ratio(u);
        diag->spectrum_edge_ratio = edge;
        diag->band_limit = band;
        diag->enlarged_count = count;
    }

    GridFunction gh = warped_z_eval(u, fout, compressed);
    for (int d : x_axes_of(gh)) gh = x_scale_axis(gh, d, expand, par.interpolation_order);
    return gh;
}

}  // namespace

void DeformationParams::validate() const {
    require(hbar > 0.0, "DeformationParams: hbar must be positive");
    require(box_half.size() == grid_count.size(), "DeformationParams: box/grid size mismatch");
    for (double b : box_half) require(b > 0.0, "DeformationParams: box half-widths must be positive");
    for (int c : grid_count) require(c >= 1, "DeformationParams: grid counts must be positive");
    require(quadrature_order >= 2, "DeformationParams: quadrature order too small");
    require(interpolation_order == 0 || interpolation_order == 1 || interpolation_order == 3,
            "DeformationParams: interpolation order must be 0, 1, or 3");
    require(band_threshold > 0.0 && band_threshold <= 1e-6,
            "DeformationParams: band threshold out of range");
    require(tau_enlarged_count == 0 || power_of_two(tau_enlarged_count),
            "DeformationParams: pinned tau count must be a power of two");
}

std::vector<Axis> DeformationParams::chart_axes() const {
    validate();
    require(!box_half.empty(), "DeformationParams: no axes configured");
    std::vector<Axis> axes;
    axes.reserve(box_half.size());
    for (std::size_t d = 0; d < box_half.size(); ++d)
        axes.push_back(centered_axis(box_half[d], grid_count[d]));
    return axes;
}

Vec phi_point(const Vec& p, double hbar) {
    require(hbar > 0.0, "phi_point: hbar must be positive");
    require(p.size() >= 2, "phi_point: need at least (a, xi)");
    const int last = int(p.size()) - 1;
    const double xi = p(last);
    Vec q = p;
    for (int i = 1; i < last; ++i) q(i) = p(i) / std::cosh(hbar * xi / 2.0);
    q(last) = std::sinh(hbar * xi) / hbar;
    return q;
}

Vec phi_inverse_point(const Vec& p, double hbar) {
    require(hbar > 0.0, "phi_inverse_point: hbar must be positive");
    require(p.size() >= 2, "phi_inverse_point: need at least (a, xi)");
    const int last = int(p.size()) - 1;
    const double xt = std::asinh(hbar * p(last)) / hbar;
    Vec q = p;
    for (int i = 1; i < last; ++i) q(i) = p(i) * std::cosh(hbar * xt / 2.0);
    q(last) = xt;
    return q;
}

GridFunction phi_pullback(const GridFunction& uhat, const DeformationParams& par,
                          TransformDiagnostics* diag) {
    par.validate();
    require(uhat.z_axis >= 0 && uhat.axes[std::size_t(uhat.z_axis)].frequency,
            "phi_pullback: input must carry a frequency-form z axis");
    return t_frequency_side(inverse_partial_fourier_z(uhat), par, diag);
}

GridFunction phi_inverse_pullback(const GridFunction& uhat, const DeformationParams& par,
                                  TransformDiagnostics* diag) {
    par.validate();
    require(uhat.z_axis >= 0 && uhat.axes[std::size_t(uhat.z_axis)].frequency,
            "phi_inverse_pullback: input must carry a frequency-form z axis");
    return tau_frequency_side(inverse_partial_fourier_z(uhat), par, diag);
}

GridFunction z_transform(const GridFunction& u, const DeformationParams& par,
                         TransformDiagnostics* diag) {
    par.validate();
    check_space_z_axis(u);
    const double h = par.hbar;
    const Axis fout = conjugate_axis(u.axes[std::size_t(u.z_axis)]);
    std::vector<double> eta(std::size_t(fout.count), 0.0);
    for (int k = 0; k < fout.count; ++k) eta[std::size_t(k)] = std::sinh(h * fout.coord(k)) / h;
    if (diag) {
        diag->input_boundary_ratio = boundary_ratio(u);
        diag->band_limit = fout.half_width();
        diag->enlarged_count = fout.count;
        detect_band(u, h, par.band_threshold, &diag->spectrum_edge_ratio);
    }
    return warped_z_eval(u, fout, eta);
}

GridFunction z_inverse(const GridFunction& g, const DeformationParams& par) {
    par.validate();
    require(g.z_axis >= 0 && g.axes[std::size_t(g.z_axis)].frequency,
            "z_inverse: input must carry a frequency-form z axis");
    const double h = par.hbar;
    const Axis& fax = g.axes[std::size_t(g.z_axis)];

    // Position-form coefficients of the trig interpolant, then evaluate it at
    // the compressed points arcsinh(hbar*eta)/hbar for the uniform eta nodes,
    // then invert the uniform transform.
    const GridFunction w = inverse_partial_fourier_z(g);
    std::vector<double> compressed(std::size_t(fax.count), 0.0);
    for (int k = 0; k < fax.count; ++k)
        compressed[std::size_t(k)] = std::asinh(h * fax.coord(k)) / h;
    const GridFunction uh = warped_z_eval(w, fax, compressed);
    return inverse_partial_fourier_z(uh);
}

GridFunction t_hbar(const GridFunction& u, const DeformationParams& par,
                    TransformDiagnostics* diag) {
    par.validate();
    return inverse_partial_fourier_z(t_frequency_side(u, par, diag));
}

GridFunction tau_hbar(const GridFunction& u, const DeformationParams& par,
                      TransformDiagnostics* diag) {
    par.validate();
    return inverse_partial_fourier_z(tau_frequency_side(u, par, diag));
}

}  // namespace anstar

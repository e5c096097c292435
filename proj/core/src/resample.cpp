#include "anstar/resample.hpp"

#include <algorithm>
#include <cmath>

#include "anstar/fourier.hpp"

namespace anstar {

std::vector<cplx> nudft_forward(const Axis& ax, const std::vector<cplx>& line,
                                const std::vector<double>& targets) {
    require(!ax.frequency, "nudft_forward: source axis must be spatial");
    require(int(line.size()) == ax.count, "nudft_forward: line length mismatch");
    const double dz = ax.spacing;
    const double window = pi / dz;  // Nyquist bound of the sampled series
    std::vector<cplx> out(targets.size(), cplx(0.0, 0.0));
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const double xi = targets[t];
        // The representable band is the half-open [-window, window), matching
        // the node set of the conjugate frequency axis; beyond it the series
        // has no content and the value is exactly zero.
        if (xi < -window || xi >= window) continue;
        cplx acc(0.0, 0.0);
        for (int j = 0; j < ax.count; ++j)
            acc += line[std::size_t(j)] * std::exp(-iunit * xi * ax.coord(j));
        out[t] = dz * acc;
    }
    return out;
}

std::vector<cplx> nudft_inverse(const Axis& ax, const std::vector<cplx>& line,
                                const std::vector<double>& targets) {
    require(ax.frequency, "nudft_inverse: source axis must be a frequency axis");
    require(int(line.size()) == ax.count, "nudft_inverse: line length mismatch");
    const double norm = ax.spacing / (2.0 * pi);
    std::vector<cplx> out(targets.size(), cplx(0.0, 0.0));
    for (std::size_t t = 0; t < targets.size(); ++t) {
        cplx acc(0.0, 0.0);
        for (int k = 0; k < ax.count; ++k)
            acc += line[std::size_t(k)] * std::exp(iunit * ax.coord(k) * targets[t]);
        out[t] = norm * acc;
    }
    return out;
}

cplx lagrange_eval(const Axis& ax, const cplx* line, std::size_t stride, double t, int order) {
    require(order == 1 || order == 3, "lagrange_eval: order must be 1 or 3");
    const double s = (t - ax.origin) / ax.spacing;  // fractional index
    if (s < 0.0 || s > double(ax.count - 1)) return cplx(0.0, 0.0);

    const int width = order + 1;
    int lo = int(std::floor(s)) - (order - 1) / 2;
    lo = std::clamp(lo, 0, ax.count - width);

    cplx acc(0.0, 0.0);
    for (int m = 0; m < width; ++m) {
        double w = 1.0;
        for (int r = 0; r < width; ++r) {
            if (r == m) continue;
            w *= (s - double(lo + r)) / double(m - r);
        }
        acc += w * line[std::size_t(lo + m) * stride];
    }
    return acc;
}

GridFunction resample_axis(const GridFunction& u, int axis, const Axis& new_axis,
                           int interp_order) {
    require(axis >= 0 && axis < u.dim(), "resample_axis: bad axis");
    const Axis& old_axis = u.axes[std::size_t(axis)];
    require(old_axis.frequency == new_axis.frequency,
            "resample_axis: axis kind (space/frequency) must be preserved");
    require(interp_order == 0 || interp_order == 1 || interp_order == 3,
            "resample_axis: interpolation order must be 0 (spectral), 1, or 3");

    GridFunction out;
    out.axes = u.axes;
    out.axes[std::size_t(axis)] = new_axis;
    out.z_axis = u.z_axis;
    out.values.assign(out.size(), cplx(0.0, 0.0));
    const std::size_t ostride = out.stride(axis);

    std::vector<double> targets(std::size_t(new_axis.count));
    for (int j = 0; j < new_axis.count; ++j) targets[std::size_t(j)] = new_axis.coord(j);

    if (interp_order == 0) {
        // Trigonometric interpolation: uniform transform to the conjugate
        // representation, non-uniform sum back at the new nodes.
        const GridFunction conj = old_axis.frequency ? inverse_partial_fourier_axis(u, axis)
                                                     : partial_fourier_axis(u, axis);
        const Axis& cax = conj.axes[std::size_t(axis)];
        std::vector<cplx> line(std::size_t(cax.count));
        for_each_line(conj, axis, [&](std::size_t base, std::size_t stride) {
            for (int j = 0; j < cax.count; ++j)
                line[std::size_t(j)] = conj.values[base + std::size_t(j) * stride];
            const std::vector<cplx> vals = old_axis.frequency
                                               ? nudft_forward(cax, line, targets)
                                               : nudft_inverse(cax, line, targets);
            const std::size_t obase = remap_base(conj, out, base);
            for (int j = 0; j < new_axis.count; ++j)
                out.values[obase + std::size_t(j) * ostride] = vals[std::size_t(j)];
        });
    } else {
        for_each_line(u, axis, [&](std::size_t base, std::size_t stride) {
            const std::size_t obase = remap_base(u, out, base);
            for (int j = 0; j < new_axis.count; ++j)
                out.values[obase + std::size_t(j) * ostride] =
                    lagrange_eval(old_axis, u.values.data() + base, stride, targets[std::size_t(j)],
                                  interp_order);
        });
    }
    return out;
}

}  // namespace anstar

#include "anstar/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <vector>

namespace anstar {

namespace {

void check_transform_axis(const Axis& ax) {
    require(ax.count >= 8 && ax.count % 2 == 0,
            "fourier: transform axis count must be even, at least 8");
    require(ax.centered(), "fourier: transform axis must be centered");
}

// One 1D FFT plan reused across all lines of a call.
class PlanBuffer {
  public:
    PlanBuffer(int n, int sign) : buf_(std::size_t(n)) {
        plan_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_.data()),
                                 reinterpret_cast<fftw_complex*>(buf_.data()), sign,
                                 FFTW_ESTIMATE);
        ensure(plan_ != nullptr, "fourier: fftw plan creation failed");
    }
    ~PlanBuffer() { fftw_destroy_plan(plan_); }
    PlanBuffer(const PlanBuffer&) = delete;
    PlanBuffer& operator=(const PlanBuffer&) = delete;

    cplx* data() { return buf_.data(); }
    void run() { fftw_execute(plan_); }

  private:
    std::vector<cplx> buf_;
    fftw_plan plan_;
};

}  // namespace

Axis conjugate_axis(const Axis& ax) {
    Axis out;
    out.count = ax.count;
    out.spacing = 2.0 * pi / (ax.count * ax.spacing);
    out.origin = -0.5 * out.spacing * ax.count;
    out.frequency = !ax.frequency;
    return out;
}

GridFunction partial_fourier_axis(const GridFunction& u, int axis) {
    require(axis >= 0 && axis < u.dim(), "partial_fourier_axis: bad axis");
    const Axis& zax = u.axes[std::size_t(axis)];
    require(!zax.frequency, "partial_fourier_axis: axis already in frequency form");
    check_transform_axis(zax);

    GridFunction out = u;
    out.axes[std::size_t(axis)] = conjugate_axis(zax);
    const Axis& fax = out.axes[std::size_t(axis)];
    const int N = zax.count;
    const double dz = zax.spacing;

    // Pre/post twiddles absorbing the centered origins into a plain DFT.
    std::vector<cplx> pre(std::size_t(N), cplx(0.0)), post(std::size_t(N), cplx(0.0));
    for (int j = 0; j < N; ++j) pre[std::size_t(j)] = std::exp(-iunit * fax.origin * (j * dz));
    for (int k = 0; k < N; ++k)
        post[std::size_t(k)] = dz * std::exp(-iunit * fax.coord(k) * zax.origin);

    PlanBuffer plan(N, FFTW_FORWARD);
    for_each_line(u, axis, [&](std::size_t base, std::size_t stride) {
        for (int j = 0; j < N; ++j)
            plan.data()[j] = u.values[base + std::size_t(j) * stride] * pre[std::size_t(j)];
        plan.run();
        for (int k = 0; k < N; ++k)
            out.values[base + std::size_t(k) * stride] = plan.data()[k] * post[std::size_t(k)];
    });
    return out;
}

GridFunction inverse_partial_fourier_axis(const GridFunction& u, int axis) {
    require(axis >= 0 && axis < u.dim(), "inverse_partial_fourier_axis: bad axis");
    const Axis& fax = u.axes[std::size_t(axis)];
    require(fax.frequency, "inverse_partial_fourier_axis: axis is not in frequency form");
    check_transform_axis(fax);

    GridFunction out = u;
    out.axes[std::size_t(axis)] = conjugate_axis(fax);
    const Axis& zax = out.axes[std::size_t(axis)];
    const int N = fax.count;
    const double dxi = fax.spacing;
    const double norm = dxi / (2.0 * pi);

    std::vector<cplx> pre(std::size_t(N), cplx(0.0)), post(std::size_t(N), cplx(0.0));
    for (int k = 0; k < N; ++k)
        pre[std::size_t(k)] = std::exp(iunit * (k * dxi) * zax.origin);
    for (int j = 0; j < N; ++j)
        post[std::size_t(j)] = norm * std::exp(iunit * fax.origin * zax.coord(j));

    PlanBuffer plan(N, FFTW_BACKWARD);
    for_each_line(u, axis, [&](std::size_t base, std::size_t stride) {
        for (int k = 0; k < N; ++k)
            plan.data()[k] = u.values[base + std::size_t(k) * stride] * pre[std::size_t(k)];
        plan.run();
        for (int j = 0; j < N; ++j)
            out.values[base + std::size_t(j) * stride] = plan.data()[j] * post[std::size_t(j)];
    });
    return out;
}

GridFunction partial_fourier_z(const GridFunction& u) {
    require(u.z_axis >= 0, "partial_fourier_z: grid has no designated z axis");
    return partial_fourier_axis(u, u.z_axis);
}

GridFunction inverse_partial_fourier_z(const GridFunction& u) {
    require(u.z_axis >= 0, "inverse_partial_fourier_z: grid has no designated z axis");
    return inverse_partial_fourier_axis(u, u.z_axis);
}

GridFunction fourier_all_axes(const GridFunction& u) {
    GridFunction g = u;
    for (int d = 0; d < g.dim(); ++d) g = partial_fourier_axis(g, d);
    return g;
}

GridFunction inverse_fourier_all_axes(const GridFunction& u) {
    GridFunction g = u;
    for (int d = 0; d < g.dim(); ++d) g = inverse_partial_fourier_axis(g, d);
    return g;
}

GridFunction spectral_derivative(const GridFunction& u, int axis, int order) {
    require(order >= 0, "spectral_derivative: negative order");
    require(axis >= 0 && axis < u.dim(), "spectral_derivative: bad axis");
    require(!u.axes[std::size_t(axis)].frequency,
            "spectral_derivative: axis must be in position form");
    if (order == 0) return u;

    GridFunction g = partial_fourier_axis(u, axis);
    const Axis& fax = g.axes[std::size_t(axis)];
    const int N = fax.count;
    std::vector<cplx> mult(std::size_t(N), cplx(0.0));
    for (int k = 0; k < N; ++k) mult[std::size_t(k)] = std::pow(iunit * fax.coord(k), order);
    for_each_line(g, axis, [&](std::size_t base, std::size_t stride) {
        for (int k = 0; k < N; ++k) g.values[base + std::size_t(k) * stride] *= mult[std::size_t(k)];
    });
    return inverse_partial_fourier_axis(g, axis);
}

double spectral_edge_ratio(const GridFunction& u, int axis) {
    require(axis >= 0 && axis < u.dim(), "spectral_edge_ratio: bad axis");
    GridFunction g = u.axes[std::size_t(axis)].frequency ? u : partial_fourier_axis(u, axis);
    const int N = g.axes[std::size_t(axis)].count;
    double edge = 0.0, peak = 0.0;
    for_each_line(g, axis, [&](std::size_t base, std::size_t stride) {
        for (int k = 0; k < N; ++k) {
            const double m = std::abs(g.values[base + std::size_t(k) * stride]);
            peak = std::max(peak, m);
            if (k == 0 || k == N - 1) edge = std::max(edge, m);
        }
    });
    return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace anstar

#ifndef ANSTAR_GRID_HPP
#define ANSTAR_GRID_HPP

// Uniform tensor grids of complex samples, row-major with the last axis
// fastest. The axis designated `z_axis` carries the central coordinate of the
// group (or its conjugate frequency after a partial transform); axes flip
// their `frequency` flag as transforms act on them. Transform axes must be
// centered, with even counts of at least 8.

#include <functional>
#include <string>
#include <vector>

#include "anstar/common.hpp"

namespace anstar {

struct Axis {
    double origin = 0.0;
    double spacing = 1.0;
    int count = 0;
    bool frequency = false;

    double coord(int i) const { return origin + spacing * i; }
    double half_width() const { return 0.5 * spacing * count; }
    bool centered() const { return std::abs(origin + 0.5 * spacing * count) < 1e-9 * spacing; }
};

// Centered axis covering [center - half, center + half) with `count` samples.
Axis centered_axis(double half, int count, double center = 0.0);

struct GridFunction {
    std::vector<Axis> axes;
    int z_axis = -1;
    std::vector<cplx> values;

    int dim() const { return int(axes.size()); }
    std::size_t size() const;
    std::size_t stride(int axis) const;  // row-major, last axis fastest
    std::size_t flat(const std::vector<int>& idx) const;
    cplx& at(const std::vector<int>& idx) { return values[flat(idx)]; }
    const cplx& at(const std::vector<int>& idx) const { return values[flat(idx)]; }
    Vec point(std::size_t flat_index) const;  // coordinates of a sample

    double max_abs() const;
};

// Allocate a grid with the given axes (values zero).
GridFunction make_grid(std::vector<Axis> axes, int z_axis);

// Sample an evaluator on the grid nodes.
GridFunction sample_grid(std::vector<Axis> axes, int z_axis,
                         const std::function<cplx(const Vec&)>& f);

// Largest |g1 - g2| over common nodes; grids must share shapes.
double linf_diff(const GridFunction& g1, const GridFunction& g2);

// Continuum L2 norm: sqrt(sum |g|^2 * cell volume).
double l2_norm(const GridFunction& g);

// Largest sample magnitude on the boundary faces relative to the peak; the
// pipeline precondition is that this stays at or below ~1e-12.
double boundary_ratio(const GridFunction& g);

/// Translate a flat offset on grid `from` into the flat offset of the same
// multi-index on grid `to`. The grids must agree on the counts of every axis
// on which the offset has a nonzero index.
inline std::size_t remap_base(const GridFunction& from, const GridFunction& to,
                              std::size_t offset) {
    std::size_t out = 0;
    for (int d = 0; d < from.dim(); ++d) {
        const std::size_t idx = offset / from.stride(d);
        offset %= from.stride(d);
        out += idx * to.stride(d);
    }
    return out;
}

// Iterate the 1D lines along `axis`: fn(base_offset, stride) once per line.
template <typename Fn>
void for_each_line(const GridFunction& g, int axis, Fn&& fn) {
    const std::size_t st = g.stride(axis);
    const int nc = g.axes[std::size_t(axis)].count;
    const std::size_t total = g.size();
    const std::size_t block = st * std::size_t(nc);
    for (std::size_t start = 0; start < total; start += block)
        for (std::size_t off = 0; off < st; ++off) fn(start + off, st);
}

// Serialization: `binary` writes a compact tagged dump, otherwise CSV with
// one sample per row; `read_grid` detects the format from the leading bytes.
void write_grid(const std::string& path, const GridFunction& g, bool binary = true);
GridFunction read_grid(const std::string& path);

}  // namespace anstar

#endif  // ANSTAR_GRID_HPP

#include "anstar/grid.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace anstar {

Axis centered_axis(double half, int count, double center) {
    require(half > 0.0 && count > 0, "centered_axis: bad parameters");
    Axis ax;
    ax.spacing = 2.0 * half / count;
    ax.origin = center - half;
    ax.count = count;
    return ax;
}

std::size_t GridFunction::size() const {
    std::size_t s = 1;
    for (const auto& ax : axes) s *= std::size_t(ax.count);
    return s;
}

std::size_t GridFunction::stride(int axis) const {
    std::size_t s = 1;
    for (std::size_t d = std::size_t(axis) + 1; d < axes.size(); ++d)
        s *= std::size_t(axes[d].count);
    return s;
}

std::size_t GridFunction::flat(const std::vector<int>& idx) const {
    require(idx.size() == axes.size(), "GridFunction: index rank mismatch");
    std::size_t f = 0;
    for (std::size_t d = 0; d < axes.size(); ++d) {
        require(idx[d] >= 0 && idx[d] < axes[d].count, "GridFunction: index out of range");
        f = f * std::size_t(axes[d].count) + std::size_t(idx[d]);
    }
    return f;
}

Vec GridFunction::point(std::size_t flat_index) const {
    Vec p(dim());
    for (int d = dim() - 1; d >= 0; --d) {
        const std::size_t nc = std::size_t(axes[std::size_t(d)].count);
        p(d) = axes[std::size_t(d)].coord(int(flat_index % nc));
        flat_index /= nc;
    }
    return p;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

GridFunction make_grid(std::vector<Axis> axes, int z_axis) {
    require(!axes.empty(), "make_grid: no axes");
    require(z_axis >= -1 && z_axis < int(axes.size()), "make_grid: bad z axis");
    for (const auto& ax : axes) require(ax.count >= 1, "make_grid: empty axis");
    GridFunction g;
    g.axes = std::move(axes);
    g.z_axis = z_axis;
    g.values.assign(g.size(), cplx(0.0));
    return g;
}

GridFunction sample_grid(std::vector<Axis> axes, int z_axis,
                         const std::function<cplx(const Vec&)>& f) {
    GridFunction g = make_grid(std::move(axes), z_axis);
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = f(g.point(i));
    return g;
}

double linf_diff(const GridFunction& g1, const GridFunction& g2) {
    require(g1.values.size() == g2.values.size(), "linf_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < g1.values.size(); ++i)
        m = std::max(m, std::abs(g1.values[i] - g2.values[i]));
    return m;
}

double l2_norm(const GridFunction& g) {
    double cell = 1.0;
    for (const Axis& ax : g.axes) cell *= ax.spacing;
    double s = 0.0;
    for (const cplx& v : g.values) s += std::norm(v);
    return std::sqrt(s * cell);
}

double boundary_ratio(const GridFunction& g) {
    const double peak = g.max_abs();
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    std::vector<int> idx(std::size_t(g.dim()), 0);
    const std::size_t total = g.size();
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t rest = f;
        bool on_edge = false;
        for (int d = g.dim() - 1; d >= 0; --d) {
            const int nc = g.axes[std::size_t(d)].count;
            const int i = int(rest % std::size_t(nc));
            rest /= std::size_t(nc);
            if (i == 0 || i == nc - 1) on_edge = true;
        }
        if (on_edge) edge = std::max(edge, std::abs(g.values[f]));
    }
    return edge / peak;
}

namespace {

constexpr char kMagic[8] = {'A', 'N', 'S', 'G', '1', '\n', 0, 0};

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

void write_binary(std::ostream& os, const GridFunction& g) {
    os.write(kMagic, sizeof(kMagic));
    put<std::int32_t>(os, g.dim());
    put<std::int32_t>(os, g.z_axis);
    for (const auto& ax : g.axes) {
        put<double>(os, ax.origin);
        put<double>(os, ax.spacing);
        put<std::int32_t>(os, ax.count);
        put<std::int32_t>(os, ax.frequency ? 1 : 0);
    }
    for (const auto& v : g.values) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
}

GridFunction read_binary(std::istream& is) {
    const int dim = get<std::int32_t>(is);
    const int z_axis = get<std::int32_t>(is);
    ensure(dim >= 1 && dim <= 8, "read_grid: corrupt header");
    auto axes = std::vector<Axis>(std::size_t(dim));
    for (auto& ax : axes) {
        ax.origin = get<double>(is);
        ax.spacing = get<double>(is);
        ax.count = get<std::int32_t>(is);
        ax.frequency = get<std::int32_t>(is) != 0;
    }
    GridFunction g = make_grid(std::move(axes), z_axis);
    for (auto& v : g.values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = cplx(re, im);
    }
    ensure(bool(is), "read_grid: truncated binary payload");
    return g;
}

void write_csv(std::ostream& os, const GridFunction& g) {
    os.precision(17);
    os << "# anstar-grid csv v1\n";
    os << "# z_axis " << g.z_axis << "\n";
    for (const auto& ax : g.axes)
        os << "# axis " << ax.origin << " " << ax.spacing << " " << ax.count << " "
           << (ax.frequency ? 1 : 0) << "\n";
    for (std::size_t f = 0; f < g.values.size(); ++f)
        os << g.values[f].real() << "," << g.values[f].imag() << "\n";
}

GridFunction read_csv(std::istream& is) {
    std::string line;
    ensure(bool(std::getline(is, line)) && line == "# anstar-grid csv v1",
           "read_grid: unknown format");
    ensure(bool(std::getline(is, line)) && line.rfind("# z_axis ", 0) == 0,
           "read_grid: missing z_axis header");
    const int z_axis = std::stoi(line.substr(9));
    std::vector<Axis> axes;
    std::streampos data_start = is.tellg();
    while (std::getline(is, line)) {
        if (line.rfind("# axis ", 0) != 0) break;
        std::istringstream ls(line.substr(7));
        Axis ax;
        int freq = 0;
        ls >> ax.origin >> ax.spacing >> ax.count >> freq;
        ensure(bool(ls), "read_grid: bad axis header");
        ax.frequency = freq != 0;
        axes.push_back(ax);
        data_start = is.tellg();
    }
    is.clear();
    is.seekg(data_start);
    GridFunction g = make_grid(std::move(axes), z_axis);
    for (auto& v : g.values) {
        ensure(bool(std::getline(is, line)), "read_grid: truncated csv payload");
        const auto comma = line.find(',');
        ensure(comma != std::string::npos, "read_grid: bad csv row");
        v = cplx(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return g;
}

}  // namespace

void write_grid(const std::string& path, const GridFunction& g, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    ensure(bool(os), "write_grid: cannot open " + path);
    if (binary)
        write_binary(os, g);
    else
        write_csv(os, g);
    ensure(bool(os), "write_grid: write failed for " + path);
}

GridFunction read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    ensure(bool(is), "read_grid: cannot open " + path);
    char head[8] = {};
    is.read(head, sizeof(head));
    if (std::memcmp(head, kMagic, sizeof(kMagic)) == 0) return read_binary(is);
    is.clear();
    is.seekg(0);
    return read_csv(is);
}

}  // namespace anstar

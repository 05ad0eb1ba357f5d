#include "isoschatten/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace isoschatten {

double RasterDomain::discrete_measure() const {
    return double(cells.size()) * std::pow(h, dimension);
}

Point RasterDomain::cell_center(size_t index) const {
    const auto& c = cells.at(index);
    Point p{0.0, 0.0, 0.0};
    for (int k = 0; k < dimension; ++k) p[k] = origin[k] + (c[k] + 0.5) * h;
    return p;
}

RasterDomain rasterize(const Domain& domain, int n) {
    if (n < 4) fail(ErrorCode::InvalidArgument, "raster resolution must be >= 4");
    const int d = domain.dimension();
    const auto [lo, hi] = domain.bounding_box();
    double longest = 0.0;
    for (int k = 0; k < d; ++k) longest = std::max(longest, hi[k] - lo[k]);
    const double h = longest / n;

    RasterDomain out;
    out.dimension = d;
    out.h = h;
    out.origin = lo;
    out.analytic_measure = domain.measure();
    out.label = domain.kind();
    for (int k = 0; k < d; ++k) {
        const double extent = hi[k] - lo[k];
        out.dims[k] = std::max(1, int(std::ceil(extent / h - 1e-9)));
    }

    std::array<int, 3> idx{0, 0, 0};
    const int nx = out.dims[0], ny = out.dims[1], nz = out.dims[2];
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            for (int k = 0; k < nz; ++k) {
                idx = {i, j, k};
                Point center{0.0, 0.0, 0.0};
                for (int a = 0; a < d; ++a) center[a] = lo[a] + (idx[a] + 0.5) * h;
                if (domain.contains(center)) out.cells.push_back(idx);
            }
        }
    }
    if (out.cells.empty()) fail(ErrorCode::EmptyRaster, "no cell center inside domain");
    return out;
}

RasterDomain steiner_symmetrize_raster(const RasterDomain& raster, int axis) {
    if (axis < 0 || axis >= raster.dimension)
        fail(ErrorCode::InvalidArgument, "axis out of range");
    if (raster.cells.empty()) fail(ErrorCode::EmptyRaster, "empty raster");

    // Key = indices on the other axes; value = occupied count on the line.
    std::map<std::array<int, 2>, int> lines;
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    for (const auto& c : raster.cells) lines[{c[a1], c[a2]}]++;

    RasterDomain out = raster;
    out.cells.clear();
    const int extent = raster.dims[axis];
    for (const auto& [key, count] : lines) {
        // Contiguous run of `count` cells centered on the grid mid-plane
        // extent/2 (in face coordinates); a half-cell mismatch shifts the run
        // toward the negative side.
        const int start = (extent - count) / 2;  // floor for non-negative values
        for (int i = 0; i < count; ++i) {
            std::array<int, 3> c{0, 0, 0};
            c[axis] = start + i;
            c[a1] = key[0];
            c[a2] = key[1];
            out.cells.push_back(c);
        }
    }
    std::sort(out.cells.begin(), out.cells.end());
    return out;
}

void write_cell_centers_csv(const RasterDomain& raster, std::ostream& os) {
    static const char* headers[] = {"x", "x,y", "x,y,z"};
    os << headers[raster.dimension - 1] << "\n";
    char buf[96];
    for (size_t i = 0; i < raster.cells.size(); ++i) {
        const Point p = raster.cell_center(i);
        if (raster.dimension == 1)
            std::snprintf(buf, sizeof buf, "%.17g\n", p[0]);
        else if (raster.dimension == 2)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p[0], p[1]);
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p[0], p[1], p[2]);
        os << buf;
    }
}

}  // namespace isoschatten

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "isoschatten/geometry.hpp"

namespace isoschatten {

// Uniform-grid indicator of a domain. Cell (i,j,k) occupies
// origin + [i,i+1) x [j,j+1) x [k,k+1) scaled by h; its center is the
// quadrature node. `dims` is the full grid extent per axis (1 on unused
// axes); occupied cell indices lie in [0, dims).
struct RasterDomain {
    int dimension = 0;
    double h = 0.0;
    Point origin{0.0, 0.0, 0.0};
    std::array<int, 3> dims{1, 1, 1};
    std::vector<std::array<int, 3>> cells;
    // Analytic measure of the source domain; calibrates quadrature weights so
    // equimeasure comparisons are not polluted by raster measure error.
    double analytic_measure = 0.0;
    std::string label;

    double discrete_measure() const;
    Point cell_center(size_t index) const;
};

// Rasterizes with cell edge h = (longest bounding-box extent)/n; a cell
// belongs to the raster iff its center lies in the open domain.
// Throws EmptyRaster when no center falls inside.
RasterDomain rasterize(const Domain& domain, int n);

// Steiner symmetrization along a lattice axis: each line of occupied cells
// parallel to `axis` is replaced by the same count of contiguous cells
// centered on the grid mid-plane, ties broken toward the negative side.
// Cell count is preserved exactly.
RasterDomain steiner_symmetrize_raster(const RasterDomain& raster, int axis);

// CSV of occupied cell centers (one row per cell, `x[,y[,z]]` columns).
void write_cell_centers_csv(const RasterDomain& raster, std::ostream& os);

}  // namespace isoschatten

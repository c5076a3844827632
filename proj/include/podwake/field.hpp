#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "podwake/types.hpp"

namespace podwake {

/// The snapshot matrix of a series: entry (p, t) is the component value at
/// grid point p and snapshot t. The series already stores its data in this
/// layout, so this is a zero-copy view.
template <typename Scalar>
const MatrixX<Scalar>& assemble_snapshot_matrix(const SnapshotSeries<Scalar>& series) {
    return series.data;
}

/// Restricts a series to the grid points inside [xmin,xmax] x [ymin,ymax].
/// Boundary points are included; the returned grid's origin is the first
/// retained point. Throws RegionError when the intersection is empty.
template <typename Scalar>
SnapshotSeries<Scalar> extract_box(const SnapshotSeries<Scalar>& series, const BoxRegion& box) {
    box.validate();
    const StructuredGrid& g = series.grid;
    g.validate();

    // Index-space tolerance keeps points lying exactly on a bound inside
    // the closed interval despite coordinate roundoff.
    const double tol = 1e-9;
    auto lo = [&](double bmin, double origin, double step) {
        return static_cast<Index>(std::ceil((bmin - origin) / step - tol));
    };
    auto hi = [&](double bmax, double origin, double step) {
        return static_cast<Index>(std::floor((bmax - origin) / step + tol));
    };
    Index i_lo = std::max<Index>(lo(box.xmin, g.x0, g.dx), 0);
    Index i_hi = std::min<Index>(hi(box.xmax, g.x0, g.dx), g.nx - 1);
    Index j_lo = std::max<Index>(lo(box.ymin, g.y0, g.dy), 0);
    Index j_hi = std::min<Index>(hi(box.ymax, g.y0, g.dy), g.ny - 1);

    if (i_lo > i_hi || j_lo > j_hi)
        throw RegionError("box does not intersect the grid extent");

    StructuredGrid sub;
    sub.nx = i_hi - i_lo + 1;
    sub.ny = j_hi - j_lo + 1;
    sub.dx = g.dx;
    sub.dy = g.dy;
    sub.x0 = g.x(i_lo);
    sub.y0 = g.y(j_lo);

    SnapshotSeries<Scalar> out;
    out.grid = sub;
    out.component = series.component;
    out.dt = series.dt;
    out.data.resize(sub.size(), series.n_snapshots());
    for (Index j = 0; j < sub.ny; ++j) {
        out.data.middleRows(j * sub.nx, sub.nx) =
            series.data.middleRows(g.point(i_lo, j_lo + j), sub.nx);
    }
    return out;
}

/// Splits a series into its per-point time average and the fluctuation
/// series around it. Adding the mean back reproduces the input to machine
/// precision.
template <typename Scalar>
std::pair<VectorX<Scalar>, SnapshotSeries<Scalar>>
subtract_mean(const SnapshotSeries<Scalar>& series) {
    VectorX<Scalar> mean = series.data.rowwise().mean();
    SnapshotSeries<Scalar> fluct = series;
    fluct.data.colwise() -= mean;
    return {std::move(mean), std::move(fluct)};
}

} // namespace podwake

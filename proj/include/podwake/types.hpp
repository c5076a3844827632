#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "podwake/errors.hpp"

namespace podwake {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Velocity component held by a snapshot series.
enum class Component { streamwise, transversal };

/// File key of a component ("u" for streamwise, "v" for transversal).
inline const char* component_key(Component c) {
    return c == Component::streamwise ? "u" : "v";
}

inline const char* component_name(Component c) {
    return c == Component::streamwise ? "streamwise" : "transversal";
}

/// Parses "u"/"v"/"streamwise"/"transversal" into a Component.
inline Component parse_component(const std::string& s) {
    if (s == "u" || s == "streamwise") return Component::streamwise;
    if (s == "v" || s == "transversal") return Component::transversal;
    throw ArgumentError("unknown component '" + s +
                        "' (expected u, v, streamwise, or transversal)");
}

/// Uniform 2D Cartesian grid. Point index (i, j) sits at
/// (x0 + i*dx, y0 + j*dy); the flat point index is j*nx + i, so x runs
/// fastest (row-major x-fastest ordering).
struct StructuredGrid {
    Index nx = 0;
    Index ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;

    Index size() const { return nx * ny; }

    double x(Index i) const { return x0 + static_cast<double>(i) * dx; }
    double y(Index j) const { return y0 + static_cast<double>(j) * dy; }
    double x_max() const { return x(nx - 1); }
    double y_max() const { return y(ny - 1); }

    /// Flat index of point (i, j), x-fastest.
    Index point(Index i, Index j) const { return j * nx + i; }

    void validate() const {
        if (nx < 1 || ny < 1)
            throw ArgumentError("grid dimensions must satisfy nx >= 1, ny >= 1");
        if (!(dx > 0.0) || !(dy > 0.0))
            throw ArgumentError("grid spacing must satisfy dx > 0, dy > 0");
        if (!std::isfinite(dx) || !std::isfinite(dy) ||
            !std::isfinite(x0) || !std::isfinite(y0))
            throw ArgumentError("grid geometry must be finite");
    }

    bool operator==(const StructuredGrid& o) const {
        return nx == o.nx && ny == o.ny && dx == o.dx && dy == o.dy &&
               x0 == o.x0 && y0 == o.y0;
    }
    bool operator!=(const StructuredGrid& o) const { return !(*this == o); }
};

/// Rectangular analysis window in physical coordinates. Points on the
/// boundary are included when extracting.
struct BoxRegion {
    double xmin = 0.0;
    double xmax = 0.0;
    double ymin = 0.0;
    double ymax = 0.0;

    void validate() const {
        if (!(xmin < xmax) || !(ymin < ymax))
            throw ArgumentError("box requires xmin < xmax and ymin < ymax");
    }
};

/// One velocity component sampled on a grid at uniform time intervals.
/// data has grid.size() rows (points, x-fastest) and one column per
/// snapshot, time-ordered. Treated as immutable: every operation on a
/// series is a pure function returning new values.
template <typename Scalar>
struct SnapshotSeries {
    StructuredGrid grid;
    Component component = Component::streamwise;
    double dt = 0.0;
    MatrixX<Scalar> data;

    Index n_points() const { return data.rows(); }
    Index n_snapshots() const { return data.cols(); }

    void validate() const {
        grid.validate();
        if (data.rows() != grid.size())
            throw DimensionError("series has " + std::to_string(data.rows()) +
                                 " rows but grid has " +
                                 std::to_string(grid.size()) + " points");
        if (data.cols() < 1)
            throw DimensionError("series needs at least one snapshot");
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw ArgumentError("snapshot interval dt must be positive");
        if (!data.allFinite())
            throw DataError("series contains non-finite values");
    }
};

using SnapshotSeriesd = SnapshotSeries<double>;

} // namespace podwake

#pragma once

#include <cmath>
#include <utility>

#include "podwake/types.hpp"

namespace podwake {

/// Temporal mean of every grid point over all snapshots.
template <typename Scalar>
VectorX<Scalar> time_average(const SnapshotSeries<Scalar>& series) {
    series.validate();
    return series.data.rowwise().mean();
}

/// Time-averaged velocity along a vertical (constant-x) line, with
/// coordinates normalized by the rotor diameter.
template <typename Scalar>
struct StationProfile {
    double station_x_over_D = 0.0;   // actual sampled station, after snapping
    VectorX<Scalar> y_over_D;
    VectorX<Scalar> mean_velocity;
    Component component = Component::streamwise;
};

using StationProfiled = StationProfile<double>;

namespace detail {

/// Nearest grid column to x = station_x_over_D * diameter; exact midpoints
/// resolve to the lower index. Throws RegionError outside the x extent.
inline Index station_column(const StructuredGrid& g, double station_x_over_D,
                            double diameter) {
    if (!(diameter > 0.0))
        throw ArgumentError("station lookup requires diameter > 0");
    const double x_target = station_x_over_D * diameter;
    const double tol = 1e-9 * g.dx;
    if (x_target < g.x0 - tol || x_target > g.x_max() + tol)
        throw RegionError("station x = " + std::to_string(x_target) +
                          " lies outside the grid x extent [" + std::to_string(g.x0) +
                          ", " + std::to_string(g.x_max()) + "]");
    const double q = (x_target - g.x0) / g.dx;
    Index i = static_cast<Index>(std::ceil(q - 0.5));
    return std::max(Index(0), std::min(i, g.nx - 1));
}

} // namespace detail

/// Extracts a vertical profile of a mean field at the grid column nearest
/// to x = station_x_over_D * diameter (no interpolation).
template <typename Scalar>
StationProfile<Scalar> profile_at_station(const VectorX<Scalar>& mean_field,
                                          const StructuredGrid& grid, Component component,
                                          double station_x_over_D, double diameter) {
    grid.validate();
    if (mean_field.size() != grid.size())
        throw DimensionError("mean field has " + std::to_string(mean_field.size()) +
                             " values but the grid has " + std::to_string(grid.size()) +
                             " points");
    const Index i = detail::station_column(grid, station_x_over_D, diameter);

    StationProfile<Scalar> prof;
    prof.station_x_over_D = grid.x(i) / diameter;
    prof.component = component;
    prof.y_over_D.resize(grid.ny);
    prof.mean_velocity.resize(grid.ny);
    for (Index j = 0; j < grid.ny; ++j) {
        prof.y_over_D(j) = grid.y(j) / diameter;
        prof.mean_velocity(j) = mean_field(grid.point(i, j));
    }
    return prof;
}

/// Convenience overload: time-averages the series first.
template <typename Scalar>
StationProfile<Scalar> profile_at_station(const SnapshotSeries<Scalar>& series,
                                          double station_x_over_D, double diameter) {
    const VectorX<Scalar> mean = time_average(series);
    return profile_at_station<Scalar>(mean, series.grid, series.component,
                                      station_x_over_D, diameter);
}

/// Summary of a station's deficit profile: peak deficit as a fraction of
/// the free stream, and the full width at half that maximum in diameters.
struct DeficitStats {
    double max_deficit_fraction = 0.0;
    double half_deficit_width_over_D = 0.0;
};

/// Measures the deficit (u_inf - u)/u_inf along a station profile. The
/// half-max width interpolates linearly between samples at the outermost
/// crossings; a profile that never dips below u_inf reports zero width.
template <typename Scalar>
DeficitStats deficit_stats(const StationProfile<Scalar>& profile, double u_inf) {
    if (!(u_inf > 0.0))
        throw ArgumentError("deficit_stats requires u_inf > 0");
    if (profile.y_over_D.size() != profile.mean_velocity.size() ||
        profile.y_over_D.size() < 1)
        throw DimensionError("profile arrays must be non-empty and equally sized");

    const Index n = profile.y_over_D.size();
    VectorX<double> deficit(n);
    for (Index j = 0; j < n; ++j)
        deficit(j) = (u_inf - static_cast<double>(profile.mean_velocity(j))) / u_inf;

    DeficitStats out;
    Index j_peak = 0;
    out.max_deficit_fraction = deficit.maxCoeff(&j_peak);
    if (out.max_deficit_fraction <= 0.0) {
        out.max_deficit_fraction = std::max(out.max_deficit_fraction, 0.0);
        return out;
    }

    const double half = 0.5 * out.max_deficit_fraction;
    auto cross = [&](Index a, Index b) {
        // y/D where the deficit crosses half-max between samples a and b
        const double da = deficit(a), db = deficit(b);
        const double ya = static_cast<double>(profile.y_over_D(a));
        const double yb = static_cast<double>(profile.y_over_D(b));
        if (da == db) return ya;
        return ya + (half - da) / (db - da) * (yb - ya);
    };

    // outermost half-max crossings walking outward from the peak
    double y_lo = static_cast<double>(profile.y_over_D(0));
    for (Index j = j_peak; j-- > 0;) {
        if (deficit(j) < half) {
            y_lo = cross(j, j + 1);
            break;
        }
    }
    double y_hi = static_cast<double>(profile.y_over_D(n - 1));
    for (Index j = j_peak + 1; j < n; ++j) {
        if (deficit(j) < half) {
            y_hi = cross(j - 1, j);
            break;
        }
    }
    out.half_deficit_width_over_D = y_hi - y_lo;
    return out;
}

/// Downstream distance at which the wake has recovered.
struct CollapseResult {
    double x_over_D = 0.0;
    double threshold = 0.0;
    bool collapsed = true;
};

/// Scans every streamwise station of a mean field, measuring the peak
/// deficit fraction over the vertical profile, and reports the smallest
/// station x/D at which the deficit is below the threshold and stays below
/// for all greater x in-domain. A wake already below the threshold
/// everywhere yields x/D = 0; one still above it at the last station yields
/// the domain's maximum x/D with collapsed = false.
template <typename Scalar>
CollapseResult collapse_length(const VectorX<Scalar>& mean_field, const StructuredGrid& grid,
                               double u_inf, double diameter, double threshold) {
    grid.validate();
    if (mean_field.size() != grid.size())
        throw DimensionError("mean field size does not match the grid");
    if (!(u_inf > 0.0) || !(diameter > 0.0))
        throw ArgumentError("collapse_length requires u_inf > 0 and diameter > 0");
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw ArgumentError("collapse threshold must lie in (0, 1)");

    CollapseResult out;
    out.threshold = threshold;

    Index last_exceed = -1;
    for (Index i = 0; i < grid.nx; ++i) {
        double max_deficit = 0.0;
        for (Index j = 0; j < grid.ny; ++j) {
            const double d =
                (u_inf - static_cast<double>(mean_field(grid.point(i, j)))) / u_inf;
            max_deficit = std::max(max_deficit, d);
        }
        if (max_deficit > threshold) last_exceed = i;
    }

    if (last_exceed < 0) {
        out.x_over_D = 0.0;   // collapsed everywhere, no downstream distance needed
        out.collapsed = true;
    } else if (last_exceed == grid.nx - 1) {
        out.x_over_D = grid.x_max() / diameter;
        out.collapsed = false;
    } else {
        out.x_over_D = grid.x(last_exceed + 1) / diameter;
        out.collapsed = true;
    }
    return out;
}

/// Convenience overload: time-averages the series first.
template <typename Scalar>
CollapseResult collapse_length(const SnapshotSeries<Scalar>& series, double u_inf,
                               double diameter, double threshold) {
    const VectorX<Scalar> mean = time_average(series);
    return collapse_length<Scalar>(mean, series.grid, u_inf, diameter, threshold);
}

} // namespace podwake

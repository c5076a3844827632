#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "podwake/field.hpp"
#include "podwake/wake_metrics.hpp"

using namespace podwake;
using Eigen::VectorXd;

namespace {

/// Analytic wake mean: u_inf * (1 - A exp(-x/Lc) exp(-y^2 / 2w^2)).
VectorXd gaussian_wake_field(const StructuredGrid& g, double u_inf, double amp,
                             double lc, double width) {
    VectorXd field(g.size());
    for (Index j = 0; j < g.ny; ++j)
        for (Index i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            field(g.point(i, j)) =
                u_inf * (1.0 - amp * std::exp(-x / lc) *
                                   std::exp(-y * y / (2.0 * width * width)));
        }
    return field;
}

SnapshotSeriesd series_on(const StructuredGrid& g, const Eigen::MatrixXd& data) {
    SnapshotSeriesd s;
    s.grid = g;
    s.component = Component::streamwise;
    s.dt = 0.1;
    s.data = data;
    return s;
}

} // namespace

TEST_CASE("time average reduces snapshots pointwise") {
    const StructuredGrid g{3, 2, 1.0, 1.0, 0.0, 0.0};

    SUBCASE("constant series") {
        const SnapshotSeriesd s = series_on(g, Eigen::MatrixXd::Constant(6, 4, 2.5));
        const VectorXd mean = time_average(s);
        CHECK((mean.array() == 2.5).all());
    }
    SUBCASE("symmetric fluctuations cancel") {
        Eigen::MatrixXd data(6, 2);
        data.col(0) = VectorXd::Constant(6, 2.0) + VectorXd::Constant(6, 0.5);
        data.col(1) = VectorXd::Constant(6, 2.0) - VectorXd::Constant(6, 0.5);
        const VectorXd mean = time_average(series_on(g, data));
        CHECK((mean.array() == 2.0).all());
    }
    SUBCASE("agrees bitwise with the mean split off by subtract_mean") {
        const SnapshotSeriesd s = series_on(g, oracles::random_matrix(6, 9, 17));
        const auto [mean, fluct] = subtract_mean(s);
        CHECK(time_average(s) == mean);
    }
    SUBCASE("validation failures propagate") {
        SnapshotSeriesd bad = series_on(g, Eigen::MatrixXd::Zero(5, 2));
        CHECK_THROWS_AS(time_average(bad), DimensionError);
    }
}

TEST_CASE("station profiles pick the nearest grid column verbatim") {
    const StructuredGrid g{5, 3, 1.0, 0.5, 0.0, -0.5};
    const double diameter = 2.0;
    VectorXd field(g.size());
    for (Index j = 0; j < g.ny; ++j)
        for (Index i = 0; i < g.nx; ++i)
            field(g.point(i, j)) = 100.0 * static_cast<double>(i) + static_cast<double>(j);

    SUBCASE("exact station") {
        const StationProfiled p =
            profile_at_station(field, g, Component::streamwise, 1.0, diameter);
        CHECK(p.station_x_over_D == doctest::Approx(1.0));
        REQUIRE(p.mean_velocity.size() == 3);
        for (Index j = 0; j < 3; ++j) {
            CHECK(p.mean_velocity(j) == 200.0 + static_cast<double>(j));
            CHECK(p.y_over_D(j) ==
                  doctest::Approx((-0.5 + 0.5 * static_cast<double>(j)) / diameter));
        }
        CHECK(p.component == Component::streamwise);
    }
    SUBCASE("midway stations snap to the lower column") {
        // x target 1.5 sits exactly between columns 1 and 2
        const StationProfiled p =
            profile_at_station(field, g, Component::streamwise, 0.75, diameter);
        CHECK(p.station_x_over_D == doctest::Approx(0.5));
        CHECK(p.mean_velocity(0) == 100.0);
    }
    SUBCASE("off-midpoint stations snap to the nearest column") {
        const StationProfiled p =
            profile_at_station(field, g, Component::streamwise, 0.76, diameter);
        CHECK(p.mean_velocity(0) == 200.0);
    }
    SUBCASE("stations outside the x extent are rejected") {
        CHECK_THROWS_AS(
            profile_at_station(field, g, Component::streamwise, 99.0, diameter),
            RegionError);
        CHECK_THROWS_AS(
            profile_at_station(field, g, Component::streamwise, -0.1, diameter),
            RegionError);
    }
    SUBCASE("the extent boundary itself is fine") {
        const StationProfiled p =
            profile_at_station(field, g, Component::streamwise, 2.0, diameter);
        CHECK(p.mean_velocity(0) == 400.0);
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(
            profile_at_station(field, g, Component::streamwise, 1.0, 0.0),
            ArgumentError);
        VectorXd wrong(g.size() + 1);
        wrong.setZero();
        CHECK_THROWS_AS(
            profile_at_station(wrong, g, Component::streamwise, 1.0, diameter),
            DimensionError);
    }
}

TEST_CASE("profile of a series equals profile of its time average") {
    const StructuredGrid g{8, 5, 0.5, 0.25, 0.0, -0.5};
    const SnapshotSeriesd s = series_on(g, oracles::random_matrix(g.size(), 7, 404));
    const StationProfiled direct = profile_at_station(s, 1.5, 1.0);
    const StationProfiled via_mean =
        profile_at_station(time_average(s), g, s.component, 1.5, 1.0);
    CHECK(direct.mean_velocity == via_mean.mean_velocity);
    CHECK(direct.y_over_D == via_mean.y_over_D);
    CHECK(direct.station_x_over_D == via_mean.station_x_over_D);
}

TEST_CASE("deficit statistics recover the analytic Gaussian profile") {
    const double u_inf = 9.1;
    const double width = 0.3;

    StationProfiled prof;
    prof.component = Component::streamwise;
    const Index n = 301;
    prof.y_over_D.resize(n);
    prof.mean_velocity.resize(n);
    for (Index j = 0; j < n; ++j) {
        const double y = -1.5 + 0.01 * static_cast<double>(j);
        prof.y_over_D(j) = y;   // diameter 1: y equals y/D
        prof.mean_velocity(j) =
            u_inf * (1.0 - 0.5 * std::exp(-y * y / (2.0 * width * width)));
    }

    const DeficitStats stats = deficit_stats(prof, u_inf);
    CHECK(stats.max_deficit_fraction == doctest::Approx(0.5).epsilon(1e-9));
    const double expected_fwhm = 2.0 * width * std::sqrt(2.0 * std::log(2.0));
    CHECK(std::abs(stats.half_deficit_width_over_D - expected_fwhm) <=
          0.02 * expected_fwhm);

    SUBCASE("width is invariant under a vertical shift of the wake") {
        StationProfiled shifted = prof;
        for (Index j = 0; j < n; ++j) {
            const double y = shifted.y_over_D(j) - 0.4;
            shifted.mean_velocity(j) =
                u_inf * (1.0 - 0.5 * std::exp(-y * y / (2.0 * width * width)));
        }
        const DeficitStats s2 = deficit_stats(shifted, u_inf);
        CHECK(std::abs(s2.half_deficit_width_over_D - expected_fwhm) <=
              0.02 * expected_fwhm);
    }
}

TEST_CASE("deficit statistics handle degenerate profiles") {
    StationProfiled prof;
    prof.y_over_D.resize(5);
    prof.mean_velocity.resize(5);
    for (Index j = 0; j < 5; ++j) prof.y_over_D(j) = static_cast<double>(j);

    SUBCASE("uniform free stream: no deficit, no width") {
        prof.mean_velocity.setConstant(4.0);
        const DeficitStats stats = deficit_stats(prof, 4.0);
        CHECK(stats.max_deficit_fraction == 0.0);
        CHECK(stats.half_deficit_width_over_D == 0.0);
    }
    SUBCASE("speed-up everywhere clamps the deficit at zero") {
        prof.mean_velocity.setConstant(5.0);
        const DeficitStats stats = deficit_stats(prof, 4.0);
        CHECK(stats.max_deficit_fraction == 0.0);
        CHECK(stats.half_deficit_width_over_D == 0.0);
    }
    SUBCASE("peak at the domain edge extends the width to that edge") {
        // deficit rises linearly to the right edge: 0, 0.1, 0.2, 0.3, 0.4
        for (Index j = 0; j < 5; ++j)
            prof.mean_velocity(j) = 4.0 * (1.0 - 0.1 * static_cast<double>(j));
        const DeficitStats stats = deficit_stats(prof, 4.0);
        CHECK(stats.max_deficit_fraction == doctest::Approx(0.4));
        // half-max 0.2 crossed exactly at y = 2 on the left, clamped at y = 4
        CHECK(stats.half_deficit_width_over_D == doctest::Approx(2.0));
    }
    SUBCASE("invalid arguments") {
        prof.mean_velocity.setConstant(4.0);
        CHECK_THROWS_AS(deficit_stats(prof, 0.0), ArgumentError);
        StationProfiled empty;
        CHECK_THROWS_AS(deficit_stats(empty, 4.0), DimensionError);
    }
}

TEST_CASE("collapse length finds the recovery station of an analytic wake") {
    const double u_inf = 9.1, amp = 0.5, lc = 2.0, width = 0.4, diameter = 1.0;
    const StructuredGrid g{81, 41, 0.1, 0.05, 0.0, -1.0};
    const VectorXd field = gaussian_wake_field(g, u_inf, amp, lc, width);

    SUBCASE("analytic crossing, resolved to one grid step") {
        const CollapseResult r = collapse_length(field, g, u_inf, diameter, 0.1);
        CHECK(r.collapsed);
        CHECK(r.threshold == 0.1);
        const double x_star = lc * std::log(amp / 0.1);   // 3.219
        CHECK(r.x_over_D >= x_star / diameter);
        CHECK(r.x_over_D <= x_star / diameter + g.dx / diameter + 1e-12);
    }
    SUBCASE("tighter thresholds push the station downstream") {
        const double x_tight = collapse_length(field, g, u_inf, diameter, 0.05).x_over_D;
        const double x_mid = collapse_length(field, g, u_inf, diameter, 0.1).x_over_D;
        const double x_loose = collapse_length(field, g, u_inf, diameter, 0.2).x_over_D;
        CHECK(x_tight > x_mid);
        CHECK(x_mid > x_loose);
    }
    SUBCASE("fully recovered field reports zero distance") {
        const VectorXd flat = VectorXd::Constant(g.size(), u_inf);
        const CollapseResult r = collapse_length(flat, g, u_inf, diameter, 0.1);
        CHECK(r.collapsed);
        CHECK(r.x_over_D == 0.0);
    }
    SUBCASE("wake still strong at the outlet is flagged not collapsed") {
        const VectorXd strong = VectorXd::Constant(g.size(), 0.5 * u_inf);
        const CollapseResult r = collapse_length(strong, g, u_inf, diameter, 0.1);
        CHECK(!r.collapsed);
        CHECK(r.x_over_D == doctest::Approx(g.x_max() / diameter));
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(collapse_length(field, g, u_inf, diameter, 0.0), ArgumentError);
        CHECK_THROWS_AS(collapse_length(field, g, u_inf, diameter, 1.0), ArgumentError);
        CHECK_THROWS_AS(collapse_length(field, g, 0.0, diameter, 0.1), ArgumentError);
        VectorXd wrong(3);
        wrong.setZero();
        CHECK_THROWS_AS(collapse_length(wrong, g, u_inf, diameter, 0.1), DimensionError);
    }
}

TEST_CASE("a mid-wake dip below threshold does not count as collapse") {
    // per-station deficits: 0.05, 0.15, 0.05, 0.15, 0.05 with threshold 0.1;
    // the dip at station 2 re-exceeds downstream, so recovery starts at 3->4
    const StructuredGrid g{5, 1, 1.0, 1.0, 0.0, 0.0};
    VectorXd field(5);
    const double deficits[5] = {0.05, 0.15, 0.05, 0.15, 0.05};
    for (Index i = 0; i < 5; ++i) field(i) = 1.0 - deficits[i];

    const CollapseResult r = collapse_length(field, g, 1.0, 1.0, 0.1);
    CHECK(r.collapsed);
    CHECK(r.x_over_D == doctest::Approx(4.0));
}

TEST_CASE("series overloads of the metrics match their field forms") {
    const StructuredGrid g{21, 11, 0.25, 0.2, 0.0, -1.0};
    Eigen::MatrixXd data(g.size(), 6);
    const VectorXd base = gaussian_wake_field(g, 4.0, 0.5, 1.5, 0.4);
    for (Index t = 0; t < 6; ++t)
        data.col(t) = base + 0.01 * oracles::random_matrix(g.size(), 1, 900 + t);
    const SnapshotSeriesd s = series_on(g, data);

    const VectorXd mean = time_average(s);
    const CollapseResult from_series = collapse_length(s, 4.0, 1.0, 0.1);
    const CollapseResult from_field = collapse_length(mean, g, 4.0, 1.0, 0.1);
    CHECK(from_series.x_over_D == from_field.x_over_D);
    CHECK(from_series.collapsed == from_field.collapsed);
}

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "podwake/compare.hpp"
#include "podwake/pod.hpp"
#include "podwake/types.hpp"
#include "podwake/wake_metrics.hpp"

namespace podwake {

/// Artifact writers shared by the command-line tool. All output is
/// deterministic: fixed column orders, fixed float formatting, no
/// timestamps, so identical inputs yield byte-identical files.

/// CSV with header mode_index,sigma,energy_fraction,cumulative_energy.
void write_spectrum_csv(const std::filesystem::path& file, const PodResultd& result);

/// CSV with header mode_index,cumulative_energy.
void write_cumulative_csv(const std::filesystem::path& file, const PodResultd& result);

/// CSV with header time,mode_1,...,mode_r; one row per snapshot.
void write_coefficients_csv(const std::filesystem::path& file, const PodResultd& result,
                            double dt);

/// CSV with header y_over_D,mean_velocity.
void write_profile_csv(const std::filesystem::path& file, const StationProfiled& profile);

/// JSON {station_x_over_D, component, u_inf, max_deficit_fraction,
/// half_deficit_width_over_D}.
void write_deficit_json(const std::filesystem::path& file, const StationProfiled& profile,
                        const DeficitStats& stats, double u_inf);

/// JSON {x_over_D, threshold, collapsed}.
void write_collapse_json(const std::filesystem::path& file, const CollapseResult& collapse);

/// Long-form CSV with header i,j,mac (heat-map data).
void write_mac_csv(const std::filesystem::path& file, const MatrixX<double>& mac);

/// CSV with header mode_index,cumulative_a,cumulative_b; rows span the
/// longer curve, with blank cells past a curve's rank.
void write_energy_curves_csv(const std::filesystem::path& file,
                             const EnergyComparison& energy);

/// Full comparison report as JSON.
void write_report_json(const std::filesystem::path& file, const ComparisonReportd& report);

/// Minimal SVG line plot. Each series is a (label, y-values) pair plotted
/// against the 1-based index.
void write_curve_svg(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<std::pair<std::string, VectorX<double>>>& series);

} // namespace podwake

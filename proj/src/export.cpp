#include "podwake/export.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace podwake {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_artifact(const fs::path& file) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw IoError("cannot open " + file.string() + " for writing");
    return out;
}

void finish_artifact(std::ofstream& out, const fs::path& file) {
    if (!out) throw IoError("failed writing " + file.string());
}

/// Shortest exact decimal form of a double (round-trips via strtod).
std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_json_file(const fs::path& file, const json& j) {
    std::ofstream out = open_artifact(file);
    out << j.dump(2) << '\n';
    finish_artifact(out, file);
}

/// SVG coordinate formatting: fixed precision keeps files small and stable.
std::string svg_coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

} // namespace

void write_spectrum_csv(const fs::path& file, const PodResultd& result) {
    const VectorX<double> cumulative = cumulative_energy(result);
    std::ofstream out = open_artifact(file);
    out << "mode_index,sigma,energy_fraction,cumulative_energy\n";
    for (Index k = 0; k < result.rank(); ++k)
        out << (k + 1) << ',' << fmt(result.singular_values(k)) << ','
            << fmt(result.energy_fractions(k)) << ',' << fmt(cumulative(k)) << '\n';
    finish_artifact(out, file);
}

void write_cumulative_csv(const fs::path& file, const PodResultd& result) {
    const VectorX<double> cumulative = cumulative_energy(result);
    std::ofstream out = open_artifact(file);
    out << "mode_index,cumulative_energy\n";
    for (Index k = 0; k < result.rank(); ++k)
        out << (k + 1) << ',' << fmt(cumulative(k)) << '\n';
    finish_artifact(out, file);
}

void write_coefficients_csv(const fs::path& file, const PodResultd& result, double dt) {
    if (!(dt > 0.0)) throw ArgumentError("coefficients export requires dt > 0");
    std::ofstream out = open_artifact(file);
    out << "time";
    for (Index k = 0; k < result.rank(); ++k) out << ",mode_" << (k + 1);
    out << '\n';
    for (Index t = 0; t < result.n_snapshots; ++t) {
        out << fmt(static_cast<double>(t) * dt);
        for (Index k = 0; k < result.rank(); ++k) out << ',' << fmt(result.coefficients(k, t));
        out << '\n';
    }
    finish_artifact(out, file);
}

void write_profile_csv(const fs::path& file, const StationProfiled& profile) {
    std::ofstream out = open_artifact(file);
    out << "y_over_D,mean_velocity\n";
    for (Index j = 0; j < profile.y_over_D.size(); ++j)
        out << fmt(profile.y_over_D(j)) << ',' << fmt(profile.mean_velocity(j)) << '\n';
    finish_artifact(out, file);
}

void write_deficit_json(const fs::path& file, const StationProfiled& profile,
                        const DeficitStats& stats, double u_inf) {
    json j;
    j["station_x_over_D"] = profile.station_x_over_D;
    j["component"] = component_key(profile.component);
    j["u_inf"] = u_inf;
    j["max_deficit_fraction"] = stats.max_deficit_fraction;
    j["half_deficit_width_over_D"] = stats.half_deficit_width_over_D;
    write_json_file(file, j);
}

void write_collapse_json(const fs::path& file, const CollapseResult& collapse) {
    json j;
    j["x_over_D"] = collapse.x_over_D;
    j["threshold"] = collapse.threshold;
    j["collapsed"] = collapse.collapsed;
    write_json_file(file, j);
}

void write_mac_csv(const fs::path& file, const MatrixX<double>& mac) {
    std::ofstream out = open_artifact(file);
    out << "i,j,mac\n";
    for (Index i = 0; i < mac.rows(); ++i)
        for (Index j = 0; j < mac.cols(); ++j)
            out << (i + 1) << ',' << (j + 1) << ',' << fmt(mac(i, j)) << '\n';
    finish_artifact(out, file);
}

void write_energy_curves_csv(const fs::path& file, const EnergyComparison& energy) {
    std::ofstream out = open_artifact(file);
    out << "mode_index,cumulative_a,cumulative_b\n";
    const Index rows = std::max(energy.curve_a.size(), energy.curve_b.size());
    for (Index k = 0; k < rows; ++k) {
        out << (k + 1) << ',';
        if (k < energy.curve_a.size()) out << fmt(energy.curve_a(k));
        out << ',';
        if (k < energy.curve_b.size()) out << fmt(energy.curve_b(k));
        out << '\n';
    }
    finish_artifact(out, file);
}

void write_report_json(const fs::path& file, const ComparisonReportd& report) {
    json j;
    json mac = json::array();
    for (Index i = 0; i < report.mac.rows(); ++i) {
        json row = json::array();
        for (Index c = 0; c < report.mac.cols(); ++c) row.push_back(report.mac(i, c));
        mac.push_back(row);
    }
    j["mac"] = mac;

    json matches = json::array();
    for (const ModeMatch& m : report.matches) {
        json entry;
        entry["index_a"] = m.index_a + 1;
        entry["index_b"] = m.index_b + 1;
        entry["mac"] = m.mac;
        matches.push_back(entry);
    }
    j["matches"] = matches;

    json angles = json::array();
    for (Index k = 0; k < report.principal_angles.size(); ++k)
        angles.push_back(report.principal_angles(k));
    j["principal_angles"] = angles;

    json energy;
    energy["verdict"] = verdict_name(report.energy.verdict);
    energy["first_crossing"] =
        report.energy.first_crossing < 0 ? json(nullptr)
                                         : json(report.energy.first_crossing + 1);
    energy["margin"] = report.energy.margin;
    json curve_a = json::array();
    for (Index k = 0; k < report.energy.curve_a.size(); ++k)
        curve_a.push_back(report.energy.curve_a(k));
    energy["curve_a"] = curve_a;
    json curve_b = json::array();
    for (Index k = 0; k < report.energy.curve_b.size(); ++k)
        curve_b.push_back(report.energy.curve_b(k));
    energy["curve_b"] = curve_b;
    energy["effective_modes_a"] = report.energy.effective_modes_a;
    energy["effective_modes_b"] = report.energy.effective_modes_b;
    energy["threshold"] = report.energy.threshold;
    j["energy"] = energy;

    write_json_file(file, j);
}

void write_curve_svg(const fs::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<std::pair<std::string, VectorX<double>>>& series) {
    constexpr double kWidth = 640.0, kHeight = 480.0;
    constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

    Index n_max = 0;
    double y_min = 0.0, y_max = 1.0;
    bool first = true;
    for (const auto& [label, values] : series) {
        n_max = std::max(n_max, values.size());
        for (Index k = 0; k < values.size(); ++k) {
            if (first) {
                y_min = y_max = values(k);
                first = false;
            } else {
                y_min = std::min(y_min, values(k));
                y_max = std::max(y_max, values(k));
            }
        }
    }
    if (n_max == 0) throw ArgumentError("svg plot requires at least one data point");
    if (y_max == y_min) y_max = y_min + 1.0;

    auto px = [&](double x) { return kLeft + (n_max > 1 ? (x - 1.0) / (n_max - 1.0) : 0.5) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

    std::ofstream out = open_artifact(file);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    // axes
    out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << x_label << "</text>\n";
    out << "  <text x=\"18\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">" << y_label
        << "</text>\n";
    // extremal tick labels
    out << "  <text x=\"" << kLeft - 6 << "\" y=\"" << kTop + plot_h + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << svg_coord(y_min) << "</text>\n";
    out << "  <text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << svg_coord(y_max) << "</text>\n";
    out << "  <text x=\"" << kLeft << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">1</text>\n";
    out << "  <text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << n_max
        << "</text>\n";

    int color = 0;
    double legend_y = kTop + 12.0;
    for (const auto& [label, values] : series) {
        const char* stroke = kColors[color % 4];
        out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (Index k = 0; k < values.size(); ++k) {
            if (k) out << ' ';
            out << svg_coord(px(static_cast<double>(k + 1))) << ',' << svg_coord(py(values(k)));
        }
        out << "\"/>\n";
        if (!label.empty()) {
            out << "  <text x=\"" << kLeft + plot_w - 8 << "\" y=\"" << svg_coord(legend_y)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
                << stroke << "\">" << label << "</text>\n";
            legend_y += 14.0;
        }
        ++color;
    }
    out << "</svg>\n";
    finish_artifact(out, file);
}

} // namespace podwake

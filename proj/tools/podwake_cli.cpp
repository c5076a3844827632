// podwake — snapshot POD toolkit for 2D wake velocity-field time series.
//
// Subcommands: synth (generate a synthetic VAWT wake dataset), decompose
// (POD of one velocity component), profile (station profiles and wake
// collapse), compare (MAC / subspace-angle / energy comparison of two
// datasets), info (dataset descriptor echo).
//
// Exit codes: 0 success, 1 I/O or data failure, 2 usage error. All
// artifacts are byte-deterministic for fixed inputs and flags.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "podwake/compare.hpp"
#include "podwake/dataset_io.hpp"
#include "podwake/errors.hpp"
#include "podwake/export.hpp"
#include "podwake/field.hpp"
#include "podwake/pod.hpp"
#include "podwake/synthetic.hpp"
#include "podwake/types.hpp"
#include "podwake/wake_metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace podwake;

namespace {

// ---- shared plumbing -------------------------------------------------------

/// Advisory lock guarding an output directory against concurrent runs.
class OutputLock {
public:
    explicit OutputLock(const fs::path& out_dir) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + out_dir.string() + ": " +
                          ec.message());
        file_ = out_dir / ".podwake.lock";
        std::FILE* f = std::fopen(file_.string().c_str(), "wx");
        if (!f)
            throw IoError("output directory " + out_dir.string() +
                          " is in use by another run (" + file_.string() + " exists)");
        std::fclose(f);
        held_ = true;
    }
    ~OutputLock() {
        if (held_) {
            std::error_code ec;
            fs::remove(file_, ec);
        }
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    fs::path file_;
    bool held_ = false;
};

fs::path require_out(const std::string& out) {
    if (out.empty()) throw ArgumentError("--out is required for this command");
    return fs::path(out);
}

void write_provenance(const fs::path& out_dir, const json& prov) {
    std::ofstream f(out_dir / "provenance.json", std::ios::trunc);
    if (!f) throw IoError("cannot write " + (out_dir / "provenance.json").string());
    f << prov.dump(2) << '\n';
    if (!f) throw IoError("failed writing " + (out_dir / "provenance.json").string());
}

json operating_point_json(const OperatingPoint& op) {
    json j;
    j["rotor_diameter"] = op.rotor_diameter;
    j["rpm"] = op.rpm;
    j["inlet_velocity"] = op.inlet_velocity;
    j["tsr"] = op.tsr;
    return j;
}

json params_json(const SyntheticWakeParams& p) {
    json j;
    j["deficit_amplitude"] = p.deficit_amplitude;
    j["collapse_length"] = p.collapse_length;
    j["wake_half_width"] = p.wake_half_width;
    j["n_vortices_per_period"] = p.n_vortices_per_period;
    j["vortex_strength"] = p.vortex_strength;
    j["vortex_core_radius"] = p.vortex_core_radius;
    j["convection_speed"] = p.convection_speed;
    j["leeward_bias"] = p.leeward_bias;
    j["noise_amplitude"] = p.noise_amplitude;
    j["seed"] = p.seed;
    return j;
}

json grid_json(const StructuredGrid& g) {
    json j;
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    j["dx"] = g.dx;
    j["dy"] = g.dy;
    j["x0"] = g.x0;
    j["y0"] = g.y0;
    return j;
}

// ---- synth -----------------------------------------------------------------

struct SynthConfig {
    std::string preset_name;
    std::optional<double> diameter, rpm, uinf;
    std::optional<double> deficit_amplitude, collapse_length, wake_half_width;
    std::optional<int> vortices_per_period;
    std::optional<double> vortex_strength, vortex_core_radius, convection_speed;
    std::optional<double> leeward_bias, noise_amplitude;
    Index nx = 128, ny = 64, n_snapshots = 256;
    double x_max_over_d = 12.0, y_half_over_d = 2.0;
    std::optional<double> dt;
};

int cmd_synth(const SynthConfig& cfg, const std::string& out,
              std::optional<std::uint64_t> seed, int threads) {
    SyntheticWakeParams params = preset(cfg.preset_name.empty() ? "tsr2.4" : cfg.preset_name);

    double diameter = cfg.diameter.value_or(params.operating_point.rotor_diameter);
    double rpm = cfg.rpm.value_or(params.operating_point.rpm);
    double uinf = cfg.uinf.value_or(params.operating_point.inlet_velocity);
    params.operating_point = make_operating_point(diameter, rpm, uinf);
    if (cfg.deficit_amplitude) params.deficit_amplitude = *cfg.deficit_amplitude;
    if (cfg.collapse_length) params.collapse_length = *cfg.collapse_length;
    if (cfg.wake_half_width) params.wake_half_width = *cfg.wake_half_width;
    if (cfg.vortices_per_period) params.n_vortices_per_period = *cfg.vortices_per_period;
    if (cfg.vortex_strength) params.vortex_strength = *cfg.vortex_strength;
    if (cfg.vortex_core_radius) params.vortex_core_radius = *cfg.vortex_core_radius;
    if (cfg.convection_speed) params.convection_speed = *cfg.convection_speed;
    if (cfg.leeward_bias) params.leeward_bias = *cfg.leeward_bias;
    if (cfg.noise_amplitude) params.noise_amplitude = *cfg.noise_amplitude;
    if (seed) params.seed = *seed;
    params.validate();

    SynthDefaults dims;
    dims.nx = cfg.nx;
    dims.ny = cfg.ny;
    dims.n_snapshots = cfg.n_snapshots;
    dims.x_extent_over_d = cfg.x_max_over_d;
    dims.y_half_extent_over_d = cfg.y_half_over_d;
    if (dims.nx < 2 || dims.ny < 2)
        throw ArgumentError("synth requires --nx >= 2 and --ny >= 2");
    const StructuredGrid grid = default_wake_grid(params, dims);
    const double shed_period = 60.0 / (params.operating_point.rpm *
                                       static_cast<double>(params.n_vortices_per_period));
    const double dt =
        cfg.dt.value_or(10.0 * shed_period / static_cast<double>(dims.n_snapshots));

    const fs::path out_dir = require_out(out);
    OutputLock lock(out_dir);

    auto [u, v] = generate(params, grid, dims.n_snapshots, dt, threads);

    json prov;
    prov["command"] = "synth";
    prov["preset"] = cfg.preset_name.empty() ? json(nullptr) : json(cfg.preset_name);
    prov["operating_point"] = operating_point_json(params.operating_point);
    prov["params"] = params_json(params);
    prov["grid"] = grid_json(grid);
    prov["n_snapshots"] = dims.n_snapshots;
    prov["dt"] = dt;
    save_dataset(u, v, out_dir, prov.dump());
    return 0;
}

// ---- decompose -------------------------------------------------------------

struct DecomposeConfig {
    std::string in;
    std::string component = "u";
    std::vector<double> box;
    bool mean_subtract = false;
    std::string algorithm = "auto";
    std::optional<Index> rank;
    std::optional<double> energy;
};

/// Loads a component, applies the optional analysis box and mean removal.
SnapshotSeriesd load_analysis_series(const std::string& in, const std::string& component,
                                     const std::vector<double>& box, bool mean_subtract) {
    if (in.empty()) throw ArgumentError("--in is required for this command");
    SnapshotSeriesd series = load_series(fs::path(in), parse_component(component));
    if (!box.empty()) {
        if (box.size() != 4)
            throw ArgumentError("--box expects xmin,xmax,ymin,ymax");
        BoxRegion region{box[0], box[1], box[2], box[3]};
        series = extract_box(series, region);
    }
    if (mean_subtract) series = subtract_mean(series).second;
    return series;
}

PodResultd run_pod(const MatrixX<double>& X, const std::string& algorithm,
                   std::string& resolved) {
    if (algorithm == "direct")
        resolved = "direct";
    else if (algorithm == "snapshots")
        resolved = "snapshots";
    else
        resolved = X.cols() <= X.rows() ? "snapshots" : "direct";
    return resolved == "direct" ? pod_direct<double>(X) : pod_snapshots<double>(X);
}

int cmd_decompose(const DecomposeConfig& cfg, const std::string& out, bool svg) {
    const fs::path out_dir = require_out(out);
    SnapshotSeriesd series =
        load_analysis_series(cfg.in, cfg.component, cfg.box, cfg.mean_subtract);

    OutputLock lock(out_dir);

    const MatrixX<double>& X = assemble_snapshot_matrix(series);
    std::string algorithm;
    PodResultd result = run_pod(X, cfg.algorithm, algorithm);
    const Index full_rank = result.rank();

    if (cfg.rank) result = truncate(result, *cfg.rank);
    if (cfg.energy) result = truncate(result, effective_mode_count(result, *cfg.energy));

    const double x_norm = X.norm();
    const double recon_error =
        x_norm > 0.0 ? (X - reconstruct(result)).norm() / x_norm : 0.0;

    if (result.rank() > 0) {
        SnapshotSeriesd modes_series{series.grid, series.component, series.dt,
                                     result.modes};
        save_series(modes_series, out_dir / "modes");
    }
    write_spectrum_csv(out_dir / "spectrum.csv", result);
    write_cumulative_csv(out_dir / "cumulative.csv", result);
    write_coefficients_csv(out_dir / "coefficients.csv", result, series.dt);
    if (svg && result.rank() > 0) {
        write_curve_svg(out_dir / "spectrum.svg", "Cumulative modal energy", "mode index",
                        "cumulative energy fraction",
                        {{"", cumulative_energy(result)}});
    }

    json summary;
    summary["component"] = component_key(series.component);
    summary["algorithm"] = algorithm;
    summary["mean_subtracted"] = cfg.mean_subtract;
    summary["n_points"] = result.n_points;
    summary["n_snapshots"] = result.n_snapshots;
    summary["rank_full"] = full_rank;
    summary["rank_retained"] = result.rank();
    summary["total_energy"] = result.total_energy;
    summary["reconstruction_error"] = recon_error;
    summary["grid"] = grid_json(series.grid);
    std::ofstream f(out_dir / "summary.json", std::ios::trunc);
    if (!f) throw IoError("cannot write " + (out_dir / "summary.json").string());
    f << summary.dump(2) << '\n';

    json prov;
    prov["command"] = "decompose";
    prov["in"] = cfg.in;
    prov["component"] = cfg.component;
    prov["box"] = cfg.box.empty() ? json(nullptr) : json(cfg.box);
    prov["mean_subtract"] = cfg.mean_subtract;
    prov["algorithm_requested"] = cfg.algorithm;
    prov["algorithm_used"] = algorithm;
    prov["rank"] = cfg.rank ? json(*cfg.rank) : json(nullptr);
    prov["energy"] = cfg.energy ? json(*cfg.energy) : json(nullptr);
    write_provenance(out_dir, prov);
    return 0;
}

// ---- profile ---------------------------------------------------------------

struct ProfileConfig {
    std::string in;
    std::string component = "u";
    double station = 3.5;
    std::optional<double> uinf, diameter;
    double collapse_threshold = 0.1;
};

/// Pulls U∞ and D from explicit flags, falling back to the dataset's synth
/// provenance when present.
std::pair<double, double> resolve_flow_scales(const ProfileConfig& cfg,
                                              const DatasetInfo& info) {
    double uinf = cfg.uinf.value_or(0.0);
    double diameter = cfg.diameter.value_or(0.0);
    if ((!cfg.uinf || !cfg.diameter) && !info.provenance_json.empty()) {
        const json prov = json::parse(info.provenance_json, nullptr, false);
        if (prov.is_object() && prov.contains("operating_point")) {
            const json& op = prov["operating_point"];
            if (!cfg.uinf && op.contains("inlet_velocity"))
                uinf = op["inlet_velocity"].get<double>();
            if (!cfg.diameter && op.contains("rotor_diameter"))
                diameter = op["rotor_diameter"].get<double>();
        }
    }
    if (!(uinf > 0.0) || !(diameter > 0.0))
        throw ArgumentError(
            "dataset carries no operating-point provenance; pass --uinf and --diameter");
    return {uinf, diameter};
}

int cmd_profile(const ProfileConfig& cfg, const std::string& out, bool svg) {
    const fs::path out_dir = require_out(out);
    if (cfg.in.empty()) throw ArgumentError("--in is required for this command");
    const DatasetInfo info = read_dataset_info(fs::path(cfg.in));
    const auto [uinf, diameter] = resolve_flow_scales(cfg, info);

    SnapshotSeriesd series = load_series(fs::path(cfg.in), parse_component(cfg.component));
    const VectorX<double> mean = time_average(series);

    const StationProfiled prof = profile_at_station<double>(
        mean, series.grid, series.component, cfg.station, diameter);
    const DeficitStats stats = deficit_stats(prof, uinf);
    const CollapseResult collapse = collapse_length<double>(
        mean, series.grid, uinf, diameter, cfg.collapse_threshold);

    OutputLock lock(out_dir);
    write_profile_csv(out_dir / "profile.csv", prof);
    write_deficit_json(out_dir / "deficit.json", prof, stats, uinf);
    write_collapse_json(out_dir / "collapse.json", collapse);
    if (svg) {
        write_curve_svg(out_dir / "profile.svg",
                        "Mean velocity at x/D = " + std::to_string(prof.station_x_over_D),
                        "sample index (increasing y)", "mean velocity [m/s]",
                        {{"", prof.mean_velocity}});
    }

    json prov;
    prov["command"] = "profile";
    prov["in"] = cfg.in;
    prov["component"] = cfg.component;
    prov["station"] = cfg.station;
    prov["u_inf"] = uinf;
    prov["diameter"] = diameter;
    prov["collapse_threshold"] = cfg.collapse_threshold;
    write_provenance(out_dir, prov);
    return 0;
}

// ---- compare ---------------------------------------------------------------

struct CompareConfig {
    std::string in_a, in_b;
    std::string component = "u";
    std::vector<double> box;
    bool mean_subtract = false;
    std::string algorithm = "auto";
    int filter_a = 0, filter_b = 0;
    double mac_floor = 0.25;
    double energy_threshold = 0.99;
    std::optional<Index> angles;
};

int cmd_compare(const CompareConfig& cfg, const std::string& out, bool svg) {
    const fs::path out_dir = require_out(out);
    if (cfg.in_a.empty() || cfg.in_b.empty())
        throw ArgumentError("--in-a and --in-b are required for this command");

    SnapshotSeriesd a = load_analysis_series(cfg.in_a, cfg.component, cfg.box, false);
    SnapshotSeriesd b = load_analysis_series(cfg.in_b, cfg.component, cfg.box, false);
    if (!(a.grid == b.grid))
        throw DimensionError("datasets live on different grids; extract a common --box "
                             "from matching grids first");

    a = fidelity_filter(a, cfg.filter_a);
    b = fidelity_filter(b, cfg.filter_b);
    if (cfg.mean_subtract) {
        a = subtract_mean(a).second;
        b = subtract_mean(b).second;
    }

    OutputLock lock(out_dir);

    std::string algo_a, algo_b;
    const PodResultd pod_a = run_pod(assemble_snapshot_matrix(a), cfg.algorithm, algo_a);
    const PodResultd pod_b = run_pod(assemble_snapshot_matrix(b), cfg.algorithm, algo_b);

    const ComparisonReportd report = compare_decompositions(
        pod_a, pod_b, cfg.mac_floor, cfg.energy_threshold, cfg.angles.value_or(-1));

    write_report_json(out_dir / "report.json", report);
    write_mac_csv(out_dir / "mac.csv", report.mac);
    write_energy_curves_csv(out_dir / "energy_curves.csv", report.energy);
    if (svg) {
        write_curve_svg(out_dir / "energy.svg", "Cumulative modal energy", "mode index",
                        "cumulative energy fraction",
                        {{"a", report.energy.curve_a}, {"b", report.energy.curve_b}});
    }

    json prov;
    prov["command"] = "compare";
    prov["in_a"] = cfg.in_a;
    prov["in_b"] = cfg.in_b;
    prov["component"] = cfg.component;
    prov["box"] = cfg.box.empty() ? json(nullptr) : json(cfg.box);
    prov["mean_subtract"] = cfg.mean_subtract;
    prov["algorithm"] = cfg.algorithm;
    prov["filter_a"] = cfg.filter_a;
    prov["filter_b"] = cfg.filter_b;
    prov["mac_floor"] = cfg.mac_floor;
    prov["energy_threshold"] = cfg.energy_threshold;
    write_provenance(out_dir, prov);
    return 0;
}

// ---- info ------------------------------------------------------------------

int cmd_info(const std::string& in) {
    if (in.empty()) throw ArgumentError("info requires a dataset path");
    const DatasetInfo info = read_dataset_info(fs::path(in));
    json j;
    j["path"] = in;
    j["format"] = info.csv ? "csv" : "binary";
    j["grid"] = grid_json(info.grid);
    j["dt"] = info.dt;
    j["n_snapshots"] = info.n_snapshots;
    json comps = json::array();
    for (Component c : info.components) comps.push_back(component_key(c));
    j["components"] = comps;
    j["provenance"] = info.provenance_json.empty()
                          ? json(nullptr)
                          : json::parse(info.provenance_json);
    std::cout << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"podwake — snapshot POD toolkit for 2D wake velocity fields"};
    app.require_subcommand(1);

    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool svg = false;
    app.add_option("--out", out, "Output directory for artifacts");
    app.add_option("--seed", seed, "Override the generator seed (synth)");
    app.add_option("--threads", threads, "Worker threads for generation")
        ->check(CLI::Range(1, 256));
    app.add_flag("--svg", svg, "Also emit SVG plots of curve artifacts");

    const std::vector<std::string> components = {"u", "v", "streamwise", "transversal"};

    // synth ------------------------------------------------------------------
    SynthConfig synth_cfg;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic VAWT wake dataset (defaults follow tsr2.4)");
    synth->fallthrough();
    synth->add_option("--preset", synth_cfg.preset_name,
                      "Operating-point preset: tsr2.4, tsr3.3, tsr1.5");
    synth->add_option("--diameter", synth_cfg.diameter, "Rotor diameter [m]");
    synth->add_option("--rpm", synth_cfg.rpm, "Rotor speed [rev/min]");
    synth->add_option("--uinf", synth_cfg.uinf, "Inlet velocity [m/s]");
    synth->add_option("--deficit-amplitude", synth_cfg.deficit_amplitude,
                      "Deficit amplitude as a fraction of U∞, in (0,1)");
    synth->add_option("--collapse-length", synth_cfg.collapse_length,
                      "Streamwise e-folding length of the deficit [m]");
    synth->add_option("--wake-half-width", synth_cfg.wake_half_width,
                      "Gaussian deficit half-width [m]");
    synth->add_option("--vortices-per-period", synth_cfg.vortices_per_period,
                      "Vortex births per rotor revolution");
    synth->add_option("--vortex-strength", synth_cfg.vortex_strength,
                      "Birth circulation [m^2/s]");
    synth->add_option("--vortex-core-radius", synth_cfg.vortex_core_radius,
                      "Vortex core radius [m]");
    synth->add_option("--convection-speed", synth_cfg.convection_speed,
                      "Vortex convection speed [m/s]");
    synth->add_option("--leeward-bias", synth_cfg.leeward_bias,
                      "Leeward bias of vortex births, in [0,1]");
    synth->add_option("--noise-amplitude", synth_cfg.noise_amplitude,
                      "White-noise standard deviation [m/s]");
    synth->add_option("--nx", synth_cfg.nx, "Grid points in x")->check(CLI::PositiveNumber);
    synth->add_option("--ny", synth_cfg.ny, "Grid points in y")->check(CLI::PositiveNumber);
    synth->add_option("--snapshots", synth_cfg.n_snapshots, "Snapshot count")
        ->check(CLI::PositiveNumber);
    synth->add_option("--x-max-over-d", synth_cfg.x_max_over_d,
                      "Downstream extent in diameters");
    synth->add_option("--y-half-over-d", synth_cfg.y_half_over_d,
                      "Half extent in y in diameters");
    synth->add_option("--dt", synth_cfg.dt,
                      "Snapshot interval [s] (default: 10 shedding periods / snapshots)");

    // decompose ---------------------------------------------------------------
    DecomposeConfig dec_cfg;
    CLI::App* dec = app.add_subcommand("decompose", "POD of one velocity component");
    dec->fallthrough();
    dec->add_option("--in", dec_cfg.in, "Input dataset directory");
    dec->add_option("--component", dec_cfg.component, "Velocity component")
        ->check(CLI::IsMember(components));
    dec->add_option("--box", dec_cfg.box,
                    "Analysis box xmin,xmax,ymin,ymax [m]")
        ->expected(4)
        ->delimiter(',');
    dec->add_flag("--mean-subtract", dec_cfg.mean_subtract,
                  "Remove the temporal mean before decomposition");
    dec->add_option("--algorithm", dec_cfg.algorithm,
                    "auto (snapshots when m <= n), direct, or snapshots")
        ->check(CLI::IsMember({"auto", "direct", "snapshots"}));
    CLI::Option* rank_opt =
        dec->add_option("--rank", dec_cfg.rank, "Retain exactly this many modes");
    CLI::Option* energy_opt = dec->add_option(
        "--energy", dec_cfg.energy, "Retain the smallest rank reaching this energy fraction");
    rank_opt->excludes(energy_opt);
    energy_opt->excludes(rank_opt);

    // profile ------------------------------------------------------------------
    ProfileConfig prof_cfg;
    CLI::App* prof = app.add_subcommand("profile", "Station profile and wake collapse");
    prof->fallthrough();
    prof->add_option("--in", prof_cfg.in, "Input dataset directory");
    prof->add_option("--component", prof_cfg.component, "Velocity component")
        ->check(CLI::IsMember(components));
    prof->add_option("--station", prof_cfg.station, "Station in diameters behind the rotor");
    prof->add_option("--uinf", prof_cfg.uinf,
                     "Free-stream velocity [m/s] (default: dataset provenance)");
    prof->add_option("--diameter", prof_cfg.diameter,
                     "Rotor diameter [m] (default: dataset provenance)");
    prof->add_option("--collapse-threshold", prof_cfg.collapse_threshold,
                     "Deficit fraction below which the wake counts as collapsed");

    // compare ------------------------------------------------------------------
    CompareConfig cmp_cfg;
    CLI::App* cmp = app.add_subcommand("compare", "Compare POD content of two datasets");
    cmp->fallthrough();
    cmp->add_option("--in-a", cmp_cfg.in_a, "First dataset directory");
    cmp->add_option("--in-b", cmp_cfg.in_b, "Second dataset directory");
    cmp->add_option("--component", cmp_cfg.component, "Velocity component")
        ->check(CLI::IsMember(components));
    cmp->add_option("--box", cmp_cfg.box, "Analysis box xmin,xmax,ymin,ymax [m]")
        ->expected(4)
        ->delimiter(',');
    cmp->add_flag("--mean-subtract", cmp_cfg.mean_subtract,
                  "Remove temporal means before decomposition");
    cmp->add_option("--algorithm", cmp_cfg.algorithm,
                    "auto (snapshots when m <= n), direct, or snapshots")
        ->check(CLI::IsMember({"auto", "direct", "snapshots"}));
    cmp->add_option("--filter-a", cmp_cfg.filter_a,
                    "Box-filter radius applied to dataset A [cells]")
        ->check(CLI::NonNegativeNumber);
    cmp->add_option("--filter-b", cmp_cfg.filter_b,
                    "Box-filter radius applied to dataset B [cells]")
        ->check(CLI::NonNegativeNumber);
    cmp->add_option("--mac-floor", cmp_cfg.mac_floor, "Minimum MAC for a mode match");
    cmp->add_option("--energy-threshold", cmp_cfg.energy_threshold,
                    "Threshold for effective mode counts");
    cmp->add_option("--angles", cmp_cfg.angles,
                    "Leading subspace dimension for principal angles");

    // info ---------------------------------------------------------------------
    std::string info_in;
    CLI::App* info = app.add_subcommand("info", "Print a dataset's descriptor as JSON");
    info->fallthrough();
    info->add_option("path", info_in, "Dataset directory");
    info->add_option("--in", info_in, "Dataset directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_cfg, out, seed, threads);
        if (dec->parsed()) return cmd_decompose(dec_cfg, out, svg);
        if (prof->parsed()) return cmd_profile(prof_cfg, out, svg);
        if (cmp->parsed()) return cmd_compare(cmp_cfg, out, svg);
        if (info->parsed()) return cmd_info(info_in);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const RegionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

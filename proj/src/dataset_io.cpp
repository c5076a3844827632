#include "podwake/dataset_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace podwake {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_json_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(file.string() + " is not valid JSON: " + e.what());
    }
}

const json& require_key(const json& meta, const std::string& key) {
    auto it = meta.find(key);
    if (it == meta.end())
        throw FormatError("meta.json: missing key '" + key + "'");
    return *it;
}

Index meta_count(const json& meta, const std::string& key) {
    const json& v = require_key(meta, key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw FormatError("meta.json: key '" + key + "' must be a positive integer");
    return static_cast<Index>(v.get<long long>());
}

double meta_real(const json& meta, const std::string& key, bool positive) {
    const json& v = require_key(meta, key);
    if (!v.is_number())
        throw FormatError("meta.json: key '" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || (positive && !(x > 0.0)))
        throw FormatError("meta.json: key '" + key + "' must be " +
                          (positive ? "a positive, " : "a ") + std::string("finite number"));
    return x;
}

void meta_expect(const json& meta, const std::string& key, const std::string& value) {
    const json& v = require_key(meta, key);
    if (!v.is_string() || v.get<std::string>() != value)
        throw FormatError("meta.json: key '" + key + "' must be \"" + value + "\"");
}

std::vector<Component> meta_components(const json& meta) {
    const json& v = require_key(meta, "components");
    if (!v.is_array() || v.empty())
        throw FormatError("meta.json: key 'components' must be a non-empty array");
    std::vector<Component> out;
    for (const json& entry : v) {
        if (!entry.is_string())
            throw FormatError("meta.json: key 'components' must list \"u\" / \"v\" strings");
        const std::string s = entry.get<std::string>();
        Component c;
        if (s == "u")
            c = Component::streamwise;
        else if (s == "v")
            c = Component::transversal;
        else
            throw FormatError("meta.json: key 'components' holds unknown component '" + s +
                              "'");
        for (Component seen : out)
            if (seen == c)
                throw FormatError("meta.json: key 'components' lists '" + s + "' twice");
        out.push_back(c);
    }
    return out;
}

struct BinaryMeta {
    StructuredGrid grid;
    double dt = 1.0;
    Index n_snapshots = 0;
    std::vector<Component> components;
    std::string provenance;
};

BinaryMeta read_binary_meta(const fs::path& dir) {
    const json meta = parse_json_file(dir / "meta.json");
    if (!meta.is_object()) throw FormatError("meta.json: top level must be an object");

    BinaryMeta out;
    out.grid.nx = meta_count(meta, "nx");
    out.grid.ny = meta_count(meta, "ny");
    out.grid.dx = meta_real(meta, "dx", true);
    out.grid.dy = meta_real(meta, "dy", true);
    out.grid.x0 = meta_real(meta, "x0", false);
    out.grid.y0 = meta_real(meta, "y0", false);
    out.dt = meta_real(meta, "dt", true);
    out.n_snapshots = meta_count(meta, "n_snapshots");
    out.components = meta_components(meta);
    meta_expect(meta, "dtype", "f64");
    meta_expect(meta, "layout", "row-major-x-fastest");
    meta_expect(meta, "endianness", "little");
    if (auto it = meta.find("provenance"); it != meta.end()) out.provenance = it->dump(2);
    return out;
}

void byteswap_payload(MatrixX<double>& data) {
    auto* words = reinterpret_cast<std::uint64_t*>(data.data());
    for (Index k = 0; k < data.size(); ++k) {
        std::uint64_t w = words[k];
        w = ((w & 0x00000000ffffffffULL) << 32) | (w >> 32);
        w = ((w & 0x0000ffff0000ffffULL) << 16) | ((w >> 16) & 0x0000ffff0000ffffULL);
        w = ((w & 0x00ff00ff00ff00ffULL) << 8) | ((w >> 8) & 0x00ff00ff00ff00ffULL);
        words[k] = w;
    }
}

void check_payload_finite(const MatrixX<double>& data, const std::string& origin) {
    if (data.allFinite()) return;
    for (Index t = 0; t < data.cols(); ++t)
        for (Index p = 0; p < data.rows(); ++p)
            if (!std::isfinite(data(p, t)))
                throw DataError(origin + ": non-finite value at snapshot " +
                                std::to_string(t) + ", point " + std::to_string(p));
}

MatrixX<double> read_payload(const fs::path& file, Index n_points, Index n_snapshots) {
    std::error_code ec;
    const auto bytes = fs::file_size(file, ec);
    if (ec) throw IoError("cannot stat " + file.string() + ": " + ec.message());

    const std::uintmax_t frame_bytes = static_cast<std::uintmax_t>(n_points) * 8;
    const std::uintmax_t expected = frame_bytes * static_cast<std::uintmax_t>(n_snapshots);
    if (bytes != expected) {
        std::ostringstream msg;
        msg << file.string() << " holds " << bytes << " bytes ("
            << static_cast<double>(bytes) / static_cast<double>(frame_bytes)
            << " frames) but meta.json declares " << n_snapshots << " snapshots of "
            << n_points << " points (" << expected << " bytes)";
        throw DimensionError(msg.str());
    }

    MatrixX<double> data(n_points, n_snapshots);
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(expected));
    if (!in) throw IoError("short read from " + file.string());
    if constexpr (std::endian::native != std::endian::little) byteswap_payload(data);
    check_payload_finite(data, file.string());
    return data;
}

void write_payload(const fs::path& file, const MatrixX<double>& data) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + file.string() + " for writing");
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size() * 8));
    } else {
        MatrixX<double> swapped = data;
        byteswap_payload(swapped);
        out.write(reinterpret_cast<const char*>(swapped.data()),
                  static_cast<std::streamsize>(swapped.size() * 8));
    }
    if (!out) throw IoError("failed writing " + file.string());
}

bool has_component(const std::vector<Component>& cs, Component c) {
    for (Component x : cs)
        if (x == c) return true;
    return false;
}

std::string component_list(const std::vector<Component>& cs) {
    std::string s;
    for (Component c : cs) s += (s.empty() ? "" : ", ") + std::string(component_key(c));
    return s;
}

// ---- CSV layout -----------------------------------------------------------

fs::path snap_path(const fs::path& dir, Index t) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%04lld.csv", static_cast<long long>(t));
    return dir / name;
}

struct CsvFrame {
    std::vector<double> x, y, u, v;
};

CsvFrame read_csv_frame(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());

    std::string line;
    if (!std::getline(in, line))
        throw FormatError(file.string() + ": empty file, expected header x,y,u,v");
    std::string header = line;
    std::erase_if(header, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
    if (header != "x,y,u,v")
        throw FormatError(file.string() + ": header must be x,y,u,v, found '" + line + "'");

    CsvFrame frame;
    Index row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double vals[4];
        const char* cursor = line.c_str();
        for (int c = 0; c < 4; ++c) {
            char* end = nullptr;
            vals[c] = std::strtod(cursor, &end);
            if (end == cursor)
                throw FormatError(file.string() + " row " + std::to_string(row) +
                                  ": expected 4 numeric fields, found '" + line + "'");
            cursor = end;
            while (*cursor == ' ' || *cursor == '\t') ++cursor;
            if (c < 3) {
                if (*cursor != ',')
                    throw FormatError(file.string() + " row " + std::to_string(row) +
                                      ": expected 4 comma-separated fields");
                ++cursor;
            }
        }
        frame.x.push_back(vals[0]);
        frame.y.push_back(vals[1]);
        frame.u.push_back(vals[2]);
        frame.v.push_back(vals[3]);
        ++row;
    }
    if (frame.x.empty()) throw FormatError(file.string() + ": no data rows");
    return frame;
}

/// Infers the uniform grid from the first frame's coordinate columns.
StructuredGrid infer_csv_grid(const CsvFrame& frame, const std::string& origin) {
    const Index n = static_cast<Index>(frame.x.size());
    StructuredGrid g;
    g.x0 = frame.x[0];
    g.y0 = frame.y[0];

    double y_span = 0.0;
    for (double y : frame.y) y_span = std::max(y_span, std::abs(y - g.y0));
    Index nx = n;
    for (Index k = 0; k < n; ++k) {
        if (std::abs(frame.y[static_cast<std::size_t>(k)] - g.y0) > 1e-9 * y_span && y_span > 0.0) {
            nx = k;
            break;
        }
    }
    if (nx < 1 || n % nx != 0)
        throw FormatError(origin + ": rows do not form a rectangular x-fastest grid (" +
                          std::to_string(n) + " rows, inferred nx=" + std::to_string(nx) +
                          ")");
    g.nx = nx;
    g.ny = n / nx;
    g.dx = g.nx > 1 ? frame.x[1] - g.x0 : 1.0;
    g.dy = g.ny > 1 ? frame.y[static_cast<std::size_t>(g.nx)] - g.y0 : 1.0;
    if (!(g.dx > 0.0))
        throw FormatError(origin + ": x coordinates must strictly increase along a row");
    if (!(g.dy > 0.0))
        throw FormatError(origin + ": y coordinates must strictly increase across rows");
    return g;
}

void check_csv_frame_grid(const CsvFrame& frame, const StructuredGrid& g,
                          const std::string& origin) {
    if (static_cast<Index>(frame.x.size()) != g.size())
        throw DimensionError(origin + " holds " + std::to_string(frame.x.size()) +
                             " rows but the dataset grid has " + std::to_string(g.size()) +
                             " points");
    const double tol_x = 1e-9 * g.dx;
    const double tol_y = 1e-9 * g.dy;
    for (Index j = 0; j < g.ny; ++j) {
        for (Index i = 0; i < g.nx; ++i) {
            const auto k = static_cast<std::size_t>(g.point(i, j));
            if (std::abs(frame.x[k] - g.x(i)) > tol_x ||
                std::abs(frame.y[k] - g.y(j)) > tol_y)
                throw FormatError(origin + " row " + std::to_string(k) +
                                  ": coordinates deviate from the uniform grid");
        }
    }
}

Index count_csv_frames(const fs::path& dir) {
    Index m = 0;
    while (fs::exists(snap_path(dir, m))) ++m;
    if (m == 0) throw FormatError("no snap_0000.csv in " + dir.string());
    return m;
}

SnapshotSeriesd load_csv_series(const fs::path& dir, Component component) {
    const Index m = count_csv_frames(dir);
    CsvFrame first = read_csv_frame(snap_path(dir, 0));
    const StructuredGrid grid = infer_csv_grid(first, snap_path(dir, 0).string());

    SnapshotSeriesd series;
    series.grid = grid;
    series.component = component;
    series.dt = 1.0;   // CSV datasets carry no time base
    series.data.resize(grid.size(), m);

    for (Index t = 0; t < m; ++t) {
        const fs::path file = snap_path(dir, t);
        CsvFrame frame = t == 0 ? std::move(first) : read_csv_frame(file);
        check_csv_frame_grid(frame, grid, file.string());
        const std::vector<double>& col =
            component == Component::streamwise ? frame.u : frame.v;
        for (Index p = 0; p < grid.size(); ++p) {
            const double val = col[static_cast<std::size_t>(p)];
            if (!std::isfinite(val))
                throw DataError(file.string() + ": non-finite value at snapshot " +
                                std::to_string(t) + ", point " + std::to_string(p));
            series.data(p, t) = val;
        }
    }
    return series;
}

json meta_for(const StructuredGrid& g, double dt, Index n_snapshots,
              const std::vector<Component>& components, const std::string& provenance) {
    json meta;
    meta["nx"] = g.nx;
    meta["ny"] = g.ny;
    meta["dx"] = g.dx;
    meta["dy"] = g.dy;
    meta["x0"] = g.x0;
    meta["y0"] = g.y0;
    meta["dt"] = dt;
    meta["n_snapshots"] = n_snapshots;
    json comps = json::array();
    for (Component c : components) comps.push_back(component_key(c));
    meta["components"] = comps;
    meta["dtype"] = "f64";
    meta["layout"] = "row-major-x-fastest";
    meta["endianness"] = "little";
    if (!provenance.empty()) {
        json prov;
        try {
            prov = json::parse(provenance);
        } catch (const json::parse_error& e) {
            throw FormatError(std::string("provenance is not valid JSON: ") + e.what());
        }
        if (!prov.is_object()) throw FormatError("provenance must be a JSON object");
        meta["provenance"] = prov;
    }
    return meta;
}

void write_meta(const fs::path& dir, const json& meta) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    std::ofstream out(dir / "meta.json", std::ios::trunc);
    if (!out) throw IoError("cannot open " + (dir / "meta.json").string() + " for writing");
    out << meta.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + (dir / "meta.json").string());
}

} // namespace

SnapshotSeriesd load_series(const fs::path& dir, Component component) {
    if (!fs::exists(dir)) throw IoError("dataset directory " + dir.string() + " not found");
    if (fs::exists(dir / "meta.json")) {
        const BinaryMeta meta = read_binary_meta(dir);
        if (!has_component(meta.components, component))
            throw ArgumentError("dataset " + dir.string() + " has no component '" +
                                std::string(component_key(component)) + "' (available: " +
                                component_list(meta.components) + ")");
        SnapshotSeriesd series;
        series.grid = meta.grid;
        series.component = component;
        series.dt = meta.dt;
        series.data = read_payload(dir / (std::string(component_key(component)) + ".bin"),
                                   meta.grid.size(), meta.n_snapshots);
        series.validate();
        return series;
    }
    if (fs::exists(snap_path(dir, 0))) {
        SnapshotSeriesd series = load_csv_series(dir, component);
        series.validate();
        return series;
    }
    throw FormatError("no dataset in " + dir.string() +
                      ": expected meta.json or snap_0000.csv");
}

void save_series(const SnapshotSeriesd& series, const fs::path& dir) {
    series.validate();
    write_meta(dir, meta_for(series.grid, series.dt, series.n_snapshots(),
                             {series.component}, ""));
    write_payload(dir / (std::string(component_key(series.component)) + ".bin"),
                  series.data);
}

void save_dataset(const SnapshotSeriesd& u, const SnapshotSeriesd& v, const fs::path& dir,
                  const std::string& provenance_json) {
    u.validate();
    v.validate();
    if (u.component != Component::streamwise || v.component != Component::transversal)
        throw ArgumentError("save_dataset expects (streamwise, transversal) series");
    if (!(u.grid == v.grid) || u.dt != v.dt || u.n_snapshots() != v.n_snapshots())
        throw DimensionError("u and v series disagree on grid, dt, or snapshot count");
    write_meta(dir, meta_for(u.grid, u.dt, u.n_snapshots(),
                             {Component::streamwise, Component::transversal},
                             provenance_json));
    write_payload(dir / "u.bin", u.data);
    write_payload(dir / "v.bin", v.data);
}

DatasetInfo read_dataset_info(const fs::path& dir) {
    if (!fs::exists(dir)) throw IoError("dataset directory " + dir.string() + " not found");
    DatasetInfo info;
    if (fs::exists(dir / "meta.json")) {
        const BinaryMeta meta = read_binary_meta(dir);
        info.grid = meta.grid;
        info.dt = meta.dt;
        info.n_snapshots = meta.n_snapshots;
        info.components = meta.components;
        info.provenance_json = meta.provenance;
        return info;
    }
    if (fs::exists(snap_path(dir, 0))) {
        info.csv = true;
        info.n_snapshots = count_csv_frames(dir);
        const CsvFrame first = read_csv_frame(snap_path(dir, 0));
        info.grid = infer_csv_grid(first, snap_path(dir, 0).string());
        info.dt = 1.0;
        info.components = {Component::streamwise, Component::transversal};
        return info;
    }
    throw FormatError("no dataset in " + dir.string() +
                      ": expected meta.json or snap_0000.csv");
}

} // namespace podwake

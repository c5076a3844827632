#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "podwake/types.hpp"

namespace podwake {

/// Summary of an on-disk dataset directory, without the payload.
struct DatasetInfo {
    StructuredGrid grid;
    double dt = 1.0;
    Index n_snapshots = 0;
    std::vector<Component> components;
    std::string provenance_json;   // raw JSON text; empty when absent
    bool csv = false;              // true when backed by snap_NNNN.csv files
};

/// Loads one velocity component from a dataset directory. Two layouts are
/// recognized: a meta.json descriptor next to per-component binary payloads
/// (u.bin / v.bin of little-endian f64 frames), or a directory of
/// snap_0000.csv, snap_0001.csv, ... files with header x,y,u,v from which
/// the grid is inferred (CSV datasets carry no time base; dt defaults
/// to 1.0).
SnapshotSeriesd load_series(const std::filesystem::path& dir,
                            Component component = Component::streamwise);

/// Writes a single-component binary dataset (meta.json + u.bin or v.bin).
/// load_series(dir, series.component) reproduces the series bit-for-bit.
void save_series(const SnapshotSeriesd& series, const std::filesystem::path& dir);

/// Writes a two-component binary dataset. Both series must share the grid,
/// dt, and snapshot count. provenance_json, when non-empty, must be a JSON
/// object; it is embedded verbatim under the "provenance" key of meta.json.
void save_dataset(const SnapshotSeriesd& u, const SnapshotSeriesd& v,
                  const std::filesystem::path& dir,
                  const std::string& provenance_json = "");

/// Reads descriptor-level information without loading the field payload
/// (CSV datasets are scanned to infer it).
DatasetInfo read_dataset_info(const std::filesystem::path& dir);

} // namespace podwake

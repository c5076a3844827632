#pragma once

#include <stdexcept>

namespace podwake {

/// Base class for all podwake errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument value (bad threshold, nonpositive speed, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Matrix, grid, or frame shape mismatch.
struct DimensionError : Error {
    using Error::Error;
};

/// Non-finite or otherwise unusable numeric data.
struct DataError : Error {
    using Error::Error;
};

/// Malformed dataset descriptor or file layout.
struct FormatError : Error {
    using Error::Error;
};

/// Requested spatial region does not intersect the grid.
struct RegionError : Error {
    using Error::Error;
};

/// Filesystem failure.
struct IoError : Error {
    using Error::Error;
};

/// Numerical backend failure (e.g. SVD non-convergence).
struct NumericalError : Error {
    using Error::Error;
};

} // namespace podwake

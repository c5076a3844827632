#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "podwake/types.hpp"

namespace podwake {

/// Rotor operating condition. tsr is derived from the other three fields
/// and must stay consistent with them.
struct OperatingPoint {
    double rotor_diameter = 0.0;   // m
    double rpm = 0.0;              // rev/min
    double inlet_velocity = 0.0;   // m/s
    double tsr = 0.0;              // dimensionless

    void validate() const;
};

/// Blade-tip speed over free-stream speed: (rpm*2*pi/60) * (D/2) / U.
inline double tip_speed_ratio(double rpm, double diameter, double inlet_velocity) {
    if (!(rpm > 0.0) || !(diameter > 0.0) || !(inlet_velocity > 0.0))
        throw ArgumentError("tip_speed_ratio requires positive rpm, diameter, and velocity");
    const double omega = rpm * 2.0 * M_PI / 60.0;
    return omega * (diameter / 2.0) / inlet_velocity;
}

/// Shedding cadence of an n-bladed rotor: rpm * n_blades / 60, in Hz.
inline double blade_passing_frequency(double rpm, int n_blades) {
    if (!(rpm > 0.0) || n_blades < 1)
        throw ArgumentError("blade_passing_frequency requires rpm > 0 and n_blades >= 1");
    return rpm * static_cast<double>(n_blades) / 60.0;
}

inline OperatingPoint make_operating_point(double diameter, double rpm, double inlet_velocity) {
    OperatingPoint op;
    op.rotor_diameter = diameter;
    op.rpm = rpm;
    op.inlet_velocity = inlet_velocity;
    op.tsr = tip_speed_ratio(rpm, diameter, inlet_velocity);
    return op;
}

inline void OperatingPoint::validate() const {
    if (!(rotor_diameter > 0.0) || !(rpm > 0.0) || !(inlet_velocity > 0.0) || !(tsr > 0.0))
        throw ArgumentError("operating point requires positive physical quantities");
    const double expected = tip_speed_ratio(rpm, rotor_diameter, inlet_velocity);
    if (std::abs(tsr - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw ArgumentError("operating point tsr inconsistent with rpm, diameter, and velocity");
}

/// Parameterization of the synthetic VAWT wake. The mean field is a
/// Gaussian-profile velocity deficit decaying downstream with e-folding
/// length collapse_length; unsteadiness comes from alternating-sign
/// Gaussian-core vortices shed at the rotor plane, convecting downstream
/// and decaying on the same length scale, plus optional white noise from a
/// counter-based generator.
struct SyntheticWakeParams {
    OperatingPoint operating_point;
    double deficit_amplitude = 0.5;      // fraction of inlet velocity, (0,1)
    double collapse_length = 0.0;        // m, streamwise e-folding length L_c
    double wake_half_width = 0.0;        // m, Gaussian deficit std dev
    int n_vortices_per_period = 3;       // births per rotor revolution
    double vortex_strength = 0.0;        // m^2/s, circulation at birth
    double vortex_core_radius = 0.0;     // m
    double convection_speed = 0.0;       // m/s
    double leeward_bias = 0.0;           // [0,1], shifts births toward leeward edge
    double noise_amplitude = 0.0;        // m/s, white-noise std dev
    std::uint64_t seed = 0;

    void validate() const {
        operating_point.validate();
        if (!(deficit_amplitude > 0.0) || !(deficit_amplitude < 1.0))
            throw ArgumentError("deficit_amplitude must lie in (0, 1)");
        if (!(collapse_length > 0.0) || !(wake_half_width > 0.0) ||
            !(vortex_core_radius > 0.0) || !(convection_speed > 0.0))
            throw ArgumentError("wake lengths and convection speed must be positive");
        if (n_vortices_per_period < 1)
            throw ArgumentError("n_vortices_per_period must be >= 1");
        if (vortex_strength < 0.0 || noise_amplitude < 0.0)
            throw ArgumentError("vortex_strength and noise_amplitude must be >= 0");
        if (leeward_bias < 0.0 || leeward_bias > 1.0)
            throw ArgumentError("leeward_bias must lie in [0, 1]");
    }
};

namespace detail {

// splitmix64 finalizer; the basis of the counter-based noise stream.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = mix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

inline double uniform01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Standard normal draw keyed by (seed, snapshot, point, stream): pure
/// counter-based Box-Muller, so any subset of frames can be produced in
/// any order or thread with identical bits.
inline double counter_gaussian(std::uint64_t seed, std::uint64_t snapshot,
                               std::uint64_t point, std::uint64_t stream) {
    const double u1 = std::max(uniform01(counter_hash(seed, snapshot, point, 2 * stream)),
                               0x1.0p-60);
    const double u2 = uniform01(counter_hash(seed, snapshot, point, 2 * stream + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline void parallel_frames(Index n_frames, int n_threads,
                            const std::function<void(Index)>& body) {
    if (n_threads <= 1) {
        for (Index t = 0; t < n_frames; ++t) body(t);
        return;
    }
    std::vector<std::thread> pool;
    const Index chunk = (n_frames + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
        const Index begin = static_cast<Index>(w) * chunk;
        const Index end = std::min(begin + chunk, n_frames);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (Index t = begin; t < end; ++t) body(t);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

/// One shed vortex at a snapshot instant.
struct Vortex {
    double x = 0.0;
    double y = 0.0;
    double circulation = 0.0;   // decayed, signed
    double core_radius = 0.0;
};

/// Vortices alive at time t whose decayed circulation is still significant.
/// Births happen at x = 0 every 60/(rpm * n_vortices_per_period) seconds,
/// alternating between the windward (+w) and leeward (-w) wake edges with a
/// leeward-proportional offset; circulation sign matches the edge's shear
/// sense and decays on the collapse length while the core convects
/// downstream. Births extend to t = -inf, so every frame sees a fully
/// developed street.
inline std::vector<Vortex> active_vortices(const SyntheticWakeParams& p, double t) {
    std::vector<Vortex> out;
    if (p.vortex_strength == 0.0) return out;

    const double shed_period =
        60.0 / (p.operating_point.rpm * static_cast<double>(p.n_vortices_per_period));
    // Decay floor: contributions below 1e-3 of birth circulation are cut.
    const double x_cut = p.collapse_length * std::log(1e3);
    const long long k_max = static_cast<long long>(std::floor(t / shed_period));
    const long long k_min =
        static_cast<long long>(std::ceil((t - x_cut / p.convection_speed) / shed_period));

    for (long long k = k_min; k <= k_max; ++k) {
        const double age = t - static_cast<double>(k) * shed_period;
        const double x = p.convection_speed * age;
        if (x > x_cut) continue;
        const double edge = (((k % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
        Vortex v;
        v.x = x;
        v.y = (edge - 0.5 * p.leeward_bias) * p.wake_half_width;
        // Upper (windward) edge sheds clockwise, lower (leeward) edge
        // counterclockwise, matching the shear sense of the deficit.
        v.circulation = -edge * p.vortex_strength * std::exp(-x / p.collapse_length);
        v.core_radius = p.vortex_core_radius;
        out.push_back(v);
    }
    return out;
}

/// Generates the synthetic wake on a grid spanning x >= 0 downstream of a
/// rotor centered at the origin. Returns the (streamwise, transversal)
/// series. Bitwise deterministic for fixed params and grid, independent of
/// n_threads.
inline std::pair<SnapshotSeriesd, SnapshotSeriesd>
generate(const SyntheticWakeParams& params, const StructuredGrid& grid,
         Index n_snapshots, double dt, int n_threads = 1) {
    params.validate();
    grid.validate();
    if (n_snapshots < 2)
        throw ArgumentError("generate requires n_snapshots >= 2");
    if (!(dt > 0.0))
        throw ArgumentError("generate requires dt > 0");
    if (grid.x0 < -1e-12)
        throw ArgumentError("generate requires a grid spanning x >= 0 (rotor at x = 0)");

    const Index n = grid.size();
    const double u_inf = params.operating_point.inlet_velocity;
    const double amp = params.deficit_amplitude;
    const double lc = params.collapse_length;
    const double w2 = 2.0 * params.wake_half_width * params.wake_half_width;
    const double rc2 = params.vortex_core_radius * params.vortex_core_radius;

    SnapshotSeriesd u{grid, Component::streamwise, dt, MatrixX<double>(n, n_snapshots)};
    SnapshotSeriesd v{grid, Component::transversal, dt, MatrixX<double>(n, n_snapshots)};

    auto fill_frame = [&](Index frame) {
        const double t = static_cast<double>(frame) * dt;
        const std::vector<Vortex> street = active_vortices(params, t);
        for (Index j = 0; j < grid.ny; ++j) {
            const double y = grid.y(j);
            for (Index i = 0; i < grid.nx; ++i) {
                const double x = grid.x(i);
                const Index pt = grid.point(i, j);

                double uu = u_inf * (1.0 - amp * std::exp(-x / lc) * std::exp(-y * y / w2));
                double vv = 0.0;
                for (const Vortex& vx : street) {
                    const double ddx = x - vx.x;
                    const double ddy = y - vx.y;
                    const double r2 = ddx * ddx + ddy * ddy;
                    const double s = r2 / rc2;
                    // (1 - exp(-r^2/rc^2)) / r^2, finite at the core center
                    const double swirl = (s < 1e-12) ? 1.0 / rc2 : -std::expm1(-s) / r2;
                    const double gain = vx.circulation / (2.0 * M_PI) * swirl;
                    uu -= gain * ddy;
                    vv += gain * ddx;
                }
                if (params.noise_amplitude > 0.0) {
                    uu += params.noise_amplitude *
                          detail::counter_gaussian(params.seed, frame, pt, 0);
                    vv += params.noise_amplitude *
                          detail::counter_gaussian(params.seed, frame, pt, 1);
                }
                u.data(pt, frame) = uu;
                v.data(pt, frame) = vv;
            }
        }
    };
    detail::parallel_frames(n_snapshots, n_threads, fill_frame);

    return {std::move(u), std::move(v)};
}

/// Emulates lower-fidelity data by smoothing every snapshot with a
/// normalized (2k+1)^2 box kernel under symmetric (edge-repeating)
/// reflection, which preserves the spatial mean of each frame.
/// kernel_radius = 0 is the identity.
template <typename Scalar>
SnapshotSeries<Scalar> fidelity_filter(const SnapshotSeries<Scalar>& series, int kernel_radius) {
    if (kernel_radius < 0)
        throw ArgumentError("kernel_radius must be >= 0");
    if (kernel_radius == 0) return series;
    series.grid.validate();

    const Index nx = series.grid.nx;
    const Index ny = series.grid.ny;
    const Index k = kernel_radius;

    auto fold = [](Index idx, Index n) {
        while (idx < 0 || idx >= n) {
            if (idx < 0) idx = -1 - idx;
            if (idx >= n) idx = 2 * n - 1 - idx;
        }
        return idx;
    };

    SnapshotSeries<Scalar> out = series;
    const Scalar norm = Scalar(1) / Scalar(2 * k + 1);
    VectorX<Scalar> pass(series.n_points());

    for (Index frame = 0; frame < series.n_snapshots(); ++frame) {
        // x pass
        for (Index j = 0; j < ny; ++j) {
            for (Index i = 0; i < nx; ++i) {
                Scalar acc = Scalar(0);
                for (Index o = -k; o <= k; ++o)
                    acc += series.data(j * nx + fold(i + o, nx), frame);
                pass(j * nx + i) = acc * norm;
            }
        }
        // y pass
        for (Index j = 0; j < ny; ++j) {
            for (Index i = 0; i < nx; ++i) {
                Scalar acc = Scalar(0);
                for (Index o = -k; o <= k; ++o)
                    acc += pass(fold(j + o, ny) * nx + i);
                out.data(j * nx + i, frame) = acc * norm;
            }
        }
    }
    return out;
}

/// Built-in wake presets keyed by the operating points studied: "tsr2.4"
/// (rated), "tsr3.3", and "tsr1.5". Collapse lengths encode the observed
/// ordering: shortest at the highest tip speed ratio.
inline std::vector<std::string> preset_names() { return {"tsr2.4", "tsr3.3", "tsr1.5"}; }

inline SyntheticWakeParams preset(const std::string& name) {
    constexpr double kDiameter = 1.03;   // m
    constexpr double kRpm = 400.0;

    SyntheticWakeParams p;
    p.deficit_amplitude = 0.5;
    p.wake_half_width = kDiameter / 2.0;
    p.n_vortices_per_period = 3;
    p.vortex_core_radius = 0.12;
    p.leeward_bias = 0.25;
    p.noise_amplitude = 0.05;
    p.seed = 42;

    double u_inf = 0.0;
    double lc_over_d = 0.0;
    if (name == "tsr2.4") {
        u_inf = 9.1;
        lc_over_d = 6.0;
    } else if (name == "tsr3.3") {
        u_inf = 6.5;
        lc_over_d = 4.0;
    } else if (name == "tsr1.5") {
        u_inf = 14.38;
        lc_over_d = 9.0;
    } else {
        std::string names;
        for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
        throw ArgumentError("unknown preset '" + name + "' (valid presets: " + names + ")");
    }

    p.operating_point = make_operating_point(kDiameter, kRpm, u_inf);
    p.collapse_length = lc_over_d * kDiameter;
    p.convection_speed = 0.8 * u_inf;
    // Keeps the street's mean-deficit deepening a small perturbation of the
    // Gaussian deficit, so closed-form station predictions stay usable.
    p.vortex_strength = 0.015 * u_inf * kDiameter;
    return p;
}

/// Grid and sampling defaults used by the synth command: 128 x 64 points on
/// [0, 12D] x [-2D, 2D], 256 snapshots spanning ten shedding periods.
struct SynthDefaults {
    Index nx = 128;
    Index ny = 64;
    Index n_snapshots = 256;
    double x_extent_over_d = 12.0;
    double y_half_extent_over_d = 2.0;
    double dt = 1.953125e-3;   // 10 periods of 20 Hz shedding over 256 frames
};

inline StructuredGrid default_wake_grid(const SyntheticWakeParams& params,
                                        const SynthDefaults& d = {}) {
    const double diameter = params.operating_point.rotor_diameter;
    StructuredGrid g;
    g.nx = d.nx;
    g.ny = d.ny;
    g.x0 = 0.0;
    g.y0 = -d.y_half_extent_over_d * diameter;
    g.dx = d.x_extent_over_d * diameter / static_cast<double>(d.nx - 1);
    g.dy = 2.0 * d.y_half_extent_over_d * diameter / static_cast<double>(d.ny - 1);
    return g;
}

} // namespace podwake

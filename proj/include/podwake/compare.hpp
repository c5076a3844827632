#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include <Eigen/SVD>

#include "podwake/pod.hpp"
#include "podwake/types.hpp"

namespace podwake {

/// Modal assurance criterion between every mode pair:
/// MAC_ij = (a_i . b_j)^2 / (|a_i|^2 |b_j|^2), in [0, 1].
template <typename Scalar>
MatrixX<Scalar> mac_matrix(const Eigen::Ref<const MatrixX<Scalar>>& modes_a,
                           const Eigen::Ref<const MatrixX<Scalar>>& modes_b) {
    if (modes_a.rows() != modes_b.rows())
        throw DimensionError("mode sets live on different grids: " +
                             std::to_string(modes_a.rows()) + " vs " +
                             std::to_string(modes_b.rows()) + " points");
    const Index ra = modes_a.cols();
    const Index rb = modes_b.cols();
    // Norms are computed with the same dot kernel as the numerators, sharing
    // their summation order, so MAC of a mode against itself or its own sign
    // flip is exactly 1.
    VectorX<Scalar> na(ra), nb(rb);
    for (Index i = 0; i < ra; ++i) {
        na(i) = modes_a.col(i).dot(modes_a.col(i));
        if (!(na(i) > Scalar(0)))
            throw DataError("mode " + std::to_string(i) + " of the first set is zero");
    }
    for (Index j = 0; j < rb; ++j) {
        nb(j) = modes_b.col(j).dot(modes_b.col(j));
        if (!(nb(j) > Scalar(0)))
            throw DataError("mode " + std::to_string(j) + " of the second set is zero");
    }

    MatrixX<Scalar> mac(ra, rb);
    for (Index i = 0; i < ra; ++i) {
        for (Index j = 0; j < rb; ++j) {
            const Scalar d = modes_a.col(i).dot(modes_b.col(j));
            mac(i, j) = d * d / (na(i) * nb(j));
        }
    }
    return mac;
}

/// A matched mode pair and its MAC score.
struct ModeMatch {
    Index index_a = -1;
    Index index_b = -1;
    double mac = 0.0;
};

/// Greedy one-to-one pairing by descending MAC. Candidate pairs below the
/// floor are never matched; ties resolve to the lower first index, then the
/// lower second index, keeping the matching deterministic.
template <typename Scalar>
std::vector<ModeMatch> match_modes(const MatrixX<Scalar>& mac, double mac_floor = 0.25) {
    if (mac_floor < 0.0 || mac_floor > 1.0)
        throw ArgumentError("mac_floor must lie in [0, 1]");
    struct Cand {
        double mac;
        Index i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(mac.size()));
    for (Index i = 0; i < mac.rows(); ++i)
        for (Index j = 0; j < mac.cols(); ++j)
            if (static_cast<double>(mac(i, j)) >= mac_floor)
                cands.push_back({static_cast<double>(mac(i, j)), i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return std::tie(b.mac, a.i, a.j) < std::tie(a.mac, b.i, b.j);
    });

    std::vector<bool> used_a(static_cast<std::size_t>(mac.rows()), false);
    std::vector<bool> used_b(static_cast<std::size_t>(mac.cols()), false);
    std::vector<ModeMatch> matches;
    for (const Cand& c : cands) {
        if (used_a[static_cast<std::size_t>(c.i)] || used_b[static_cast<std::size_t>(c.j)])
            continue;
        used_a[static_cast<std::size_t>(c.i)] = true;
        used_b[static_cast<std::size_t>(c.j)] = true;
        matches.push_back({c.i, c.j, c.mac});
    }
    std::sort(matches.begin(), matches.end(),
              [](const ModeMatch& a, const ModeMatch& b) { return a.index_a < b.index_a; });
    return matches;
}

/// Principal angles (radians, non-decreasing) between the spans of the
/// leading k columns of each orthonormal mode set: theta_i = acos(s_i) with
/// s_i the singular values of A^T B.
template <typename Scalar>
VectorX<Scalar> subspace_angles(const Eigen::Ref<const MatrixX<Scalar>>& modes_a,
                                const Eigen::Ref<const MatrixX<Scalar>>& modes_b, Index k) {
    if (modes_a.rows() != modes_b.rows())
        throw DimensionError("mode sets live on different grids");
    if (k < 1 || k > modes_a.cols() || k > modes_b.cols())
        throw ArgumentError("subspace dimension k must lie in [1, min(rank_a, rank_b)]");
    MatrixX<Scalar> cross = modes_a.leftCols(k).transpose() * modes_b.leftCols(k);
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(cross);
    VectorX<Scalar> angles(k);
    for (Index i = 0; i < k; ++i) {
        const Scalar s = std::min(Scalar(1), std::max(Scalar(0), svd.singularValues()(i)));
        // singular values descend, so angles come out non-decreasing
        angles(i) = std::acos(s);
    }
    return angles;
}

/// Which decomposition's cumulative energy curve dominates.
enum class EnergyVerdict { a_dominates, b_dominates, mixed };

inline const char* verdict_name(EnergyVerdict v) {
    switch (v) {
        case EnergyVerdict::a_dominates: return "a_dominates";
        case EnergyVerdict::b_dominates: return "b_dominates";
        case EnergyVerdict::mixed: return "mixed";
    }
    return "mixed";
}

/// Pointwise comparison of two cumulative-energy curves over their common
/// mode range.
struct EnergyComparison {
    EnergyVerdict verdict = EnergyVerdict::mixed;
    Index first_crossing = -1;       // first index where the sign flips; -1 if none
    double margin = 0.0;             // max |curve_a - curve_b| over the common range
    VectorX<double> curve_a;
    VectorX<double> curve_b;
    Index effective_modes_a = 0;
    Index effective_modes_b = 0;
    double threshold = 0.99;
};

/// Compares convergence of two decompositions' cumulative energy curves.
/// Differences within 1e-9 count as equal; a pair of curves equal
/// everywhere reports a_dominates with zero margin.
template <typename Scalar>
EnergyComparison compare_energy(const PodResult<Scalar>& a, const PodResult<Scalar>& b,
                                double threshold = 0.99) {
    constexpr double kSlack = 1e-9;
    EnergyComparison out;
    out.threshold = threshold;
    out.curve_a = cumulative_energy(a).template cast<double>();
    out.curve_b = cumulative_energy(b).template cast<double>();
    out.effective_modes_a = effective_mode_count(a, threshold);
    out.effective_modes_b = effective_mode_count(b, threshold);

    const Index common = std::min(out.curve_a.size(), out.curve_b.size());
    if (common == 0) {
        out.verdict = EnergyVerdict::a_dominates;
        return out;
    }

    bool a_ge = true;   // curve_a >= curve_b - slack everywhere
    bool b_ge = true;
    int first_sign = 0;
    for (Index i = 0; i < common; ++i) {
        const double diff = out.curve_a(i) - out.curve_b(i);
        out.margin = std::max(out.margin, std::abs(diff));
        if (diff > kSlack) {
            b_ge = false;
            if (first_sign == 0) first_sign = +1;
            if (first_sign < 0 && out.first_crossing < 0) out.first_crossing = i;
        } else if (diff < -kSlack) {
            a_ge = false;
            if (first_sign == 0) first_sign = -1;
            if (first_sign > 0 && out.first_crossing < 0) out.first_crossing = i;
        }
    }

    if (a_ge)
        out.verdict = EnergyVerdict::a_dominates;   // includes the all-equal tie
    else if (b_ge)
        out.verdict = EnergyVerdict::b_dominates;
    else
        out.verdict = EnergyVerdict::mixed;
    if (out.verdict != EnergyVerdict::mixed) out.first_crossing = -1;
    return out;
}

/// Full comparison bundle between two decompositions.
template <typename Scalar>
struct ComparisonReport {
    MatrixX<Scalar> mac;
    std::vector<ModeMatch> matches;
    VectorX<Scalar> principal_angles;
    EnergyComparison energy;
};

using ComparisonReportd = ComparisonReport<double>;

/// Convenience wrapper: MAC matrix, greedy matching, principal angles over
/// the leading min(rank_a, rank_b, 10) modes, and the energy comparison.
template <typename Scalar>
ComparisonReport<Scalar> compare_decompositions(const PodResult<Scalar>& a,
                                                const PodResult<Scalar>& b,
                                                double mac_floor = 0.25,
                                                double energy_threshold = 0.99,
                                                Index angle_k = -1) {
    ComparisonReport<Scalar> report;
    report.mac = mac_matrix<Scalar>(a.modes, b.modes);
    report.matches = match_modes(report.mac, mac_floor);
    if (angle_k < 0) angle_k = std::min({a.rank(), b.rank(), Index(10)});
    if (angle_k >= 1)
        report.principal_angles = subspace_angles<Scalar>(a.modes, b.modes, angle_k);
    report.energy = compare_energy(a, b, energy_threshold);
    return report;
}

} // namespace podwake

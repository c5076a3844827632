#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <utility>

#include "podwake/types.hpp"

namespace podwake {

/// Result of one proper orthogonal decomposition of an n x m snapshot
/// matrix X = Phi_U Sigma Phi_V^T, truncated to rank r.
///
///   modes            n x r, orthonormal spatial modes (columns of Phi_U)
///   singular_values  r, non-increasing, >= 0
///   coefficients     r x m, row k = sigma_k * (row k of Phi_V^T): the time
///                    evolution of mode k
///   energy_fractions r, sigma_k^2 / total_energy
///   total_energy     sum of sigma^2 over ALL min(n,m) singular values of
///                    the decomposed matrix, kept so fractions stay
///                    normalized against the original spectrum after
///                    truncation
///
/// Sign convention: in each mode column the entry of largest magnitude is
/// positive, with the coefficient row flipped to compensate, so outputs are
/// reproducible across backends and phase comparisons are meaningful.
template <typename Scalar>
struct PodResult {
    MatrixX<Scalar> modes;
    VectorX<Scalar> singular_values;
    MatrixX<Scalar> coefficients;
    VectorX<Scalar> energy_fractions;
    Scalar total_energy = Scalar(0);
    Index n_points = 0;
    Index n_snapshots = 0;

    Index rank() const { return singular_values.size(); }
};

using PodResultd = PodResult<double>;

namespace detail {

/// Largest-|entry|-positive sign convention; flips coefficient rows in step
/// with their modes.
template <typename Scalar>
void apply_sign_convention(MatrixX<Scalar>& modes, MatrixX<Scalar>& coefficients) {
    for (Index k = 0; k < modes.cols(); ++k) {
        Index imax = 0;
        modes.col(k).cwiseAbs().maxCoeff(&imax);
        if (modes(imax, k) < Scalar(0)) {
            modes.col(k) = -modes.col(k);
            coefficients.row(k) = -coefficients.row(k);
        }
    }
}

template <typename Scalar>
PodResult<Scalar> empty_result(Index n, Index m) {
    PodResult<Scalar> r;
    r.modes.resize(n, 0);
    r.singular_values.resize(0);
    r.coefficients.resize(0, m);
    r.energy_fractions.resize(0);
    r.total_energy = Scalar(0);
    r.n_points = n;
    r.n_snapshots = m;
    return r;
}

template <typename Scalar>
void check_finite_input(const Eigen::Ref<const MatrixX<Scalar>>& x) {
    if (x.rows() < 1 || x.cols() < 1)
        throw ArgumentError("snapshot matrix must be at least 1 x 1");
    if (!x.allFinite())
        throw DataError("snapshot matrix contains non-finite values");
}

} // namespace detail

/// POD via SVD of the snapshot matrix, keeping all min(n, m) modes.
/// Robust against roundoff; the reference route for cross-checks.
template <typename Scalar>
PodResult<Scalar> pod_direct(const Eigen::Ref<const MatrixX<Scalar>>& x) {
    detail::check_finite_input<Scalar>(x);

    Eigen::BDCSVD<MatrixX<Scalar>> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD backend did not converge");

    VectorX<Scalar> sigma = svd.singularValues();
    const Scalar total = sigma.squaredNorm();
    if (total == Scalar(0))
        return detail::empty_result<Scalar>(x.rows(), x.cols());

    PodResult<Scalar> out;
    out.modes = svd.matrixU();
    out.singular_values = sigma;
    out.coefficients = sigma.asDiagonal() * svd.matrixV().transpose();
    out.total_energy = total;
    out.energy_fractions = sigma.array().square() / total;
    out.n_points = x.rows();
    out.n_snapshots = x.cols();
    detail::apply_sign_convention(out.modes, out.coefficients);
    return out;
}

/// Relative Gram-eigenvalue cutoff below which a mode counts as
/// numerically zero and is dropped by pod_snapshots. Lives in the
/// eigenvalue (energy) domain: lambda_k <= cutoff * lambda_1, i.e.
/// sigma_k <= 1e-6 * sigma_1, the actual noise floor of singular values
/// recovered through a Gram matrix in 8-byte reals.
inline constexpr double kGramRankCutoff = 1e-12;

/// POD via the method of snapshots: eigendecomposition of the m x m Gram
/// matrix X^T X, mapped back to spatial modes by Phi_k = X v_k / sigma_k.
/// Intended regime m <= n. Numerically-zero modes are dropped (see
/// kGramRankCutoff); otherwise mathematically equivalent to pod_direct.
template <typename Scalar>
PodResult<Scalar> pod_snapshots(const Eigen::Ref<const MatrixX<Scalar>>& x) {
    detail::check_finite_input<Scalar>(x);
    const Index m = x.cols();

    MatrixX<Scalar> gram = x.transpose() * x;
    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(gram);
    if (eig.info() != Eigen::Success)
        throw NumericalError("Gram eigendecomposition did not converge");

    // Ascending from the solver; walk from the back for descending order.
    VectorX<Scalar> lambda(m);
    MatrixX<Scalar> vecs(m, m);
    for (Index k = 0; k < m; ++k) {
        lambda(k) = std::max(eig.eigenvalues()(m - 1 - k), Scalar(0));
        vecs.col(k) = eig.eigenvectors().col(m - 1 - k);
    }

    const Scalar total = lambda.sum();
    if (total == Scalar(0) || lambda(0) == Scalar(0))
        return detail::empty_result<Scalar>(x.rows(), m);

    Index r = 0;
    while (r < m && lambda(r) > Scalar(kGramRankCutoff) * lambda(0)) ++r;

    PodResult<Scalar> out;
    out.modes.resize(x.rows(), r);
    out.singular_values.resize(r);
    out.coefficients.resize(r, m);
    for (Index k = 0; k < r; ++k) {
        const Scalar sigma = std::sqrt(lambda(k));
        out.singular_values(k) = sigma;
        out.modes.col(k) = x * vecs.col(k) / sigma;
        out.coefficients.row(k) = sigma * vecs.col(k).transpose();
    }
    out.total_energy = total;
    out.energy_fractions = out.singular_values.array().square() / total;
    out.n_points = x.rows();
    out.n_snapshots = m;
    detail::apply_sign_convention(out.modes, out.coefficients);
    return out;
}

/// Running sum of energy fractions: entry k is the cumulative modal energy
/// of modes 0..k.
template <typename Scalar>
VectorX<Scalar> cumulative_energy(const PodResult<Scalar>& result) {
    VectorX<Scalar> curve(result.rank());
    Scalar acc = Scalar(0);
    for (Index k = 0; k < result.rank(); ++k) {
        acc += result.energy_fractions(k);
        curve(k) = acc;
    }
    return curve;
}

/// Smallest k >= 1 whose cumulative energy reaches the threshold; returns
/// the full rank when the threshold is never reached. Comparison carries a
/// 1e-12 absolute slack so partial sums on the order of the threshold are
/// not lost to roundoff.
template <typename Scalar>
Index effective_mode_count(const PodResult<Scalar>& result, Scalar threshold) {
    if (!(threshold > Scalar(0)) || !(threshold <= Scalar(1)))
        throw ArgumentError("effective-mode threshold must lie in (0, 1]");
    Scalar acc = Scalar(0);
    for (Index k = 0; k < result.rank(); ++k) {
        acc += result.energy_fractions(k);
        if (acc >= threshold - Scalar(1e-12)) return k + 1;
    }
    return result.rank();
}

/// Keeps the first r_keep modes, singular values, and coefficient rows.
/// Energy fractions remain normalized against the original total, so the
/// truncated fractions sum to at most 1.
template <typename Scalar>
PodResult<Scalar> truncate(const PodResult<Scalar>& result, Index r_keep) {
    if (r_keep < 1 || r_keep > result.rank())
        throw ArgumentError("truncation rank " + std::to_string(r_keep) +
                            " outside [1, " + std::to_string(result.rank()) + "]");
    PodResult<Scalar> out;
    out.modes = result.modes.leftCols(r_keep);
    out.singular_values = result.singular_values.head(r_keep);
    out.coefficients = result.coefficients.topRows(r_keep);
    out.energy_fractions = result.energy_fractions.head(r_keep);
    out.total_energy = result.total_energy;
    out.n_points = result.n_points;
    out.n_snapshots = result.n_snapshots;
    return out;
}

/// modes * coefficients: the rank-r reconstruction of the snapshot matrix.
/// At full rank this reproduces the input to roundoff.
template <typename Scalar>
MatrixX<Scalar> reconstruct(const PodResult<Scalar>& result) {
    if (result.rank() == 0)
        return MatrixX<Scalar>::Zero(result.n_points, result.n_snapshots);
    return result.modes * result.coefficients;
}

} // namespace podwake

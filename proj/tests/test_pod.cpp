#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "podwake/pod.hpp"

using namespace podwake;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

/// Absolute phase difference wrapped into [0, pi].
double phase_gap(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * M_PI));
}

PodResultd hand_result(std::initializer_list<double> fractions) {
    PodResultd r;
    const Index n = static_cast<Index>(fractions.size());
    r.energy_fractions.resize(n);
    r.singular_values.resize(n);
    Index k = 0;
    for (double f : fractions) {
        r.energy_fractions(k) = f;
        r.singular_values(k) = std::sqrt(f);
        ++k;
    }
    r.total_energy = 1.0;
    r.modes.resize(0, n);
    r.coefficients.resize(n, 0);
    return r;
}

void check_matches_direct(const MatrixXd& x, double sigma_tol, double mode_tol) {
    const PodResultd a = pod_direct<double>(x);
    const PodResultd b = pod_snapshots<double>(x);
    REQUIRE(b.rank() == x.cols());
    const double scale = a.singular_values(0);
    for (Index k = 0; k < b.rank(); ++k) {
        CHECK(std::abs(a.singular_values(k) - b.singular_values(k)) <= sigma_tol * scale);
        CHECK((a.modes.col(k) - b.modes.col(k)).cwiseAbs().maxCoeff() <= mode_tol);
        CHECK((a.coefficients.row(k) - b.coefficients.row(k)).cwiseAbs().maxCoeff() <=
              sigma_tol * scale * 10);
    }
    CHECK(a.total_energy == doctest::Approx(b.total_energy).epsilon(1e-12));
}

void check_result_invariants(const PodResultd& r, const MatrixXd& x, double tol) {
    // Parseval: retained + dropped energy equals the Frobenius norm squared.
    CHECK(r.total_energy == doctest::Approx(x.squaredNorm()).epsilon(tol));
    // Orthonormal modes.
    const MatrixXd gram = r.modes.transpose() * r.modes;
    CHECK((gram - MatrixXd::Identity(r.rank(), r.rank())).cwiseAbs().maxCoeff() <= tol);
    // Non-increasing, non-negative spectrum.
    for (Index k = 0; k < r.rank(); ++k) {
        CHECK(r.singular_values(k) >= 0.0);
        if (k > 0) CHECK(r.singular_values(k) <= r.singular_values(k - 1) * (1 + 1e-14));
    }
    // Sign convention: each mode's largest-magnitude entry is positive.
    for (Index k = 0; k < r.rank(); ++k) {
        Index imax = 0;
        r.modes.col(k).cwiseAbs().maxCoeff(&imax);
        CHECK(r.modes(imax, k) > 0.0);
    }
    // Fractions mirror sigma^2 / total.
    for (Index k = 0; k < r.rank(); ++k)
        CHECK(r.energy_fractions(k) ==
              doctest::Approx(r.singular_values(k) * r.singular_values(k) /
                              r.total_energy)
                  .epsilon(1e-12));
}

} // namespace

TEST_CASE("pod_direct reproduces worked examples") {
    SUBCASE("constant 2x2 matrix of ones") {
        MatrixXd x(2, 2);
        x << 1, 1, 1, 1;
        const PodResultd r = pod_direct<double>(x);
        REQUIRE(r.rank() == 2);
        CHECK(r.singular_values(0) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(r.singular_values(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(r.modes(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-14));
        CHECK(r.modes(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-14));
        CHECK(r.energy_fractions(0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.energy_fractions(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        CHECK(r.coefficients(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
        CHECK(r.coefficients(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    }
    SUBCASE("identity matrix splits energy evenly") {
        const MatrixXd x = MatrixXd::Identity(3, 3);
        const PodResultd r = pod_direct<double>(x);
        REQUIRE(r.rank() == 3);
        for (Index k = 0; k < 3; ++k) {
            CHECK(r.singular_values(k) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(r.energy_fractions(k) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        }
        CHECK((reconstruct(r) - x).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("1x1 matrix") {
        MatrixXd x(1, 1);
        x << 5.0;
        const PodResultd r = pod_direct<double>(x);
        REQUIRE(r.rank() == 1);
        CHECK(r.singular_values(0) == doctest::Approx(5.0));
        CHECK(r.modes(0, 0) == doctest::Approx(1.0));
        CHECK(r.coefficients(0, 0) == doctest::Approx(5.0));
    }
}

TEST_CASE("zero snapshot matrices yield an empty decomposition") {
    const MatrixXd x = MatrixXd::Zero(3, 4);
    for (const PodResultd& r : {pod_direct<double>(x), pod_snapshots<double>(x)}) {
        CHECK(r.rank() == 0);
        CHECK(r.modes.rows() == 3);
        CHECK(r.modes.cols() == 0);
        CHECK(r.coefficients.rows() == 0);
        CHECK(r.coefficients.cols() == 4);
        CHECK(r.total_energy == 0.0);
        CHECK(r.energy_fractions.size() == 0);
        const MatrixXd recon = reconstruct(r);
        CHECK(recon.rows() == 3);
        CHECK(recon.cols() == 4);
        CHECK(recon.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("pod_snapshots keeps exactly one mode for a rank-1 matrix") {
    VectorXd a(5), b(4);
    a << 2, -1, 0.5, 1, 0.25;
    b << 1, -2, 0, 0.5;
    const MatrixXd x = a * b.transpose();

    const PodResultd r = pod_snapshots<double>(x);
    REQUIRE(r.rank() == 1);
    CHECK(r.singular_values(0) ==
          doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
    CHECK(r.energy_fractions(0) == doctest::Approx(1.0).epsilon(1e-12));
    const VectorXd unit_a = a / a.norm();   // largest entry already positive
    CHECK((r.modes.col(0) - unit_a).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((reconstruct(r) - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("traveling wave decomposes into a quadrature pair") {
    const MatrixXd x = oracles::traveling_wave_matrix(64, 32);
    const PodResultd r = pod_direct<double>(x);
    REQUIRE(r.rank() >= 2);

    // Degenerate leading pair at the frozen analytic value sqrt(512).
    CHECK(std::abs(r.singular_values(0) - oracles::kWaveSigma64x32) <=
          1e-10 * oracles::kWaveSigma64x32);
    CHECK(std::abs(r.singular_values(1) - oracles::kWaveSigma64x32) <=
          1e-10 * oracles::kWaveSigma64x32);

    // Cross-check against the brute-force Jacobi route.
    const VectorXd sigma_oracle = oracles::jacobi_singular_values(x);
    CHECK(std::abs(r.singular_values(0) - sigma_oracle(0)) <= 1e-10 * sigma_oracle(0));
    CHECK(std::abs(r.singular_values(1) - sigma_oracle(1)) <= 1e-10 * sigma_oracle(0));

    // The pair carries all the energy; two modes suffice at 99.9%.
    CHECK(r.energy_fractions(0) + r.energy_fractions(1) >= 1.0 - 1e-10);
    CHECK(effective_mode_count(r, 0.999) == 2);

    // Rank-2 truncation reconstructs the wave.
    const MatrixXd recon = reconstruct(truncate(r, 2));
    CHECK((recon - x).norm() <= 1e-6 * x.norm());

    // Temporal coefficients of the pair sit a quarter period apart.
    const VectorXd row0 = r.coefficients.row(0).transpose();
    const VectorXd row1 = r.coefficients.row(1).transpose();
    const double gap = phase_gap(oracles::fundamental_phase(row0),
                                 oracles::fundamental_phase(row1));
    CHECK(std::abs(gap - M_PI / 2.0) <= 1e-8);
}

TEST_CASE("method of snapshots agrees with the direct route") {
    check_matches_direct(oracles::random_matrix(96, 12, 201), 1e-8, 1e-6);
    check_matches_direct(oracles::random_matrix(128, 16, 202), 1e-8, 1e-6);
    check_matches_direct(oracles::random_matrix(20, 5, 203), 1e-8, 1e-6);
    check_matches_direct(oracles::random_matrix(7, 7, 204), 1e-8, 1e-6);
}

TEST_CASE("decomposition invariants hold across random inputs") {
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 8 + (trial * 7) % 33;
        const Index m = 2 + (trial * 3) % 7;
        const MatrixXd x = oracles::random_matrix(n, m, 400 + trial);
        CAPTURE(trial);
        check_result_invariants(pod_direct<double>(x), x, 1e-10);
        check_result_invariants(pod_snapshots<double>(x), x, 1e-10);
    }
}

TEST_CASE("singular values ignore snapshot ordering") {
    const MatrixXd x = oracles::random_matrix(30, 8, 77);
    MatrixXd shuffled(30, 8);
    for (Index j = 0; j < 8; ++j) shuffled.col(j) = x.col(7 - j);
    for (auto pod : {pod_direct<double>, pod_snapshots<double>}) {
        const VectorXd s1 = pod(x).singular_values;
        const VectorXd s2 = pod(shuffled).singular_values;
        REQUIRE(s1.size() == s2.size());
        CHECK((s1 - s2).cwiseAbs().maxCoeff() <= 1e-10 * s1(0));
    }
}

TEST_CASE("scaling the input scales the spectrum, not the modes") {
    const MatrixXd x = oracles::random_matrix(25, 6, 99);
    for (auto pod : {pod_direct<double>, pod_snapshots<double>}) {
        const PodResultd base = pod(x);
        const PodResultd scaled = pod(MatrixXd(2.0 * x));
        REQUIRE(base.rank() == scaled.rank());
        for (Index k = 0; k < base.rank(); ++k) {
            CHECK(scaled.singular_values(k) ==
                  doctest::Approx(2.0 * base.singular_values(k)).epsilon(1e-12));
            CHECK((scaled.modes.col(k) - base.modes.col(k)).cwiseAbs().maxCoeff() <=
                  1e-9);
        }
        CHECK(scaled.total_energy == doctest::Approx(4.0 * base.total_energy));
    }
}

TEST_CASE("negating the input flips coefficients but not modes") {
    const MatrixXd x = oracles::random_matrix(18, 5, 123);
    const PodResultd plus = pod_direct<double>(x);
    const PodResultd minus = pod_direct<double>(MatrixXd(-x));
    REQUIRE(plus.rank() == minus.rank());
    CHECK((plus.modes - minus.modes).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((plus.coefficients + minus.coefficients).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("full-rank reconstruction reproduces the input") {
    const MatrixXd x = oracles::random_matrix(40, 10, 31);
    CHECK((reconstruct(pod_direct<double>(x)) - x).norm() <= 1e-10 * x.norm());
    CHECK((reconstruct(pod_snapshots<double>(x)) - x).norm() <= 1e-10 * x.norm());
}

TEST_CASE("truncation error matches the tail of the spectrum") {
    const MatrixXd x = oracles::random_matrix(20, 7, 555);
    const PodResultd r = pod_direct<double>(x);
    for (Index k = 1; k < r.rank(); ++k) {
        const double err = (x - reconstruct(truncate(r, k))).norm();
        const double expected =
            std::sqrt(r.singular_values.tail(r.rank() - k).squaredNorm());
        CHECK(std::abs(err - expected) <= 1e-9 * r.singular_values(0));
    }
}

TEST_CASE("truncate keeps fractions normalized against the original total") {
    const MatrixXd x = oracles::random_matrix(15, 4, 9);
    const PodResultd full = pod_direct<double>(x);
    const PodResultd cut = truncate(full, 2);
    CHECK(cut.rank() == 2);
    CHECK(cut.total_energy == full.total_energy);
    CHECK(cut.energy_fractions(0) == full.energy_fractions(0));
    CHECK(cut.energy_fractions(1) == full.energy_fractions(1));
    CHECK(cut.energy_fractions.sum() < 1.0);
    CHECK(cut.n_snapshots == full.n_snapshots);

    // Truncating to the full rank is the identity.
    const PodResultd same = truncate(full, full.rank());
    CHECK(same.modes == full.modes);
    CHECK(same.coefficients == full.coefficients);

    CHECK_THROWS_AS(truncate(full, 0), ArgumentError);
    CHECK_THROWS_AS(truncate(full, full.rank() + 1), ArgumentError);
}

TEST_CASE("cumulative energy accumulates the fraction sequence") {
    SUBCASE("worked example") {
        const PodResultd r = hand_result({0.5, 0.3, 0.2});
        const VectorXd c = cumulative_energy(r);
        REQUIRE(c.size() == 3);
        CHECK(c(0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(c(1) == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(c(2) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("single mode") {
        const VectorXd c = cumulative_energy(hand_result({1.0}));
        REQUIRE(c.size() == 1);
        CHECK(c(0) == doctest::Approx(1.0));
    }
    SUBCASE("non-decreasing and bounded for random spectra") {
        for (int trial = 0; trial < 20; ++trial) {
            const MatrixXd x = oracles::random_matrix(12, 6, 700 + trial);
            const VectorXd c = cumulative_energy(pod_direct<double>(x));
            for (Index k = 1; k < c.size(); ++k) CHECK(c(k) >= c(k - 1));
            CHECK(c(c.size() - 1) <= 1.0 + 1e-12);
            CHECK(c(c.size() - 1) >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("effective mode count finds the first threshold crossing") {
    const PodResultd r = hand_result({0.6, 0.3, 0.1});
    CHECK(effective_mode_count(r, 0.5) == 1);
    CHECK(effective_mode_count(r, 0.6) == 1);
    CHECK(effective_mode_count(r, 0.9) == 2);   // 0.6 + 0.3 counts despite roundoff
    CHECK(effective_mode_count(r, 0.95) == 3);
    CHECK(effective_mode_count(r, 1.0) == 3);
    CHECK_THROWS_AS(effective_mode_count(r, 0.0), ArgumentError);
    CHECK_THROWS_AS(effective_mode_count(r, -0.2), ArgumentError);
    CHECK_THROWS_AS(effective_mode_count(r, 1.5), ArgumentError);
}

TEST_CASE("degenerate and invalid inputs raise typed errors") {
    MatrixXd empty(0, 0);
    CHECK_THROWS_AS(pod_direct<double>(empty), ArgumentError);
    CHECK_THROWS_AS(pod_snapshots<double>(empty), ArgumentError);

    MatrixXd bad(2, 2);
    bad << 1, 2, 3, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pod_direct<double>(bad), DataError);
    CHECK_THROWS_AS(pod_snapshots<double>(bad), DataError);
}

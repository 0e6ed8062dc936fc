// test_channels.cpp — Kraus maps: completeness validation, trace behavior,
// and the projector/contraction examples

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tqfi/channels.hpp"

using tqfi::DensityMatrix;
using tqfi::KrausChannel;
using tqfi::Matrix;
using tqfi::SubNormalizedState;
using tqfi::TraceClass;
using tqfi::UnitaryFamily;

namespace {

SubNormalizedState random_subnormalized(Eigen::Index d, Eigen::Index r, std::uint64_t seed) {
    DensityMatrix rho = tqfi::random_density(d, r, seed);
    std::mt19937_64 rng(tqfi::mix_seed(seed, 77));
    std::uniform_real_distribution<double> unif(0.15, 0.9);
    return SubNormalizedState(unif(rng) * rho.matrix());
}

double min_eigenvalue(const Matrix& A) {
    return tqfi::eigh(tqfi::hermitize(A)).eigenvalues.minCoeff();
}

} // namespace

TEST_CASE("identity channel leaves states untouched") {
    KrausChannel id({Matrix::Identity(3, 3)}, TraceClass::preserving);
    SubNormalizedState tau = random_subnormalized(3, 2, 10);
    SubNormalizedState out = tqfi::apply(id, tau);
    REQUIRE((out.matrix() - tau.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("projector channel reproduces the truncated state") {
    UnitaryFamily fam(tqfi::random_density(4, 3, 20), tqfi::random_generator(4, 21));
    const double theta = 0.3;
    for (Eigen::Index m = 1; m <= 2; ++m) {
        auto pair = tqfi::truncate_pair(fam, theta, 0.0, m);
        Matrix pi = pair.kept_basis * pair.kept_basis.adjoint();
        SubNormalizedState out = tqfi::apply(tqfi::projector_channel(pi), tqfi::evolve(fam, theta));
        REQUIRE((out.matrix() - pair.exact_truncated).cwiseAbs().maxCoeff() <= 1e-12);
        REQUIRE(std::abs(out.trace_value() - pair.exact_trace()) <= 1e-12);
    }

    // projector_channel(I) is the identity channel.
    SubNormalizedState tau = random_subnormalized(3, 3, 22);
    SubNormalizedState same = tqfi::apply(tqfi::projector_channel(Matrix::Identity(3, 3)), tau);
    REQUIRE((same.matrix() - tau.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("scalar contraction scales the trace quadratically") {
    Matrix K = 0.9 * tqfi::random_unitary(3, 30);
    KrausChannel ch({K}, TraceClass::non_increasing);
    SubNormalizedState tau = random_subnormalized(3, 3, 31);
    SubNormalizedState out = tqfi::apply(ch, tau);
    REQUIRE(std::abs(out.trace_value() - 0.81 * tau.trace_value()) <= 1e-12);
}

TEST_CASE("random CPTP channels are complete and trace preserving") {
    for (std::uint64_t seed = 40; seed < 52; ++seed) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 4);
        KrausChannel ch = tqfi::random_cptp(d, seed);
        REQUIRE(ch.trace_class() == TraceClass::preserving);
        REQUIRE((ch.completeness() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);

        SubNormalizedState tau = random_subnormalized(d, d, seed + 1000);
        SubNormalizedState out = tqfi::apply(ch, tau);
        REQUIRE(std::abs(out.trace_value() - tau.trace_value()) <= 1e-12);
        REQUIRE(min_eigenvalue(out.matrix()) >= -1e-9);

        // Same seed, same channel, bitwise.
        KrausChannel again = tqfi::random_cptp(d, seed);
        REQUIRE(again.kraus_operators().size() == ch.kraus_operators().size());
        for (std::size_t i = 0; i < ch.kraus_operators().size(); ++i)
            REQUIRE((again.kraus_operators()[i] - ch.kraus_operators()[i]).cwiseAbs().maxCoeff() ==
                    0.0);
    }
}

TEST_CASE("random CPTNI channels never gain trace") {
    bool saw_strict_contraction = false;
    for (std::uint64_t seed = 60; seed < 80; ++seed) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 4);
        KrausChannel ch = tqfi::random_cptni(d, seed);
        REQUIRE(ch.trace_class() == TraceClass::non_increasing);
        const double top = tqfi::eigh(tqfi::hermitize(ch.completeness())).eigenvalues[0];
        REQUIRE(top <= 1.0 + 1e-10);

        SubNormalizedState tau = random_subnormalized(d, d, seed + 2000);
        SubNormalizedState out = tqfi::apply(ch, tau);
        REQUIRE(out.trace_value() <= tau.trace_value() + 1e-10);
        REQUIRE(min_eigenvalue(out.matrix()) >= -1e-9);
        if (out.trace_value() < tau.trace_value() - 1e-3) saw_strict_contraction = true;
    }
    REQUIRE(saw_strict_contraction);
}

TEST_CASE("rectangular Kraus operators change the output dimension") {
    Matrix K = tqfi::random_unitary(3, 90).topRows(2); // 2×3, K†K a rank-2 projector
    KrausChannel ch({K}, TraceClass::non_increasing);
    REQUIRE(ch.input_dim() == 3);
    REQUIRE(ch.output_dim() == 2);

    SubNormalizedState tau = random_subnormalized(3, 3, 91);
    SubNormalizedState out = tqfi::apply(ch, tau);
    REQUIRE(out.dim() == 2);
    const double expected = (K.adjoint() * K * tau.matrix()).trace().real();
    REQUIRE(std::abs(out.trace_value() - expected) <= 1e-12);
    REQUIRE(out.trace_value() <= tau.trace_value() + 1e-12);
}

TEST_CASE("malformed channels are rejected") {
    Matrix I2 = Matrix::Identity(2, 2);
    REQUIRE_THROWS_AS(KrausChannel({0.9 * I2}, TraceClass::preserving), std::invalid_argument);
    REQUIRE_THROWS_AS(KrausChannel({1.1 * I2}, TraceClass::non_increasing), std::invalid_argument);
    REQUIRE_THROWS_AS(KrausChannel({}, TraceClass::preserving), std::invalid_argument);
    REQUIRE_THROWS_AS(KrausChannel({I2, Matrix::Identity(3, 3)}, TraceClass::non_increasing),
                      std::invalid_argument);

    Matrix not_idempotent = 0.5 * I2;
    REQUIRE_THROWS_AS(tqfi::projector_channel(not_idempotent), tqfi::NotAProjector);
    Matrix not_hermitian = Matrix::Zero(2, 2);
    not_hermitian(0, 1) = 1.0;
    REQUIRE_THROWS_AS(tqfi::projector_channel(not_hermitian), tqfi::NotAProjector);

    KrausChannel id3({Matrix::Identity(3, 3)}, TraceClass::preserving);
    REQUIRE_THROWS_AS(tqfi::apply(id3, random_subnormalized(2, 2, 99)), std::invalid_argument);
}

// test_verify.cpp — the property-check harness: clean passes at the stated
// tolerances, seeded reproducibility, and the report bookkeeping

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "tqfi/verify.hpp"

using tqfi::PropertyReport;
using tqfi::UnitaryFamily;
using tqfi::VerifyConfig;

namespace {

constexpr std::uint64_t kSeed = 20260814;

bool identical(const PropertyReport& a, const PropertyReport& b) {
    return a.property_id == b.property_id && a.trials == b.trials && a.failures == b.failures &&
           a.worst_slack == b.worst_slack && a.degenerate_excluded == b.degenerate_excluded &&
           a.seed == b.seed;
}

} // namespace

TEST_CASE("lower-bound chain check passes over the default batch") {
    PropertyReport report = tqfi::check_lemma1(200, 8, kSeed);
    REQUIRE(report.property_id == "lemma1");
    REQUIRE(report.trials == 200);
    REQUIRE(report.failures == 0);
    REQUIRE(report.worst_slack <= 1e-9);
    REQUIRE(report.degenerate_excluded < 100); // exclusions stay a minority
    REQUIRE(report.seed == kSeed);

    REQUIRE_THROWS_AS(tqfi::check_lemma1(10, 17, kSeed), std::invalid_argument);
}

TEST_CASE("conditioned probes respect their eigenvalue floor") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        UnitaryFamily fam = tqfi::verify_detail::conditioned_family(5, 3, seed);
        const tqfi::RealVector& lam = fam.probe().spectrum().eigenvalues;
        REQUIRE(fam.probe().rank() == 3);
        REQUIRE(std::abs(lam.sum() - 1.0) <= 1e-12);
        for (Eigen::Index i = 0; i < 3; ++i) REQUIRE(lam[i] >= 0.1 - 1e-12);
        for (Eigen::Index i = 3; i < 5; ++i) REQUIRE(lam[i] == 0.0);
        // Every admissible truncation leaves at least the floor behind.
        for (Eigen::Index m = 1; m < 3; ++m)
            REQUIRE(1.0 - lam.head(m).sum() >= 0.1 - 1e-12);
    }
    REQUIRE_THROWS_AS(tqfi::verify_detail::conditioned_family(4, 4, 1, 0.25),
                      std::invalid_argument);
}

TEST_CASE("each structural property check passes at its stated tolerance") {
    PropertyReport invariance = tqfi::check_lemma3_invariance(100, kSeed);
    REQUIRE(invariance.property_id == "lemma3.invariance");
    REQUIRE(invariance.failures == 0);
    REQUIRE(invariance.worst_slack <= 1e-9);

    PropertyReport convexity = tqfi::check_lemma3_convexity(100, kSeed);
    REQUIRE(convexity.property_id == "lemma3.convexity");
    REQUIRE(convexity.failures == 0);
    REQUIRE(convexity.worst_slack <= 1e-8);

    PropertyReport cptni = tqfi::check_lemma3_cptni(100, kSeed);
    REQUIRE(cptni.property_id == "lemma3.cptni");
    REQUIRE(cptni.failures == 0);
    REQUIRE(cptni.worst_slack <= 1e-8);

    PropertyReport subadd = tqfi::check_lemma3_subadditivity(100, kSeed);
    REQUIRE(subadd.property_id == "lemma3.subadditivity");
    REQUIRE(subadd.failures == 0);
    REQUIRE(subadd.worst_slack <= 1e-8);

    PropertyReport sums = tqfi::check_lemma3_direct_sum(100, kSeed);
    REQUIRE(sums.property_id == "lemma3.direct_sum");
    REQUIRE(sums.failures == 0);
    REQUIRE(sums.worst_slack <= 1e-8);
}

TEST_CASE("the aggregate report merges its five sub-checks") {
    PropertyReport merged = tqfi::check_lemma3(40, kSeed);
    REQUIRE(merged.property_id == "lemma3");
    REQUIRE(merged.trials == 200);
    REQUIRE(merged.failures == 0);
    REQUIRE(merged.seed == kSeed);
}

TEST_CASE("metric axioms hold over random triples") {
    PropertyReport report = tqfi::check_lemma4(500, kSeed);
    REQUIRE(report.property_id == "lemma4");
    REQUIRE(report.trials == 500);
    REQUIRE(report.failures == 0);
    REQUIRE(report.worst_slack <= 1e-12);
}

TEST_CASE("curvature check validates its grid and passes on a pinned probe") {
    UnitaryFamily fam = tqfi::verify_detail::conditioned_family(3, 3, 424242);
    REQUIRE_THROWS_AS(tqfi::check_lemma5(fam, 2, {1e-3, 5e-4, 2.5e-4}), std::invalid_argument);

    PropertyReport report = tqfi::check_lemma5(fam, 2, {8e-4, 4e-4, 2e-4, 1e-4});
    REQUIRE(report.property_id == "lemma5");
    REQUIRE(report.trials == 4);
    REQUIRE(report.failures == 0);
}

TEST_CASE("curvature quotient: flat for G = I, approaching the information otherwise") {
    // An identity generator never moves the family, so the squared distance
    // vanishes at every δ.
    UnitaryFamily still(tqfi::random_density(3, 2, 11), tqfi::Matrix::Identity(3, 3));
    for (double delta : {0.1, 1e-2, 1e-3})
        REQUIRE(2.0 * (1.0 - tqfi::generalized_fidelity_truncated(still, 0.0, delta, 2)) <=
                1e-12);

    // Full truncation of a qubit: 4B*²/δ² approaches the untruncated value
    // with strictly shrinking residuals down the grid.
    UnitaryFamily qubit(tqfi::random_density(2, 2, 12), tqfi::random_generator(2, 13));
    const double full = tqfi::qfi(qubit, 0.0).value;
    double previous = std::numeric_limits<double>::infinity();
    for (double delta : {1e-2, 5e-3, 2.5e-3}) {
        const double b2 = 2.0 * (1.0 - tqfi::generalized_fidelity_truncated(qubit, 0.0, delta, 2));
        const double residual = std::abs(4.0 * b2 / (delta * delta) - full);
        REQUIRE(residual < previous);
        previous = residual;
    }

    // Strict truncation of a full-rank qutrit converges to the closed form.
    tqfi::Matrix rho = tqfi::Matrix::Zero(3, 3);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.2;
    tqfi::Matrix G = tqfi::Matrix::Zero(3, 3);
    G(0, 1) = 1.0;
    G(1, 0) = 1.0;
    UnitaryFamily fam(tqfi::DensityMatrix(rho), G);
    const double target = tqfi::tqfi_closed(fam, 2).value;
    REQUIRE(std::abs(target - 0.2) <= 1e-12);
    const double delta = 2.5e-3;
    const double b2 = 2.0 * (1.0 - tqfi::generalized_fidelity_truncated(fam, 0.0, delta, 2));
    REQUIRE(std::abs(4.0 * b2 / (delta * delta) - target) <= 1e-4 * target);
}

TEST_CASE("derivative-operator identities hold with the pure sub-batch recorded") {
    PropertyReport report = tqfi::check_prop1_prop2(100, kSeed);
    REQUIRE(report.property_id == "prop1_prop2");
    REQUIRE(report.trials == 100);
    REQUIRE(report.failures == 0);
    // Every tenth trial is the scheduled pure probe, recorded not asserted.
    REQUIRE(report.degenerate_excluded >= 10);
}

TEST_CASE("the information functional guards its grid against the deficit") {
    UnitaryFamily fam = tqfi::verify_detail::conditioned_family(3, 3, 7);
    auto family = tqfi::verify_detail::truncated_family(fam, 0.0, 2);
    REQUIRE_THROWS_AS(tqfi::verify_detail::information(family, {0.9}), tqfi::DeltaTooLarge);
    REQUIRE_NOTHROW(tqfi::verify_detail::information(family));
}

TEST_CASE("zero-trial requests produce empty reports") {
    for (const PropertyReport& report :
         {tqfi::check_lemma1(0, 8, kSeed), tqfi::check_lemma4(0, kSeed),
          tqfi::check_prop1_prop2(0, kSeed), tqfi::check_lemma3(0, kSeed)}) {
        REQUIRE(report.failures == 0);
        REQUIRE(report.worst_slack == 0.0);
        REQUIRE(report.degenerate_excluded == 0);
    }
}

TEST_CASE("the suite is reproducible from its seed, field for field") {
    std::vector<PropertyReport> first = tqfi::run_suite();
    std::vector<PropertyReport> second = tqfi::run_suite();
    REQUIRE(first.size() == 9);
    REQUIRE(second.size() == 9);

    const char* expected[] = {"lemma1",      "lemma3.invariance",    "lemma3.convexity",
                              "lemma3.cptni", "lemma3.subadditivity", "lemma3.direct_sum",
                              "lemma4",      "lemma5",               "prop1_prop2"};
    for (std::size_t k = 0; k < first.size(); ++k) {
        CAPTURE(first[k].property_id);
        REQUIRE(first[k].property_id == expected[k]);
        REQUIRE(first[k].failures == 0);
        REQUIRE(identical(first[k], second[k]));
    }

    // A different seed produces a different (still clean) batch.
    VerifyConfig other;
    other.seed = 99;
    std::vector<PropertyReport> shifted = tqfi::run_suite(other);
    REQUIRE(shifted.size() == 9);
    bool any_changed = false;
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        REQUIRE(shifted[k].failures == 0);
        if (shifted[k].worst_slack != first[k].worst_slack) any_changed = true;
    }
    REQUIRE(any_changed);
}

#pragma once

// verify.hpp — every structural property of the truncated information measure
// encoded as a seeded, reproducible pass/fail check over random instances.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tqfi/channels.hpp"
#include "tqfi/fisher.hpp"

namespace tqfi {

struct PropertyReport {
    std::string property_id;
    std::int64_t trials = 0;
    std::int64_t failures = 0;
    double worst_slack = 0.0;   // most adverse observed margin (signed toward violation)
    std::int64_t degenerate_excluded = 0;
    std::uint64_t seed = 0;
};

struct VerifyConfig {
    std::uint64_t seed = 20260814;
    Eigen::Index dmax = 8;
    std::int64_t lemma1_trials = 200;
    std::int64_t lemma3_trials = 100; // per sub-check
    std::int64_t lemma4_trials = 500;
    std::int64_t prop_trials = 100;
    // Tolerance overrides. The statements being checked are exact; these are
    // the numerical slacks granted to each evaluation route.
    double tol_lemma1 = 1e-9;
    double tol_invariance = 1e-9;
    double tol_convexity = 1e-8;
    double tol_cptni = 1e-8;
    double tol_subadditivity = 1e-8;
    double tol_direct_sum = 1e-8;
    double tol_triangle = 1e-9;
    double tol_identity = 1e-8;
    double tol_half_angle = 1e-12;
    double tol_lyapunov = 1e-8;
    double tol_traceless = 1e-10;
    double tol_trace_formula = 1e-10;
};

namespace verify_detail {

inline void fold(PropertyReport& report, double slack, double tol) {
    report.worst_slack = std::max(report.worst_slack, slack);
    if (slack > tol) ++report.failures;
}

// Uniform integer in [lo, hi] from a mixed seed, kept separate from the
// heavier matrix sampling streams.
inline Eigen::Index pick(std::uint64_t seed, Eigen::Index lo, Eigen::Index hi) {
    return lo + static_cast<Eigen::Index>(mix_seed(seed, 0xabcd) %
                                          static_cast<std::uint64_t>(hi - lo + 1));
}

inline double pick_real(std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(mix_seed(seed, 0xdcba));
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// The information functional of an arbitrary C² family of sub-normalized
// states: 8·lim(1 − F*(τ(0), τ(δ)))/δ², evaluated exactly like tqfi_fd so
// that both sides of every comparison share one code path.
template <typename FamilyAt>
double information(FamilyAt&& at, const std::vector<double>& deltas = kDefaultDeltas) {
    const SubNormalizedState base(hermitize(at(0.0)));
    const double deficit = 1.0 - base.trace_value();
    if (deficit > kGeoZeroTol)
        for (double d : deltas)
            if (d * d > kDeltaGuard * deficit)
                throw DeltaTooLarge("information: delta grid too coarse for the trace deficit");
    auto fidelity_at = [&](double d) {
        return generalized_fidelity(base, SubNormalizedState(hermitize(at(d))));
    };
    return detail::fd_limit(fidelity_at, deltas).first;
}

// Family of truncated states anchored at theta: δ ↦ Π τ(θ+δ) Π in the full
// space. Returned as a callable for the information functional.
inline auto truncated_family(const UnitaryFamily& fam, double theta, Eigen::Index m) {
    return [&fam, theta, m](double delta) {
        return truncate_pair(fam, theta, delta, m).error_truncated;
    };
}

// Probe whose positive eigenvalues sit above a floor, built constructively
// (offset simplex sample + Haar basis) rather than by rejection. Every
// admissible truncation then keeps a trace deficit ≥ floor, which satisfies
// the δ guard and keeps extrapolation residuals well below the comparison
// tolerances.
inline UnitaryFamily conditioned_family(Eigen::Index d, Eigen::Index r, std::uint64_t seed,
                                        double floor = 0.1) {
    if (static_cast<double>(r) * floor >= 1.0)
        throw std::invalid_argument("conditioned_family: floor too high for the rank");
    std::mt19937_64 rng(mix_seed(seed, 0xf100));
    std::exponential_distribution<double> expo(1.0);
    RealVector lam = RealVector::Zero(d);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) {
        lam[i] = expo(rng);
        sum += lam[i];
    }
    const double slack = 1.0 - static_cast<double>(r) * floor;
    for (Eigen::Index i = 0; i < r; ++i) lam[i] = floor + slack * lam[i] / sum;
    std::sort(lam.data(), lam.data() + d, std::greater<double>());
    DensityMatrix rho =
        DensityMatrix::from_spectrum(lam, random_unitary(d, mix_seed(seed, 0xf101)));
    return UnitaryFamily(rho, random_generator(d, mix_seed(seed, 0xf102)));
}

inline SubNormalizedState random_subnormalized(Eigen::Index d, std::uint64_t seed) {
    const Eigen::Index r = pick(mix_seed(seed, 5), 1, d);
    const double scale = pick_real(mix_seed(seed, 6), 0.15, 0.9);
    return SubNormalizedState(scale * random_density(d, r, mix_seed(seed, 7)).matrix());
}

} // namespace verify_detail

// Lower-bound chain: the truncated values rise monotonically with m, never
// exceed the full information, and reach it exactly at the rank.
inline PropertyReport check_lemma1(std::int64_t trials, Eigen::Index dmax, std::uint64_t seed,
                                   double tol = 1e-9) {
    if (dmax > 16) throw std::invalid_argument("check_lemma1: dmax must be ≤ 16");
    PropertyReport report{"lemma1", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 1000 + static_cast<std::uint64_t>(t));
        const Eigen::Index d = verify_detail::pick(s, 2, dmax);
        Eigen::Index r = verify_detail::pick(mix_seed(s, 1), 1, d);
        if (t % 10 == 3) r = 1;                             // pure sub-batch
        DensityMatrix rho = random_density(d, r, mix_seed(s, 2));
        const Matrix G = t % 17 == 5 ? Matrix::Identity(d, d) : random_generator(d, mix_seed(s, 3));
        UnitaryFamily fam(rho, G);

        // A cut through a near-degenerate pair of positive eigenvalues makes
        // the kept set ambiguous; those instances are counted, not asserted.
        const RealVector& lam = rho.spectrum().eigenvalues;
        const Eigen::Index rank = rho.rank();
        bool degenerate = false;
        for (Eigen::Index m = 1; m < rank; ++m)
            if (lam[m - 1] - lam[m] < kDegenerateGapTol) degenerate = true;
        if (degenerate) {
            ++report.degenerate_excluded;
            continue;
        }

        const double full = qfi(fam, 0.0).value;
        double slack = 0.0;
        double previous = 0.0;
        for (Eigen::Index m = 1; m <= d; ++m) {
            const double value = truncated_qfi(fam, 0.0, m).value;
            if (m > 1) slack = std::max(slack, previous - value); // monotone in m
            slack = std::max(slack, value - full);                // capped by the QFI
            slack = std::max(slack, -value);                      // nonnegative
            previous = value;
        }
        slack = std::max(slack, std::abs(truncated_qfi(fam, 0.0, rank).value - full));
        if (r == 1) slack = std::max(slack, std::abs(truncated_qfi(fam, 0.0, 1).value - full));
        if (t % 17 == 5) slack = std::max(slack, std::abs(full)); // G = I carries nothing
        verify_detail::fold(report, slack, tol);
    }
    return report;
}

inline PropertyReport check_lemma3_invariance(std::int64_t trials, std::uint64_t seed,
                                              double tol = 1e-9) {
    PropertyReport report{"lemma3.invariance", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 2000 + static_cast<std::uint64_t>(t));
        const Eigen::Index d = verify_detail::pick(s, 2, 6);
        const Eigen::Index r = verify_detail::pick(mix_seed(s, 1), 2, d);
        const Eigen::Index m = verify_detail::pick(mix_seed(s, 2), 1, r - 1);
        UnitaryFamily fam(random_density(d, r, mix_seed(s, 3)),
                          random_generator(d, mix_seed(s, 4)));
        const Matrix V = t % 20 == 0 ? Matrix::Identity(d, d) : random_unitary(d, mix_seed(s, 5));
        UnitaryFamily rotated(DensityMatrix(V * fam.probe().matrix() * V.adjoint()),
                              V * fam.generator() * V.adjoint());
        const double diff = std::abs(tqfi_closed(fam, m).value - tqfi_closed(rotated, m).value);
        verify_detail::fold(report, diff, tol);
    }
    return report;
}

inline PropertyReport check_lemma3_convexity(std::int64_t trials, std::uint64_t seed,
                                             double tol = 1e-8) {
    PropertyReport report{"lemma3.convexity", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 3000 + static_cast<std::uint64_t>(t));
        const Eigen::Index d = verify_detail::pick(s, 3, 4);
        const double p = verify_detail::pick_real(mix_seed(s, 1), 0.2, 0.8);

        const Eigen::Index r_a = verify_detail::pick(mix_seed(s, 2), 2, d);
        const Eigen::Index r_b = verify_detail::pick(mix_seed(s, 4), 2, d);
        const Eigen::Index m_a = verify_detail::pick(mix_seed(s, 6), 1, r_a - 1);
        const Eigen::Index m_b = verify_detail::pick(mix_seed(s, 7), 1, r_b - 1);
        UnitaryFamily fam_a = verify_detail::conditioned_family(d, r_a, mix_seed(s, 3));
        UnitaryFamily fam_b = verify_detail::conditioned_family(d, r_b, mix_seed(s, 5));
        auto part_a = verify_detail::truncated_family(fam_a, 0.0, m_a);
        auto part_b = verify_detail::truncated_family(fam_b, 0.0, m_b);

        const double mixed = verify_detail::information(
            [&](double delta) -> Matrix { return p * part_a(delta) + (1.0 - p) * part_b(delta); });
        const double split = p * verify_detail::information(part_a) +
                             (1.0 - p) * verify_detail::information(part_b);
        verify_detail::fold(report, mixed - split, tol);
    }
    return report;
}

inline PropertyReport check_lemma3_cptni(std::int64_t trials, std::uint64_t seed,
                                         double tol = 1e-8) {
    PropertyReport report{"lemma3.cptni", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 4000 + static_cast<std::uint64_t>(t));
        // Keep the truncation information-carrying (m >= 2): an m = 1 family
        // is a scalar weight on a fixed ray with stationary weight, so both
        // sides of the inequality are exactly zero and a finite-difference
        // comparison would measure nothing but 1/δ²-amplified roundoff.
        const Eigen::Index d = verify_detail::pick(s, 3, 4);
        const Eigen::Index r = verify_detail::pick(mix_seed(s, 1), 3, d);
        const Eigen::Index m = verify_detail::pick(mix_seed(s, 3), 2, r - 1);
        UnitaryFamily fam = verify_detail::conditioned_family(d, r, mix_seed(s, 2));
        auto family = verify_detail::truncated_family(fam, 0.0, m);

        const KrausChannel channel = t % 3 == 0 ? random_cptp(d, mix_seed(s, 4))
                                                : random_cptni(d, mix_seed(s, 4));
        auto mapped = [&](double delta) -> Matrix {
            return apply(channel, SubNormalizedState(hermitize(family(delta)))).matrix();
        };
        const double after = verify_detail::information(mapped);
        const double before = verify_detail::information(family);
        verify_detail::fold(report, after - before, tol);
    }
    return report;
}

inline PropertyReport check_lemma3_subadditivity(std::int64_t trials, std::uint64_t seed,
                                                 double tol = 1e-8) {
    PropertyReport report{"lemma3.subadditivity", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 5000 + static_cast<std::uint64_t>(t));
        const Eigen::Index d1 = verify_detail::pick(s, 2, 4);
        const Eigen::Index d2 = verify_detail::pick(mix_seed(s, 1), 2, 4);
        const Eigen::Index r1 = verify_detail::pick(mix_seed(s, 2), 2, d1);
        const Eigen::Index r2 = verify_detail::pick(mix_seed(s, 3), 2, d2);
        const Eigen::Index m1 = verify_detail::pick(mix_seed(s, 6), 1, r1 - 1);
        const Eigen::Index m2 = verify_detail::pick(mix_seed(s, 7), 1, r2 - 1);
        UnitaryFamily fam1 = verify_detail::conditioned_family(d1, r1, mix_seed(s, 4));
        UnitaryFamily fam2 = verify_detail::conditioned_family(d2, r2, mix_seed(s, 5));
        auto part1 = verify_detail::truncated_family(fam1, 0.0, m1);
        auto part2 = verify_detail::truncated_family(fam2, 0.0, m2);

        // The joint probe evolves under G⊗I + I⊗G, so the product of the
        // truncated states is itself the joint family at the same θ.
        const double joint = verify_detail::information(
            [&](double delta) -> Matrix { return kron(part1(delta), part2(delta)); });
        const double sum =
            verify_detail::information(part1) + verify_detail::information(part2);
        verify_detail::fold(report, joint - sum, tol);
    }
    return report;
}

inline PropertyReport check_lemma3_direct_sum(std::int64_t trials, std::uint64_t seed,
                                              double tol = 1e-8) {
    PropertyReport report{"lemma3.direct_sum", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 6000 + static_cast<std::uint64_t>(t));
        const Eigen::Index blocks = t % 25 == 0 ? 1 : verify_detail::pick(s, 2, 3);
        const double total = t % 2 == 0 ? 1.0 : 0.6;

        std::vector<double> mu(static_cast<std::size_t>(blocks));
        double norm = 0.0;
        for (std::size_t k = 0; k < mu.size(); ++k) {
            mu[k] = verify_detail::pick_real(mix_seed(s, 10 + k), 0.2, 1.0);
            norm += mu[k];
        }
        for (double& w : mu) w *= total / norm;

        std::vector<UnitaryFamily> fams;
        std::vector<Eigen::Index> ms;
        for (std::size_t k = 0; k < mu.size(); ++k) {
            const Eigen::Index d = verify_detail::pick(mix_seed(s, 20 + k), 2, 3);
            const Eigen::Index r = verify_detail::pick(mix_seed(s, 30 + k), 2, d);
            const Eigen::Index m = verify_detail::pick(mix_seed(s, 50 + k), 1, r - 1);
            // Equality comparison: condition the deficit so the residual bias
            // of both extrapolations stays well under the tolerance.
            fams.push_back(verify_detail::conditioned_family(d, r, mix_seed(s, 40 + k)));
            ms.push_back(m);
        }

        auto combined = [&](double delta) -> Matrix {
            std::vector<Matrix> parts;
            for (std::size_t k = 0; k < mu.size(); ++k)
                parts.push_back(mu[k] *
                                truncate_pair(fams[k], 0.0, delta, ms[k]).error_truncated);
            return direct_sum(parts);
        };
        // Additivity is an equality, so the δ⁴ extrapolation bias of each
        // side counts in full; a finer grid (shared by both sides, which
        // cancels the overlap-term bias exactly) keeps it under tolerance.
        const std::vector<double> grid{5e-3, 2.5e-3, 1.25e-3};
        const double whole = verify_detail::information(combined, grid);
        double split = 0.0;
        for (std::size_t k = 0; k < mu.size(); ++k)
            split += mu[k] * verify_detail::information(
                                 verify_detail::truncated_family(fams[k], 0.0, ms[k]), grid);
        verify_detail::fold(report, std::abs(whole - split), tol);
    }
    return report;
}

inline PropertyReport check_lemma3(std::int64_t trials, std::uint64_t seed) {
    const PropertyReport parts[] = {
        check_lemma3_invariance(trials, mix_seed(seed, 1)),
        check_lemma3_convexity(trials, mix_seed(seed, 2)),
        check_lemma3_cptni(trials, mix_seed(seed, 3)),
        check_lemma3_subadditivity(trials, mix_seed(seed, 4)),
        check_lemma3_direct_sum(trials, mix_seed(seed, 5)),
    };
    PropertyReport merged{"lemma3", 0, 0, 0.0, 0, seed};
    for (const PropertyReport& p : parts) {
        merged.trials += p.trials;
        merged.failures += p.failures;
        merged.worst_slack = std::max(merged.worst_slack, p.worst_slack);
        merged.degenerate_excluded += p.degenerate_excluded;
    }
    return merged;
}

// Metric axioms of the extended Bures distance on sub-normalized states,
// plus the half-angle identity tying it to the angular distance.
inline PropertyReport check_lemma4(std::int64_t trials, std::uint64_t seed,
                                   double tol_triangle = 1e-9, double tol_identity = 1e-8,
                                   double tol_half_angle = 1e-12) {
    PropertyReport report{"lemma4", trials, 0, 0.0, 0, seed};
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 8000 + static_cast<std::uint64_t>(t));
        const Eigen::Index d = verify_detail::pick(s, 2, 6);
        SubNormalizedState tau = verify_detail::random_subnormalized(d, mix_seed(s, 1));
        SubNormalizedState eta = t % 25 == 7 ? tau
                                             : verify_detail::random_subnormalized(
                                                   d, mix_seed(s, 2));
        SubNormalizedState xi = verify_detail::random_subnormalized(d, mix_seed(s, 3));

        // Symmetry is exact by construction (canonical argument ordering).
        verify_detail::fold(report, std::abs(bures(tau, eta) - bures(eta, tau)), 0.0);
        // Identity of indiscernibles, asserted on the squared distance: at
        // coincidence the fidelity roundoff enters B* under a square root.
        verify_detail::fold(report, std::abs(bures_sq(tau, tau)), tol_identity);
        verify_detail::fold(report, bures(tau, xi) - bures(tau, eta) - bures(eta, xi),
                            tol_triangle);

        const double b2 = bures_sq(tau, eta);
        const double half = 2.0 * std::sin(angular_distance(tau, eta) / 2.0);
        verify_detail::fold(report, std::abs(b2 - half * half), tol_half_angle);
    }
    return report;
}

// Curvature of the truncated Bures distance: 4B*²/δ² approaches the
// truncated information linearly in δ, with no constant or linear term in
// the small-δ expansion of B*² itself.
inline PropertyReport check_lemma5(const UnitaryFamily& family, Eigen::Index m,
                                   const std::vector<double>& delta_grid,
                                   double coeff_bound = 1e-8, double ratio_slack = 0.2) {
    if (delta_grid.size() < 4)
        throw std::invalid_argument("check_lemma5: need at least four grid points for the fit");
    PropertyReport report{"lemma5", static_cast<std::int64_t>(delta_grid.size()), 0, 0.0, 0, 0};

    std::vector<double> grid = delta_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    const double target = truncated_qfi(family, 0.0, m).value;

    std::vector<double> b2(grid.size());
    std::vector<double> residual(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        b2[k] = 2.0 * (1.0 - generalized_fidelity_truncated(family, 0.0, grid[k], m));
        residual[k] = std::abs(4.0 * b2[k] / (grid[k] * grid[k]) - target);
    }

    // Linear decay: consecutive residual ratios track the grid ratio.
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double expected = grid[k + 1] / grid[k];
        const double observed = residual[k + 1] / residual[k];
        const double deviation = std::abs(observed - expected) - ratio_slack * expected;
        verify_detail::fold(report, deviation, 0.0);
    }

    // Cubic fit of B*²(δ): the constant and linear coefficients vanish.
    Eigen::MatrixXd V(static_cast<Eigen::Index>(grid.size()), 4);
    Eigen::VectorXd y(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto row = static_cast<Eigen::Index>(k);
        V(row, 0) = 1.0;
        V(row, 1) = grid[k];
        V(row, 2) = grid[k] * grid[k];
        V(row, 3) = grid[k] * grid[k] * grid[k];
        y(row) = b2[k];
    }
    Eigen::VectorXd coeff = V.colPivHouseholderQr().solve(y);
    verify_detail::fold(report, std::abs(coeff(0)), coeff_bound);
    verify_detail::fold(report, std::abs(coeff(1)), coeff_bound);
    return report;
}

// The truncated logarithmic derivative behaves as a derivative operator:
// Lyapunov equation on the anchored family, zero mean, and the quadratic
// trace formula reproducing the closed form.
inline PropertyReport check_prop1_prop2(std::int64_t trials, std::uint64_t seed,
                                        double tol_lyapunov = 1e-8,
                                        double tol_traceless = 1e-10,
                                        double tol_trace_formula = 1e-10) {
    PropertyReport report{"prop1_prop2", trials, 0, 0.0, 0, seed};
    const double h = kDerivativeStep;
    for (std::int64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, 9000 + static_cast<std::uint64_t>(t));
        const Eigen::Index d = verify_detail::pick(s, 3, 6);
        const double theta = verify_detail::pick_real(mix_seed(s, 1), 0.0, 1.5);

        if (t % 10 == 9) {
            // Pure probe at m = 1: the trace formula gives 0 while the
            // dispatcher reports the full information — the documented
            // boundary case, recorded rather than asserted.
            UnitaryFamily pure(random_density(d, 1, mix_seed(s, 2)),
                               random_generator(d, mix_seed(s, 3)));
            ++report.degenerate_excluded;
            const double formula = tqfi_tsld(pure, theta, 1).value;
            const double dispatched = truncated_qfi(pure, 0.0, 1).value;
            if (std::abs(formula) > tol_trace_formula || dispatched < -1e-10) ++report.failures;
            continue;
        }

        const Eigen::Index r = verify_detail::pick(mix_seed(s, 2), 2, d);
        UnitaryFamily fam(random_density(d, r, mix_seed(s, 3)),
                          random_generator(d, mix_seed(s, 4)));
        const Eigen::Index m = verify_detail::pick(mix_seed(s, 5), 1, r - 1);

        const auto pair = truncate_pair(fam, theta, 0.0, m);
        if (pair.degenerate) {
            ++report.degenerate_excluded;
            continue;
        }
        const Matrix L = tsld(fam, theta, m).matrix;
        const Matrix& tau = pair.exact_truncated;
        const Matrix hi = truncate_pair(fam, theta, +h, m).error_truncated;
        const Matrix lo = truncate_pair(fam, theta, -h, m).error_truncated;
        const Matrix dtau = (hi - lo) / (2.0 * h);

        const double lyapunov =
            (dtau - 0.5 * (L * tau + tau * L)).cwiseAbs().maxCoeff();
        const double traceless = std::abs((L * tau).trace().real());
        const double formula = std::abs(tqfi_tsld(fam, theta, m).value -
                                        tqfi_closed(fam, m).value);
        verify_detail::fold(report, lyapunov, tol_lyapunov);
        verify_detail::fold(report, traceless, tol_traceless);
        verify_detail::fold(report, formula, tol_trace_formula);
    }
    return report;
}

inline std::vector<PropertyReport> run_suite(const VerifyConfig& config = {}) {
    std::vector<PropertyReport> reports;
    reports.push_back(check_lemma1(config.lemma1_trials, config.dmax, mix_seed(config.seed, 101),
                                   config.tol_lemma1));
    reports.push_back(
        check_lemma3_invariance(config.lemma3_trials, mix_seed(config.seed, 102),
                                config.tol_invariance));
    reports.push_back(check_lemma3_convexity(config.lemma3_trials, mix_seed(config.seed, 103),
                                             config.tol_convexity));
    reports.push_back(
        check_lemma3_cptni(config.lemma3_trials, mix_seed(config.seed, 104), config.tol_cptni));
    reports.push_back(check_lemma3_subadditivity(config.lemma3_trials, mix_seed(config.seed, 105),
                                                 config.tol_subadditivity));
    reports.push_back(check_lemma3_direct_sum(config.lemma3_trials, mix_seed(config.seed, 106),
                                              config.tol_direct_sum));
    reports.push_back(check_lemma4(config.lemma4_trials, mix_seed(config.seed, 107),
                                   config.tol_triangle, config.tol_identity,
                                   config.tol_half_angle));
    // Pinned curvature instance: a full-rank qutrit with a complex generator,
    // so the residual has a genuine linear term for the ratio test. The seed
    // is fixed — the check probes the measure, not the sampler.
    {
        constexpr std::uint64_t kCurvatureSeed = 424242;
        UnitaryFamily fam = verify_detail::conditioned_family(3, 3, kCurvatureSeed);
        PropertyReport lemma5 = check_lemma5(fam, 2, {8e-4, 4e-4, 2e-4, 1e-4});
        lemma5.seed = kCurvatureSeed;
        reports.push_back(lemma5);
    }
    reports.push_back(check_prop1_prop2(config.prop_trials, mix_seed(config.seed, 108),
                                        config.tol_lyapunov, config.tol_traceless,
                                        config.tol_trace_formula));
    return reports;
}

} // namespace tqfi

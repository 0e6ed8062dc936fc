// states.hpp — Density matrices, sub-normalized states, unitary families
// ρ_θ = e^{−iθG} ρ e^{iθG}, base-anchored truncation pairs, seeded ensembles

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include "tqfi/errors.hpp"
#include "tqfi/linalg.hpp"

namespace tqfi {

// Trace of a density matrix must sit within this of 1.
inline constexpr double kTraceTol = 1e-10;
// Eigenvalues this far (relative to λmax) above zero count toward the rank.
inline constexpr double kRankTol = 1e-12;
// A truncation cut inside a gap tighter than this is ambiguous.
inline constexpr double kDegenerateGapTol = 1e-10;
// Sub-normalized states may dip this far below PSD before we reject them.
inline constexpr double kSubnormalPsdTol = 1e-9;

// ------------------------------ Seed derivation -----------------------------

// splitmix64 of (seed, salt): derived streams are decorrelated and the same
// (seed, salt) pair always lands on the same stream, independent of call order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace detail {

// Entries are CN(0,1): (x + iy)/√2 with x, y standard normal.
inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double root_half = std::sqrt(0.5);
    Matrix A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            A(i, j) = Complex(gauss(rng) * root_half, gauss(rng) * root_half);
    return A;
}

} // namespace detail

// ------------------------------ DensityMatrix -------------------------------

// Unit-trace PSD matrix with its spectrum cached. Construction validates the
// raw input at the stated tolerances, then canonicalizes: negative roundoff
// eigenvalues clamp to 0 and the spectrum renormalizes to sum exactly 1, so
// truncated traces Σ_{i≤m} λ_i are meaningful down to machine precision.
class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix& rho, double rank_tolerance = kRankTol)
        : rank_tolerance_(rank_tolerance) {
        if (rho.rows() != rho.cols())
            throw std::invalid_argument("density_matrix: matrix must be square");
        if (!is_hermitian(rho))
            throw NonHermitianInput("density_matrix: input is not Hermitian within 1e-10");
        if (std::abs(rho.trace().real() - 1.0) > kTraceTol || std::abs(rho.trace().imag()) > kTraceTol)
            throw std::invalid_argument("density_matrix: trace must equal 1 within 1e-10");

        Spectrum s = eigh(rho);
        if (s.eigenvalues.minCoeff() < -kPsdTol)
            throw NotPSD("density_matrix: eigenvalue below -1e-10, input is not a state");

        spectrum_.eigenvalues = s.eigenvalues.cwiseMax(0.0);
        spectrum_.eigenvalues /= spectrum_.eigenvalues.sum();
        spectrum_.eigenvectors = std::move(s.eigenvectors);
        matrix_ = spectrum_.reconstruct();
    }

    // Trusted spectral form (λ ≥ 0 descending, Σλ = 1, V orthonormal); used by
    // evolve so eigenvalues stay exactly θ-independent.
    static DensityMatrix from_spectrum(const RealVector& eigenvalues, const Matrix& eigenvectors,
                                       double rank_tolerance = kRankTol) {
        if (eigenvalues.size() != eigenvectors.cols() || eigenvectors.rows() != eigenvectors.cols())
            throw std::invalid_argument("density_matrix: spectrum dimensions disagree");
        DensityMatrix out(Private{});
        out.rank_tolerance_ = rank_tolerance;
        out.spectrum_.eigenvalues = eigenvalues;
        out.spectrum_.eigenvectors = eigenvectors;
        out.matrix_ = out.spectrum_.reconstruct();
        return out;
    }

    const Matrix& matrix() const { return matrix_; }
    const Spectrum& spectrum() const { return spectrum_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    double rank_tolerance() const { return rank_tolerance_; }

    // Number of eigenvalues above rank_tolerance · λmax.
    Eigen::Index rank() const {
        const double cut = rank_tolerance_ * spectrum_.eigenvalues[0];
        Eigen::Index r = 0;
        while (r < spectrum_.eigenvalues.size() && spectrum_.eigenvalues[r] > cut) ++r;
        return r;
    }

    double purity() const { return spectrum_.eigenvalues.squaredNorm(); }

private:
    struct Private {};
    explicit DensityMatrix(Private) {}

    Matrix matrix_;
    Spectrum spectrum_;
    double rank_tolerance_ = kRankTol;
};

inline Eigen::Index rank_of(const DensityMatrix& rho) { return rho.rank(); }

// ---------------------------- SubNormalizedState ----------------------------

// PSD matrix with 0 ≤ trace ≤ 1 + 1e-10. Members of truncated families and
// outputs of trace-non-increasing channels live here.
class SubNormalizedState {
public:
    explicit SubNormalizedState(const Matrix& tau) {
        if (tau.rows() != tau.cols())
            throw std::invalid_argument("subnormalized_state: matrix must be square");
        if (!is_hermitian(tau))
            throw NonHermitianInput("subnormalized_state: input is not Hermitian within 1e-10");
        matrix_ = hermitize(tau);
        trace_ = matrix_.trace().real();
        if (trace_ > 1.0 + kTraceTol)
            throw TraceExceedsOne("subnormalized_state: trace exceeds 1 by more than 1e-10");
        spectrum_ = eigh(matrix_);
        if (spectrum_.eigenvalues.size() && spectrum_.eigenvalues.minCoeff() < -kSubnormalPsdTol)
            throw NotPSD("subnormalized_state: eigenvalue below -1e-9, input is not PSD");
        if (trace_ < -kSubnormalPsdTol * static_cast<double>(tau.rows()))
            throw NotPSD("subnormalized_state: negative trace");
    }

    const Matrix& matrix() const { return matrix_; }
    const Spectrum& spectrum() const { return spectrum_; }
    double trace_value() const { return trace_; }
    Eigen::Index dim() const { return matrix_.rows(); }

    // PSD square root from the cached spectrum, roundoff suppressed.
    Matrix sqrt() const {
        RealVector w = sqrt_spectrum_values(spectrum_.eigenvalues);
        return hermitize(spectrum_.eigenvectors * w.asDiagonal() * spectrum_.eigenvectors.adjoint());
    }

private:
    Matrix matrix_;
    Spectrum spectrum_;
    double trace_ = 0.0;
};

// ------------------------------ UnitaryFamily -------------------------------

// ρ_θ = W(θ) ρ W†(θ) with W(θ) = e^{−iθG}. The generator's spectrum is cached
// so W(θ) is cheap and every θ shares one deterministic eigenbasis.
class UnitaryFamily {
public:
    UnitaryFamily(DensityMatrix probe, Matrix generator)
        : probe_(std::move(probe)), generator_(hermitize(generator)) {
        if (generator.rows() != probe_.dim() || generator.cols() != probe_.dim())
            throw std::invalid_argument("unitary_family: generator and probe dimensions disagree");
        if (!is_hermitian(generator))
            throw NonHermitianInput("unitary_family: generator is not Hermitian within 1e-10");
        gen_spectrum_ = eigh(generator_);
    }

    const DensityMatrix& probe() const { return probe_; }
    const Matrix& generator() const { return generator_; }
    Eigen::Index dim() const { return probe_.dim(); }

    // W(θ) = e^{−iθG}
    Matrix unitary(double theta) const {
        Vector phases(gen_spectrum_.size());
        for (Eigen::Index i = 0; i < gen_spectrum_.size(); ++i)
            phases[i] = std::exp(Complex(0.0, -theta * gen_spectrum_.eigenvalues[i]));
        return gen_spectrum_.eigenvectors * phases.asDiagonal() * gen_spectrum_.eigenvectors.adjoint();
    }

private:
    DensityMatrix probe_;
    Matrix generator_;
    Spectrum gen_spectrum_;
};

// ρ_θ with the probe's eigenvalues carried over exactly: |λ_i(θ)⟩ = W(θ)|λ_i⟩.
inline DensityMatrix evolve(const UnitaryFamily& family, double theta) {
    const Spectrum& s = family.probe().spectrum();
    return DensityMatrix::from_spectrum(s.eigenvalues, family.unitary(theta) * s.eigenvectors,
                                        family.probe().rank_tolerance());
}

// ------------------------------ Truncation ----------------------------------

// Both members of the pair share the projector Π onto the top-m eigenvectors
// of ρ_θ at the BASE angle: the exact truncation Σ_{i≤m} λ_i |λ_i(θ)⟩⟨λ_i(θ)|
// and the error truncation Π ρ_{θ+δ} Π.
struct TruncatedPair {
    Matrix exact_truncated;
    Matrix error_truncated;
    Matrix kept_basis;          // d×m, column i is |λ_i(θ)⟩
    Matrix error_in_basis;      // m×m, ⟨λ_i(θ)| ρ_{θ+δ} |λ_j(θ)⟩
    RealVector kept_eigenvalues;
    Eigen::Index projector_rank = 0;
    double base_theta = 0.0;
    double shift = 0.0;
    bool degenerate = false;    // cut landed inside a near-degenerate gap

    double exact_trace() const { return kept_eigenvalues.sum(); }
    double error_trace() const { return error_in_basis.trace().real(); }
};

inline TruncatedPair truncate_pair(const UnitaryFamily& family, double theta, double delta,
                                   Eigen::Index m) {
    const Eigen::Index d = family.dim();
    if (m < 1 || m > d)
        throw InvalidRank("truncate_pair: m must lie in [1, d]");

    DensityMatrix rho_base = evolve(family, theta);
    DensityMatrix rho_shift = evolve(family, theta + delta);
    const Spectrum& s = rho_base.spectrum();

    TruncatedPair pair;
    pair.kept_basis = s.eigenvectors.leftCols(m);
    pair.kept_eigenvalues = s.eigenvalues.head(m);
    pair.projector_rank = m;
    pair.base_theta = theta;
    pair.shift = delta;
    pair.degenerate = s.gap_below(m - 1, kDegenerateGapTol);

    pair.exact_truncated =
        hermitize(pair.kept_basis * pair.kept_eigenvalues.asDiagonal() * pair.kept_basis.adjoint());
    pair.error_in_basis = hermitize(pair.kept_basis.adjoint() * rho_shift.matrix() * pair.kept_basis);
    pair.error_truncated = hermitize(pair.kept_basis * pair.error_in_basis * pair.kept_basis.adjoint());
    return pair;
}

// ---------------------------- Random ensembles ------------------------------

// Ginibre-induced state of exact rank r: GG†/Tr[GG†] with G a d×r CN(0,1) draw.
inline DensityMatrix random_density(Eigen::Index d, Eigen::Index r, std::uint64_t seed) {
    if (d < 1)
        throw std::invalid_argument("random_density: dimension must be positive");
    if (r < 1 || r > d)
        throw InvalidRank("random_density: rank must lie in [1, d]");
    std::mt19937_64 rng(seed);
    Matrix G = detail::gaussian_matrix(d, r, rng);
    Matrix P = G * G.adjoint();
    P /= P.trace().real();
    return DensityMatrix(hermitize(P));
}

// Hermitized complex Gaussian (GUE normalization: off-diagonal variance 1/2).
inline Matrix random_generator(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return hermitize(detail::gaussian_matrix(d, d, rng));
}

// QR-orthonormalized complex Gaussian with the R-diagonal phase fix.
inline Matrix random_unitary(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix A = detail::gaussian_matrix(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(A);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, d);
    Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex rii = R(i, i);
        Q.col(i) *= rii / std::abs(rii);
    }
    return Q;
}

} // namespace tqfi

// fidelity.hpp — Uhlmann fidelity, generalized fidelity for sub-normalized
// states F*(τ,σ) = ‖√τ√σ‖₁ + √((1−Trτ)(1−Trσ)), the truncated T-operator
// route, and the distances induced by F*

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tqfi/errors.hpp"
#include "tqfi/linalg.hpp"
#include "tqfi/states.hpp"

namespace tqfi {

// Below this trace deficit a state counts as normalized and the geometric-mean
// term is exactly zero (it would otherwise inject O(√roundoff) noise).
inline constexpr double kGeoZeroTol = 1e-12;
// Sandwich products √τ σ √τ are PSD in exact arithmetic; allow this much
// relative roundoff negativity before distrusting them.
inline constexpr double kSandwichPsdTol = 1e-8;

namespace detail {

// Strict total order on matrices (trace, then entrywise re/im). Evaluating
// fidelities with the arguments in canonical order makes symmetry exact
// instead of symmetric-up-to-roundoff.
inline bool matrix_before(const Matrix& A, const Matrix& B) {
    const double ta = A.trace().real(), tb = B.trace().real();
    if (ta != tb) return ta < tb;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            if (A(i, j).real() != B(i, j).real()) return A(i, j).real() < B(i, j).real();
            if (A(i, j).imag() != B(i, j).imag()) return A(i, j).imag() < B(i, j).imag();
        }
    }
    return false;
}

inline Matrix sqrt_from_spectrum(const Spectrum& s) {
    RealVector w = sqrt_spectrum_values(s.eigenvalues);
    return hermitize(s.eigenvectors * w.asDiagonal() * s.eigenvectors.adjoint());
}

// ‖√a √b‖₁ = Tr sqrt(√a b √a), evaluated in canonical argument order.
inline double root_overlap(const Matrix& a_matrix, const Spectrum& a_spectrum,
                           const Matrix& b_matrix, const Spectrum& b_spectrum) {
    const bool flip = matrix_before(b_matrix, a_matrix);
    const Matrix root = sqrt_from_spectrum(flip ? b_spectrum : a_spectrum);
    const Matrix& inner = flip ? a_matrix : b_matrix;
    return trace_sqrt(hermitize(root * inner * root), kSandwichPsdTol);
}

} // namespace detail

// -------------------------------- Fidelity ----------------------------------

// F(ρ₁,ρ₂) = Tr sqrt(√ρ₁ ρ₂ √ρ₁). Exactly symmetric by canonical ordering.
inline double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    return detail::root_overlap(rho1.matrix(), rho1.spectrum(), rho2.matrix(), rho2.spectrum());
}

// -------------------------- Generalized fidelity -----------------------------

// F*(τ,σ) = ‖√τ√σ‖₁ + √((1−Trτ)(1−Trσ)). Reduces to F when either argument is
// normalized; the geometric-mean term is hard-zeroed once a trace is within
// 1e-12 of 1.
inline double generalized_fidelity(const SubNormalizedState& tau, const SubNormalizedState& sigma) {
    if (tau.dim() != sigma.dim())
        throw std::invalid_argument("generalized_fidelity: dimension mismatch");
    const double overlap =
        detail::root_overlap(tau.matrix(), tau.spectrum(), sigma.matrix(), sigma.spectrum());
    const double slack_t = 1.0 - tau.trace_value();
    const double slack_s = 1.0 - sigma.trace_value();
    if (slack_t < kGeoZeroTol || slack_s < kGeoZeroTol) return overlap;
    return overlap + std::sqrt(slack_t * slack_s);
}

// ------------------------------- T-operator ---------------------------------

// T_ij = √(λ_i λ_j) ⟨λ_i(θ)| ρ_{θ+δ} |λ_j(θ)⟩ on the kept m-dimensional basis.
// Carries the whole truncated overlap: Tr√T = ‖√ρ^(m)_θ √(Πρ_{θ+δ}Π)‖₁.
struct TOperator {
    Matrix matrix;               // m×m, PSD
    RealVector kept_eigenvalues; // the λ_i defining the √λ weights
};

inline TOperator t_operator(const TruncatedPair& pair) {
    RealVector roots = sqrt_spectrum_values(pair.kept_eigenvalues);
    TOperator T;
    T.kept_eigenvalues = pair.kept_eigenvalues;
    T.matrix = hermitize(roots.asDiagonal() * pair.error_in_basis * roots.asDiagonal());
    Spectrum s = eigh(T.matrix);
    if (s.size() && s.eigenvalues.minCoeff() < -kPsdTol)
        throw NotPSD("t_operator: numerical negativity exceeds -1e-10");
    return T;
}

// F* between the two members of a truncation pair, via the m×m T-operator.
inline double generalized_fidelity_truncated(const TruncatedPair& pair) {
    TOperator T = t_operator(pair);
    const double overlap = trace_sqrt(T.matrix, kSandwichPsdTol);
    const double slack_exact = 1.0 - pair.exact_trace();
    const double slack_error = 1.0 - pair.error_trace();
    if (slack_exact < kGeoZeroTol || slack_error < kGeoZeroTol) return overlap;
    return overlap + std::sqrt(std::max(slack_exact, 0.0) * std::max(slack_error, 0.0));
}

inline double generalized_fidelity_truncated(const UnitaryFamily& family, double theta,
                                             double delta, Eigen::Index m) {
    return generalized_fidelity_truncated(truncate_pair(family, theta, delta, m));
}

// --------------------------- Induced distances ------------------------------

// Generalized Bures distance squared, B*² = 2(1 − F*). Can sit a rounding
// error below 0 when the states coincide; callers wanting B* should clamp.
inline double bures_sq(const SubNormalizedState& tau, const SubNormalizedState& sigma) {
    return 2.0 * (1.0 - generalized_fidelity(tau, sigma));
}

inline double bures(const SubNormalizedState& tau, const SubNormalizedState& sigma) {
    return std::sqrt(std::max(bures_sq(tau, sigma), 0.0));
}

// Generalized angular distance A* = arccos(F*).
inline double angular_distance(const SubNormalizedState& tau, const SubNormalizedState& sigma) {
    return std::acos(std::clamp(generalized_fidelity(tau, sigma), 0.0, 1.0));
}

// Generalized purified distance P = √(1 − F*).
inline double purified_distance(const SubNormalizedState& tau, const SubNormalizedState& sigma) {
    return std::sqrt(std::max(1.0 - generalized_fidelity(tau, sigma), 0.0));
}

} // namespace tqfi

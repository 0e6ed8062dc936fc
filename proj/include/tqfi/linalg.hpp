// linalg.hpp — Dense Hermitian linear algebra: eigh, PSD square roots, trace norm,
// matrix exponentials of Hermitian generators, Kronecker and direct sums

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tqfi/errors.hpp"

namespace tqfi {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Hermiticity is enforced at this tolerance (max-entry deviation from H = H†).
inline constexpr double kHermitianTol = 1e-10;
// Eigenvalues of a nominally PSD matrix may dip this far (relative) below zero
// before we refuse to clamp them.
inline constexpr double kPsdTol = 1e-10;
// Eigenvalues below this (relative to λmax) are roundoff junk of an exact
// zero. They must map to exactly 0 under √ — otherwise √(1e-16) ≈ 1e-8 noise
// leaks into every trace of a square root of a rank-deficient matrix.
inline constexpr double kSpectralZeroTol = 1e-12;

// --------------------------------- Spectrum ---------------------------------

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
// Column i of eigenvectors pairs with eigenvalues[i].
struct Spectrum {
    RealVector eigenvalues;
    Matrix eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }

    // Within a near-degenerate cluster the backend's ordering is arbitrary, so a
    // cut between i and i+1 there is ambiguous. |λ_i − λ_{i+1}| < tol flags it.
    bool gap_below(Eigen::Index i, double tol) const {
        if (i < 0 || i + 1 >= eigenvalues.size()) return false;
        return std::abs(eigenvalues[i] - eigenvalues[i + 1]) < tol;
    }

    // V diag(λ) V†, re-symmetrized.
    Matrix reconstruct() const {
        Matrix M = eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
        return ((M + M.adjoint()) / 2.0).eval();
    }
};

// ------------------------------ Basic helpers -------------------------------

inline Matrix hermitize(const Matrix& A) {
    return ((A + A.adjoint()) / 2.0).eval();
}

inline bool is_hermitian(const Matrix& A, double tol = kHermitianTol) {
    if (A.rows() != A.cols()) return false;
    return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------- eigh ------------------------------------

inline Spectrum eigh(const Matrix& H) {
    if (H.rows() != H.cols())
        throw std::invalid_argument("eigh: matrix must be square");
    if (!is_hermitian(H))
        throw NonHermitianInput("eigh: input deviates from H = H† by more than 1e-10");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(H));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigh: eigensolver did not converge");

    // Eigen sorts ascending; we keep descending so λ_1 is the largest weight.
    const Eigen::Index d = H.rows();
    Spectrum s;
    s.eigenvalues = solver.eigenvalues().reverse();
    s.eigenvectors = Matrix(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        s.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
    return s;
}

// --------------------------- PSD square roots -------------------------------

// Largest eigenvalue magnitude; the scale against which "negligibly negative"
// is judged.
inline double spectral_scale(const Spectrum& s) {
    return s.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
}

// √λ elementwise with roundoff suppression: entries below kSpectralZeroTol·λmax
// map to exactly 0.
inline RealVector sqrt_spectrum_values(const RealVector& w) {
    const double cut = w.size() ? kSpectralZeroTol * w.cwiseAbs().maxCoeff() : 0.0;
    RealVector out(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        out[i] = w[i] > cut ? std::sqrt(w[i]) : 0.0;
    return out;
}

inline Matrix psd_sqrt(const Matrix& P, double neg_tol = kPsdTol) {
    Spectrum s = eigh(P);
    const double scale = spectral_scale(s);
    if (s.size() && s.eigenvalues.minCoeff() < -neg_tol * scale)
        throw NotPSD("psd_sqrt: eigenvalue below -tol·λmax, input is not PSD");
    RealVector w = sqrt_spectrum_values(s.eigenvalues);
    Matrix R = s.eigenvectors * w.asDiagonal() * s.eigenvectors.adjoint();
    return hermitize(R);
}

// Tr sqrt(P) for PSD P, without forming the root.
inline double trace_sqrt(const Matrix& P, double neg_tol = kPsdTol) {
    Spectrum s = eigh(P);
    const double scale = spectral_scale(s);
    if (s.size() && s.eigenvalues.minCoeff() < -neg_tol * scale)
        throw NotPSD("trace_sqrt: eigenvalue below -tol·λmax, input is not PSD");
    return sqrt_spectrum_values(s.eigenvalues).sum();
}

// ‖A‖₁ = Tr sqrt(A A†), the sum of singular values.
inline double trace_norm(const Matrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("trace_norm: matrix must be square");
    return trace_sqrt(A * A.adjoint());
}

// ------------------------- Unitary exponentials -----------------------------

// W(θ) = e^{−iθG} for Hermitian G, via the eigendecomposition of G.
inline Matrix expm_unitary(const Matrix& G, double theta) {
    Spectrum s = eigh(G);
    Vector phases(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        phases[i] = std::exp(Complex(0.0, -theta * s.eigenvalues[i]));
    return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

// --------------------------- Composite spaces -------------------------------

inline Matrix kron(const Matrix& A, const Matrix& B) {
    return Eigen::kroneckerProduct(A, B);
}

inline Matrix direct_sum(const std::vector<Matrix>& blocks) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) {
        if (b.rows() != b.cols())
            throw std::invalid_argument("direct_sum: blocks must be square");
        n += b.rows();
    }
    Matrix out = Matrix::Zero(n, n);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        out.block(at, at, b.rows(), b.rows()) = b;
        at += b.rows();
    }
    return out;
}

} // namespace tqfi

// fisher.hpp — Quantum Fisher information of unitary families ρ_θ = e^{−iθG}ρe^{iθG}
// and its truncated lower bound. Three independent routes everywhere: closed
// eigenbasis sums, (truncated) SLD operators, and the generalized-fidelity
// finite-difference limit, which is the ground-truth semantics.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tqfi/errors.hpp"
#include "tqfi/fidelity.hpp"
#include "tqfi/linalg.hpp"
#include "tqfi/states.hpp"

namespace tqfi {

// Eigenvalue pairs with λ_i + λ_j at or below this (relative to λmax) are
// outside the support and skipped in SLD-style sums.
inline constexpr double kPairSkipTol = 1e-12;
// The two algebraic forms of the truncated closed formula must agree to this.
inline constexpr double kFormAgreementTol = 1e-10;
// Finite-difference quotients: δ must satisfy δ² ≤ kDeltaGuard·(1 − Σ_{i≤m}λ_i)
// below the rank, or the series behind the quotient is untrustworthy.
inline constexpr double kDeltaGuard = 1e-2;
// Successive Richardson extrapolants must agree to this (relative, with an
// absolute floor for values near zero).
inline constexpr double kFdRelTol = 1e-4;
// Absolute floor for the extrapolant-agreement check. When the limit is
// exactly zero (e.g. m = 1 truncations) the extrapolants are pure residual
// bias decaying like δ⁴, so their mutual spread is ~15× the actual error of
// the final value and a purely relative criterion can never be met. The
// floor certifies an absolute error ≲ 1e−6, well inside every tolerance we
// quote downstream; the reported uncertainty still carries the full spread.
inline constexpr double kFdAbsTol = 1e-5;
// Step for central-difference derivatives of states (cross-check route).
inline constexpr double kDerivativeStep = 1e-5;

// Halving grid for the δ → 0 extrapolation.
inline const std::vector<double> kDefaultDeltas = {1e-2, 5e-3, 2.5e-3};

enum class Method { sld, eigenbasis, closed_form, tsld, finite_difference };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::sld: return "sld";
        case Method::eigenbasis: return "eigenbasis";
        case Method::closed_form: return "closed_form";
        case Method::tsld: return "tsld";
        case Method::finite_difference: return "finite_difference";
    }
    return "unknown";
}

struct FisherResult {
    double value = 0.0;
    Method method = Method::eigenbasis;
    std::optional<Eigen::Index> m; // empty: untruncated
    bool degenerate = false;       // truncation cut landed in a near-degenerate gap
    double uncertainty = 0.0;      // extrapolation spread (finite difference only)
};

struct SLDOperator {
    Matrix matrix;                          // d×d Hermitian
    std::optional<Eigen::Index> truncation; // m when truncated
};

// ------------------------- Eigenbasis ingredients ---------------------------

namespace detail {

// Everything the closed forms need: probe eigenvalues λ (descending) and the
// generator in the probe eigenbasis, Ĝ_ij = ⟨λ_i|G|λ_j⟩. Both θ-independent,
// since ⟨λ_i(θ)|G|λ_j(θ)⟩ = ⟨λ_i|G|λ_j⟩ for W(θ) = e^{−iθG}.
struct EigenbasisData {
    RealVector lambda;
    Matrix G;
};

inline EigenbasisData eigenbasis_generator(const UnitaryFamily& family) {
    const Spectrum& s = family.probe().spectrum();
    return {s.eigenvalues,
            (s.eigenvectors.adjoint() * family.generator() * s.eigenvectors).eval()};
}

// K_ij = 2i (λ_i − λ_j)/(λ_i + λ_j) Ĝ_ij on indices below `m`, the SLD in the
// probe eigenbasis. m = d gives the full SLD.
inline Matrix sld_in_eigenbasis(const EigenbasisData& eb, Eigen::Index m) {
    const double skip = kPairSkipTol * eb.lambda[0];
    Matrix K = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double sum = eb.lambda[i] + eb.lambda[j];
            if (sum <= skip) continue;
            K(i, j) = Complex(0.0, 2.0) * ((eb.lambda[i] - eb.lambda[j]) / sum) * eb.G(i, j);
        }
    }
    return K;
}

// Richardson extrapolation of symmetrized curvature quotients
// q(δ) = 8(1 − (f(+δ) + f(−δ))/2)/δ² toward δ → 0. `fidelity_at` maps a signed
// shift δ to the fidelity-like overlap between the θ and θ+δ members.
template <class FidelityAt>
std::pair<double, double> fd_limit(FidelityAt&& fidelity_at, std::vector<double> deltas) {
    if (deltas.empty())
        throw std::invalid_argument("fd_limit: need at least one delta");
    std::sort(deltas.begin(), deltas.end(), std::greater<double>());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    for (double d : deltas)
        if (!(d > 0.0))
            throw std::invalid_argument("fd_limit: deltas must be positive");

    std::vector<double> q(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double d = deltas[k];
        const double f_avg = (fidelity_at(d) + fidelity_at(-d)) / 2.0;
        q[k] = 8.0 * (1.0 - f_avg) / (d * d);
    }
    if (q.size() == 1) return {q[0], 0.0};

    // One Richardson level on the (even) δ² error term.
    std::vector<double> extr(q.size() - 1);
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        const double a2 = deltas[k] * deltas[k];
        const double b2 = deltas[k + 1] * deltas[k + 1];
        extr[k] = q[k + 1] + (q[k + 1] - q[k]) * b2 / (a2 - b2);
    }
    const double value = extr.back();
    if (extr.size() == 1) return {value, std::abs(extr[0] - q.back())};

    const double spread = std::abs(extr[extr.size() - 1] - extr[extr.size() - 2]);
    if (spread > kFdRelTol * std::abs(value) + kFdAbsTol)
        throw NonConvergent("fd_limit: successive Richardson extrapolants disagree");
    return {value, spread};
}

} // namespace detail

// ----------------------------- SLD operators --------------------------------

// Symmetric logarithmic derivative: ∂θρθ = ½(Jθρθ + ρθJθ), support-restricted.
inline SLDOperator sld(const UnitaryFamily& family, double theta) {
    detail::EigenbasisData eb = detail::eigenbasis_generator(family);
    Matrix K = detail::sld_in_eigenbasis(eb, family.dim());
    Matrix basis = family.unitary(theta) * family.probe().spectrum().eigenvectors;
    return {hermitize(basis * K * basis.adjoint()), std::nullopt};
}

// Truncated SLD: the same coefficients restricted to the kept m×m block.
inline SLDOperator tsld(const UnitaryFamily& family, double theta, Eigen::Index m) {
    if (m < 1 || m > family.dim())
        throw InvalidRank("tsld: m must lie in [1, d]");
    detail::EigenbasisData eb = detail::eigenbasis_generator(family);
    Matrix K = detail::sld_in_eigenbasis(eb, m);
    Matrix basis =
        (family.unitary(theta) * family.probe().spectrum().eigenvectors).leftCols(m);
    return {hermitize(basis * K * basis.adjoint()), m};
}

// ∂θρθ = i(ρθG − Gρθ), the analytic route.
inline Matrix state_derivative(const UnitaryFamily& family, double theta) {
    Matrix rho = evolve(family, theta).matrix();
    const Matrix& G = family.generator();
    return hermitize(Complex(0.0, 1.0) * (rho * G - G * rho));
}

// Central difference at the pinned step, the independent cross-check route.
inline Matrix state_derivative_fd(const UnitaryFamily& family, double theta,
                                  double step = kDerivativeStep) {
    Matrix hi = evolve(family, theta + step).matrix();
    Matrix lo = evolve(family, theta - step).matrix();
    return ((hi - lo) / (2.0 * step)).eval();
}

// --------------------------------- QFI --------------------------------------

inline FisherResult qfi(const UnitaryFamily& family, double theta,
                        Method method = Method::eigenbasis,
                        const std::vector<double>& deltas = kDefaultDeltas) {
    FisherResult out;
    out.method = method;
    switch (method) {
        case Method::eigenbasis: {
            // I = 4 Σ λ_i |Ĝ_ij|² − 8 Σ λ_iλ_j/(λ_i+λ_j) |Ĝ_ij|², support pairs only.
            detail::EigenbasisData eb = detail::eigenbasis_generator(family);
            const Eigen::Index d = eb.lambda.size();
            const double skip = kPairSkipTol * eb.lambda[0];
            double first = 0.0, second = 0.0;
            for (Eigen::Index i = 0; i < d; ++i) {
                for (Eigen::Index j = 0; j < d; ++j) {
                    const double sum = eb.lambda[i] + eb.lambda[j];
                    if (sum <= skip) continue;
                    const double g2 = std::norm(eb.G(i, j));
                    first += eb.lambda[i] * g2;
                    second += eb.lambda[i] * eb.lambda[j] / sum * g2;
                }
            }
            out.value = 4.0 * first - 8.0 * second;
            return out;
        }
        case Method::sld: {
            Matrix J = sld(family, theta).matrix;
            Matrix rho = evolve(family, theta).matrix();
            out.value = (J * J * rho).trace().real();
            return out;
        }
        case Method::finite_difference: {
            DensityMatrix base = evolve(family, theta);
            auto fidelity_at = [&](double delta) {
                return fidelity(base, evolve(family, theta + delta));
            };
            auto [value, unc] = detail::fd_limit(fidelity_at, deltas);
            out.value = value;
            out.uncertainty = unc;
            return out;
        }
        default:
            throw std::invalid_argument("qfi: method applies to truncated quantities only");
    }
}

// ---------------------------- Truncated QFI ----------------------------------

// Closed form, valid strictly below the rank:
//   I* = 2 Σ_{i,j≤m} (λ_i−λ_j)²/(λ_i+λ_j) |Ĝ_ij|².
// Also evaluated as the 4Σ−8Σ two-sum form; the two must agree to 1e-10.
inline FisherResult tqfi_closed(const UnitaryFamily& family, Eigen::Index m) {
    const Eigen::Index d = family.dim();
    if (m < 1 || m > d)
        throw InvalidRank("tqfi_closed: m must lie in [1, d]");
    if (m >= family.probe().rank())
        throw TruncationNotStrict(
            "tqfi_closed: closed form requires m < rank(ρ); use truncated_qfi for m >= rank");

    detail::EigenbasisData eb = detail::eigenbasis_generator(family);
    const double skip = kPairSkipTol * eb.lambda[0];
    double first = 0.0, second = 0.0, simplified = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double sum = eb.lambda[i] + eb.lambda[j];
            if (sum <= skip) continue;
            const double g2 = std::norm(eb.G(i, j));
            const double diff = eb.lambda[i] - eb.lambda[j];
            first += eb.lambda[i] * g2;
            second += eb.lambda[i] * eb.lambda[j] / sum * g2;
            simplified += diff * diff / sum * g2;
        }
    }
    const double two_sum = 4.0 * first - 8.0 * second;
    simplified *= 2.0;
    if (std::abs(two_sum - simplified) > kFormAgreementTol)
        throw std::logic_error("tqfi_closed: algebraic forms disagree beyond 1e-10");

    FisherResult out;
    out.value = simplified;
    out.method = Method::closed_form;
    out.m = m;
    out.degenerate = family.probe().spectrum().gap_below(m - 1, kDegenerateGapTol);
    return out;
}

// Tr[L²θ τθ] with the truncated SLD — the operator route to the same bound.
inline FisherResult tqfi_tsld(const UnitaryFamily& family, double theta, Eigen::Index m) {
    if (m < 1 || m > family.dim())
        throw InvalidRank("tqfi_tsld: m must lie in [1, d]");
    Matrix L = tsld(family, theta, m).matrix;
    Matrix tau = truncate_pair(family, theta, 0.0, m).exact_truncated;

    FisherResult out;
    out.value = (L * L * tau).trace().real();
    out.method = Method::tsld;
    out.m = m;
    out.degenerate = family.probe().spectrum().gap_below(m - 1, kDegenerateGapTol);
    return out;
}

// Def-3 semantics: 8(1 − F*(ρ^(m)_θ, ρ^(m)_{θ+δ}))/δ² extrapolated to δ → 0.
// This is the arbiter the algebraic routes are tested against.
inline FisherResult tqfi_fd(const UnitaryFamily& family, double theta, Eigen::Index m,
                            const std::vector<double>& deltas = kDefaultDeltas) {
    const Eigen::Index d = family.dim();
    if (m < 1 || m > d)
        throw InvalidRank("tqfi_fd: m must lie in [1, d]");

    const RealVector& lambda = family.probe().spectrum().eigenvalues;
    if (m < family.probe().rank()) {
        const double deficit = 1.0 - lambda.head(m).sum();
        for (double delta : deltas)
            if (delta * delta > kDeltaGuard * deficit)
                throw DeltaTooLarge(
                    "tqfi_fd: delta² exceeds 1e-2·(1 − Σ_{i≤m}λ_i); shrink the grid");
    }

    auto fidelity_at = [&](double delta) {
        return generalized_fidelity_truncated(family, theta, delta, m);
    };
    auto [value, unc] = detail::fd_limit(fidelity_at, deltas);

    FisherResult out;
    out.value = value;
    out.method = Method::finite_difference;
    out.m = m;
    out.degenerate = family.probe().spectrum().gap_below(m - 1, kDegenerateGapTol);
    out.uncertainty = unc;
    return out;
}

// Dispatcher with the case split made explicit: strictly below the rank the
// closed form is the Def-3 limit; at or above the rank the truncation keeps
// the whole support and the limit is the full QFI (eigenbasis route).
inline FisherResult truncated_qfi(const UnitaryFamily& family, double theta, Eigen::Index m) {
    const Eigen::Index d = family.dim();
    if (m < 1 || m > d)
        throw InvalidRank("truncated_qfi: m must lie in [1, d]");
    if (m < family.probe().rank())
        return tqfi_closed(family, m);

    FisherResult out = qfi(family, theta, Method::eigenbasis);
    out.m = m;
    out.degenerate = family.probe().spectrum().gap_below(m - 1, kDegenerateGapTol);
    return out;
}

} // namespace tqfi

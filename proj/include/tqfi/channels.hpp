#pragma once

// channels.hpp — CPTP / CPTNI maps in Kraus form, used as adversarial inputs
// for the monotonicity properties.

#include <utility>
#include <vector>

#include "tqfi/states.hpp"

namespace tqfi {

inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kProjectorTol = 1e-10;

enum class TraceClass { preserving, non_increasing };

class KrausChannel {
public:
    KrausChannel(std::vector<Matrix> kraus, TraceClass trace_class)
        : kraus_(std::move(kraus)), trace_class_(trace_class) {
        if (kraus_.empty())
            throw std::invalid_argument("KrausChannel: needs at least one Kraus operator");
        for (const Matrix& K : kraus_)
            if (K.rows() != kraus_[0].rows() || K.cols() != kraus_[0].cols())
                throw std::invalid_argument("KrausChannel: Kraus operators must share a shape");

        const Matrix C = completeness();
        if (trace_class_ == TraceClass::preserving) {
            const double defect = (C - Matrix::Identity(C.rows(), C.cols())).cwiseAbs().maxCoeff();
            if (defect > kCompletenessTol)
                throw std::invalid_argument("KrausChannel: ΣK†K deviates from identity");
        } else {
            // ΣK†K ≤ I: the completeness operator may not exceed the identity.
            const Spectrum s = eigh(hermitize(C));
            if (s.eigenvalues[0] > 1.0 + kCompletenessTol)
                throw std::invalid_argument("KrausChannel: ΣK†K exceeds identity");
        }
    }

    const std::vector<Matrix>& kraus_operators() const { return kraus_; }
    TraceClass trace_class() const { return trace_class_; }
    Eigen::Index input_dim() const { return kraus_[0].cols(); }
    Eigen::Index output_dim() const { return kraus_[0].rows(); }

    Matrix completeness() const {
        Matrix C = Matrix::Zero(input_dim(), input_dim());
        for (const Matrix& K : kraus_) C += K.adjoint() * K;
        return C;
    }

private:
    std::vector<Matrix> kraus_;
    TraceClass trace_class_;
};

inline SubNormalizedState apply(const KrausChannel& channel, const SubNormalizedState& state) {
    if (state.dim() != channel.input_dim())
        throw std::invalid_argument("apply: state dimension does not match channel input");
    Matrix out = Matrix::Zero(channel.output_dim(), channel.output_dim());
    for (const Matrix& K : channel.kraus_operators()) out += K * state.matrix() * K.adjoint();
    return SubNormalizedState(hermitize(out));
}

inline SubNormalizedState apply(const KrausChannel& channel, const DensityMatrix& state) {
    return apply(channel, SubNormalizedState(state.matrix()));
}

inline KrausChannel projector_channel(const Matrix& pi) {
    if (!is_hermitian(pi, kHermitianTol)) throw NotAProjector("projector_channel: not Hermitian");
    if ((pi * pi - pi).cwiseAbs().maxCoeff() > kProjectorTol)
        throw NotAProjector("projector_channel: not idempotent");
    return KrausChannel({pi}, TraceClass::non_increasing);
}

// Stinespring sampling: orthonormalize a (k·d)×d Gaussian block column-wise
// and slice the isometry into k Kraus operators, so ΣK†K = I by construction.
inline KrausChannel random_cptp(Eigen::Index d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("random_cptp: d must be ≥ 1");
    const Eigen::Index k = 2 + static_cast<Eigen::Index>(mix_seed(seed, 0) % 3); // 2..4 operators
    std::mt19937_64 rng(mix_seed(seed, 1));
    const Matrix A = detail::gaussian_matrix(k * d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(A);
    const Matrix Q = qr.householderQ() * Matrix::Identity(k * d, d);
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) kraus.push_back(Q.block(i * d, 0, d, d));
    return KrausChannel(std::move(kraus), TraceClass::preserving);
}

// CPTNI flavors: a CPTP channel followed by either a proper subprojector
// ("lossy subspace") or a uniform scalar contraction ("detector that only
// fires with probability c").
inline KrausChannel random_cptni(Eigen::Index d, std::uint64_t seed) {
    KrausChannel cptp = random_cptp(d, mix_seed(seed, 2));
    std::vector<Matrix> kraus = cptp.kraus_operators();
    std::mt19937_64 rng(mix_seed(seed, 3));
    const bool scalar_flavor = d == 1 || (rng() & 1u) != 0;
    if (scalar_flavor) {
        std::uniform_real_distribution<double> unif(0.1, 1.0);
        const double root_c = std::sqrt(unif(rng));
        for (Matrix& K : kraus) K *= root_c;
    } else {
        std::uniform_int_distribution<Eigen::Index> rank_dist(1, d - 1);
        const Eigen::Index r = rank_dist(rng);
        const Matrix V = random_unitary(d, mix_seed(seed, 4)).leftCols(r);
        const Matrix pi = V * V.adjoint();
        for (Matrix& K : kraus) K = pi * K;
    }
    return KrausChannel(std::move(kraus), TraceClass::non_increasing);
}

} // namespace tqfi

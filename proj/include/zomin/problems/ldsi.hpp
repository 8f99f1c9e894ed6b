#pragma once

#include <memory>
#include <vector>

#include "zomin/problem.hpp"
#include "zomin/random.hpp"

namespace zomin::problems {

/// Discrete-time single-input single-output linear system
/// x_{i+1} = A x_i + B u_i,  y_i = C x_i + D u_i.
struct LtiSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double D = 0.0;

    Eigen::Index state_dim() const { return A.rows(); }
};

inline double spectral_radius(const Eigen::MatrixXd& M) {
    return Eigen::EigenSolver<Eigen::MatrixXd>(M, false).eigenvalues().cwiseAbs().maxCoeff();
}

/// Chain of five coupled mass-spring-damper oscillators (10 states:
/// position/velocity per mass), wall-anchored springs k_i = 2.0, dampers
/// c_i = 0.4 and nearest-neighbour coupling 0.6, discretised by forward
/// Euler with time step 0.05. The resulting A has spectral radius < 1.
inline LtiSystem mass_spring_chain() {
    constexpr int kMasses = 5;
    constexpr double kSpring = 2.0;
    constexpr double kDamper = 0.4;
    constexpr double kCoupling = 0.6;
    constexpr double kTimeStep = 0.05;
    const double masses[kMasses] = {1.0, 1.1, 1.2, 1.0, 0.9};

    const int n = 2 * kMasses;
    Eigen::MatrixXd Ac = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd Bc = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < kMasses; ++i) {
        const int pos = 2 * i, vel = 2 * i + 1;
        Ac(pos, vel) = 1.0;
        const double couplings = (i == 0 || i == kMasses - 1) ? kCoupling : 2.0 * kCoupling;
        Ac(vel, pos) = -(kSpring + couplings) / masses[i];
        Ac(vel, vel) = -kDamper / masses[i];
        if (i > 0) Ac(vel, pos - 2) = kCoupling / masses[i];
        if (i < kMasses - 1) Ac(vel, pos + 2) = kCoupling / masses[i];
        Bc(vel) = 1.0 / masses[i];
    }

    LtiSystem sys;
    sys.A = Eigen::MatrixXd::Identity(n, n) + kTimeStep * Ac;
    sys.B = kTimeStep * Bc;
    sys.C.resize(n);
    sys.C << 0, 0, 0.2, 0, 1, 0, 0.2, 0, 0.2, 0;
    sys.D = 0.0;
    return sys;
}

/// Input/output sequences of equal length horizon+1, with a warmup prefix
/// excluded from the fitting window.
struct SequenceDataset {
    struct Sequence {
        std::vector<double> inputs;
        std::vector<double> outputs;
    };

    std::vector<Sequence> sequences;
    long horizon = 0;  // T: indices run 0..T
    long warmup = 0;   // T1 < T

    void validate() const {
        if (warmup >= horizon) throw std::invalid_argument("SequenceDataset: warmup must be < horizon");
        for (const auto& s : sequences) {
            if (static_cast<long>(s.inputs.size()) != horizon + 1 ||
                static_cast<long>(s.outputs.size()) != horizon + 1) {
                throw std::invalid_argument("SequenceDataset: sequence length != horizon + 1");
            }
        }
    }
};

/// Drive the system with i.i.d. normal inputs of the given standard
/// deviation from zero initial state; observation noise is added to outputs
/// at generation time only.
inline SequenceDataset simulate_sequences(const LtiSystem& sys, int count, long horizon,
                                          long warmup, double noise_std, RandomStream& stream,
                                          double input_std = 1.0) {
    SequenceDataset data;
    data.horizon = horizon;
    data.warmup = warmup;
    data.sequences.resize(static_cast<std::size_t>(count));
    for (auto& seq : data.sequences) {
        seq.inputs.resize(static_cast<std::size_t>(horizon + 1));
        seq.outputs.resize(static_cast<std::size_t>(horizon + 1));
        Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.state_dim());
        for (long i = 0; i <= horizon; ++i) {
            const double u = input_std * stream.next_normal();
            double y = sys.C.dot(x) + sys.D * u;
            if (noise_std > 0) y += noise_std * stream.next_normal();
            seq.inputs[static_cast<std::size_t>(i)] = u;
            seq.outputs[static_cast<std::size_t>(i)] = y;
            if (i < horizon) x = sys.A * x + sys.B * u;
        }
    }
    data.validate();
    return data;
}

/// Parameter vector layout for the identification problem:
/// [A row-major (n*n), C (n), D (1)]; B is fixed and known.
inline Eigen::Index ldsi_dim(Eigen::Index n) { return n * n + n + 1; }

inline Vector pack_ldsi(const Eigen::MatrixXd& A, const Eigen::RowVectorXd& C, double D) {
    const Eigen::Index n = A.rows();
    Vector w(ldsi_dim(n));
    for (Eigen::Index i = 0; i < n; ++i) w.segment(i * n, n) = A.row(i).transpose();
    w.segment(n * n, n) = C.transpose();
    w[n * n + n] = D;
    return w;
}

inline LtiSystem unpack_ldsi(const Vector& w, const Eigen::VectorXd& B_fixed) {
    const Eigen::Index n = B_fixed.size();
    if (w.size() != ldsi_dim(n)) throw std::invalid_argument("unpack_ldsi: bad parameter size");
    LtiSystem sys;
    sys.A.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) sys.A.row(i) = w.segment(i * n, n).transpose();
    sys.C = w.segment(n * n, n).transpose();
    sys.D = w[n * n + n];
    sys.B = B_fixed;
    return sys;
}

namespace detail {

// All sequences stacked column-wise so simulation is one matrix product per
// time step.
struct LdsiBatch {
    Eigen::MatrixXd U;  // (horizon+1) x S
    Eigen::MatrixXd Y;  // (horizon+1) x S
    Eigen::VectorXd B;
    long horizon = 0;
    long warmup = 0;
    Eigen::Index n = 0;

    static LdsiBatch build(const SequenceDataset& data, const Eigen::VectorXd& B_fixed) {
        data.validate();
        if (data.sequences.empty()) throw std::invalid_argument("ldsi: empty dataset");
        LdsiBatch b;
        b.horizon = data.horizon;
        b.warmup = data.warmup;
        b.B = B_fixed;
        b.n = B_fixed.size();
        const auto S = static_cast<Eigen::Index>(data.sequences.size());
        b.U.resize(data.horizon + 1, S);
        b.Y.resize(data.horizon + 1, S);
        for (Eigen::Index s = 0; s < S; ++s) {
            const auto& seq = data.sequences[static_cast<std::size_t>(s)];
            for (long i = 0; i <= data.horizon; ++i) {
                b.U(i, s) = seq.inputs[static_cast<std::size_t>(i)];
                b.Y(i, s) = seq.outputs[static_cast<std::size_t>(i)];
            }
        }
        return b;
    }

    double loss(const LtiSystem& sys) const {
        const auto S = U.cols();
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, S);
        double acc = 0.0;
        for (long i = 0; i <= horizon; ++i) {
            const Eigen::RowVectorXd yhat = sys.C * X + sys.D * U.row(i);
            if (i >= warmup) acc += (Y.row(i) - yhat).squaredNorm();
            if (i < horizon) X = sys.A * X + sys.B * U.row(i);
        }
        return acc / (static_cast<double>(horizon - warmup) * static_cast<double>(S));
    }

    Vector gradient(const LtiSystem& sys) const {
        const auto S = U.cols();
        const double scale = 2.0 / (static_cast<double>(horizon - warmup) * static_cast<double>(S));

        std::vector<Eigen::MatrixXd> states(static_cast<std::size_t>(horizon + 1));
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, S);
        Eigen::MatrixXd resid(horizon + 1, S);  // dLoss/dyhat_i rows
        for (long i = 0; i <= horizon; ++i) {
            states[static_cast<std::size_t>(i)] = X;
            const Eigen::RowVectorXd yhat = sys.C * X + sys.D * U.row(i);
            if (i >= warmup) {
                resid.row(i) = scale * (yhat - Y.row(i));
            } else {
                resid.row(i).setZero();
            }
            if (i < horizon) X = sys.A * X + sys.B * U.row(i);
        }

        Eigen::MatrixXd dA = Eigen::MatrixXd::Zero(n, n);
        Eigen::RowVectorXd dC = Eigen::RowVectorXd::Zero(n);
        double dD = 0.0;
        Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(n, S);  // dLoss/dx_i
        for (long i = horizon; i >= 0; --i) {
            const Eigen::MatrixXd& Xi = states[static_cast<std::size_t>(i)];
            if (i < horizon) {
                lambda = sys.A.transpose() * lambda + sys.C.transpose() * resid.row(i + 1);
                dA += lambda * Xi.transpose();
            }
            dC += resid.row(i) * Xi.transpose();
            dD += resid.row(i).dot(U.row(i));
        }
        Vector g(ldsi_dim(n));
        for (Eigen::Index r = 0; r < n; ++r) g.segment(r * n, n) = dA.row(r).transpose();
        g.segment(n * n, n) = dC.transpose();
        g[n * n + n] = dD;
        return g;
    }
};

}  // namespace detail

/// System-identification objective: windowed mean squared output error of
/// the model parameterised by w (A, C, D with B fixed), averaged over all
/// sequences. Provides the exact adjoint gradient for first-order baselines.
inline Problem ldsi(const SequenceDataset& data, const Eigen::VectorXd& B_fixed) {
    auto batch = std::make_shared<detail::LdsiBatch>(detail::LdsiBatch::build(data, B_fixed));

    Problem p;
    p.dim = ldsi_dim(batch->n);
    p.name = "ldsi";
    p.eval = [batch](const Vector& w) {
        const double v = batch->loss(unpack_ldsi(w, batch->B));
        if (!std::isfinite(v)) {
            throw EvaluationError("ldsi: simulation diverged (non-finite loss)", w);
        }
        return v;
    };
    p.grad = [batch](const Vector& w) {
        Vector g = batch->gradient(unpack_ldsi(w, batch->B));
        if (!all_finite(g)) {
            throw EvaluationError("ldsi: gradient diverged (non-finite entries)", w);
        }
        return g;
    };
    return p;
}

/// Mean squared error between the model's outputs and the recorded outputs
/// over the whole horizon (no warmup window).
inline double sequence_mse(const LtiSystem& sys, const SequenceDataset& data) {
    data.validate();
    double acc = 0.0;
    for (const auto& seq : data.sequences) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.state_dim());
        for (long i = 0; i <= data.horizon; ++i) {
            const double u = seq.inputs[static_cast<std::size_t>(i)];
            const double yhat = sys.C.dot(x) + sys.D * u;
            const double d = yhat - seq.outputs[static_cast<std::size_t>(i)];
            acc += d * d;
            if (i < data.horizon) x = sys.A * x + sys.B * u;
        }
    }
    return acc / (static_cast<double>(data.horizon + 1) * static_cast<double>(data.sequences.size()));
}

/// Entrywise Gaussian perturbation of (A, C, D), rejection-sampled so the
/// perturbed A keeps spectral radius < 1; the scale is halved only after
/// repeated rejections at the current one.
inline Vector perturbed_parameters(const LtiSystem& truth, double scale, RandomStream& stream) {
    const Eigen::Index n = truth.state_dim();
    for (int attempt = 1;; ++attempt) {
        Eigen::MatrixXd A = truth.A;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) A(i, j) += scale * stream.next_normal();
        }
        Eigen::RowVectorXd C = truth.C;
        for (Eigen::Index j = 0; j < n; ++j) C(j) += scale * stream.next_normal();
        const double D = truth.D + scale * stream.next_normal();
        if (spectral_radius(A) < 1.0) return pack_ldsi(A, C, D);
        if (attempt % 64 == 0) scale *= 0.5;
    }
}

}  // namespace zomin::problems

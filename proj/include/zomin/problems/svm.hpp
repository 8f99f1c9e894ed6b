#pragma once

#include <cmath>
#include <memory>

#include "zomin/problem.hpp"
#include "zomin/problems/datasets.hpp"

namespace zomin::problems {

/// Smoothed hinge penalty: 0 for z <= 0, z^2/2 on [0, 1], and
/// (z^alpha - 1)/alpha + 1/2 beyond (the constant 1 makes the function C^1
/// at z = 1 for every alpha). Convex at alpha = 1, quasar-convex below.
inline double smoothed_hinge(double z, double alpha) {
    if (z <= 0.0) return 0.0;
    if (z <= 1.0) return 0.5 * z * z;
    return (std::pow(z, alpha) - 1.0) / alpha + 0.5;
}

inline double smoothed_hinge_derivative(double z, double alpha) {
    if (z <= 0.0) return 0.0;
    if (z <= 1.0) return z;
    return std::pow(z, alpha - 1.0);
}

/// Margin loss sum_i hinge(1 - b_i a_i^T x) over labelled data with
/// b_i in {-1, +1}.
inline Problem smoothed_hinge_svm(const LabeledDataset& data, double alpha) {
    data.validate();
    if (data.size() == 0) throw std::invalid_argument("smoothed_hinge_svm: empty dataset");
    if (!(alpha > 0) || alpha > 1.0) {
        throw std::invalid_argument("smoothed_hinge_svm: alpha must lie in (0, 1]");
    }
    for (double b : data.labels) {
        if (b != 1.0 && b != -1.0) {
            throw std::invalid_argument("smoothed_hinge_svm: labels must be +1 or -1");
        }
    }

    struct Shared {
        Eigen::MatrixXd A;  // rows pre-scaled by the labels
        double alpha;
    };
    Eigen::MatrixXd A = data.feature_matrix();
    for (Eigen::Index i = 0; i < A.rows(); ++i) A.row(i) *= data.labels[static_cast<std::size_t>(i)];
    auto shared = std::make_shared<Shared>(Shared{std::move(A), alpha});

    Problem p;
    p.dim = data.dim();
    p.name = "smoothed_hinge_svm";
    p.eval = [shared](const Vector& x) {
        const Vector z = Vector::Ones(shared->A.rows()) - shared->A * x;
        double loss = 0.0;
        for (Eigen::Index i = 0; i < z.size(); ++i) loss += smoothed_hinge(z[i], shared->alpha);
        return loss;
    };
    p.grad = [shared](const Vector& x) {
        const Vector z = Vector::Ones(shared->A.rows()) - shared->A * x;
        Vector coeff(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            coeff[i] = -smoothed_hinge_derivative(z[i], shared->alpha);
        }
        return Vector(shared->A.transpose() * coeff);
    };
    return p;
}

}  // namespace zomin::problems

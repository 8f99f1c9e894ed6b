#pragma once

#include <cmath>
#include <memory>

#include "zomin/problem.hpp"
#include "zomin/problems/datasets.hpp"

namespace zomin::problems {

/// Link function of a generalised linear model.
struct Link {
    enum class Kind { Sigmoid, Relu, LeakyRelu };

    Kind kind = Kind::Sigmoid;
    double alpha = 0.5;  // leaky-relu negative slope

    static Link sigmoid() { return {Kind::Sigmoid, 0.0}; }
    static Link relu() { return {Kind::Relu, 0.0}; }
    static Link leaky_relu(double alpha) { return {Kind::LeakyRelu, alpha}; }

    double value(double z) const {
        switch (kind) {
            case Kind::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
            case Kind::Relu: return z > 0 ? z : 0.0;
            case Kind::LeakyRelu: return z > 0 ? z : alpha * z;
        }
        return 0.0;
    }

    // Subgradient 0 at the relu kink; leaky-relu takes the negative slope
    // at 0 so the choice is deterministic.
    double derivative(double z) const {
        switch (kind) {
            case Kind::Sigmoid: {
                const double s = value(z);
                return s * (1.0 - s);
            }
            case Kind::Relu: return z > 0 ? 1.0 : 0.0;
            case Kind::LeakyRelu: return z > 0 ? 1.0 : alpha;
        }
        return 0.0;
    }
};

inline Link parse_link(const std::string& s, double alpha = 0.5) {
    if (s == "sigmoid") return Link::sigmoid();
    if (s == "relu") return Link::relu();
    if (s == "leaky_relu") return Link::leaky_relu(alpha);
    throw std::invalid_argument("unknown GLM link: " + s);
}

/// Empirical risk (1/m) sum_i (link(w^T a_i) - y_i)^2 / 2 over weights w.
inline Problem glm(const LabeledDataset& data, Link link) {
    data.validate();
    if (data.size() == 0) throw std::invalid_argument("glm: empty dataset");

    struct Shared {
        Eigen::MatrixXd A;
        Vector y;
        Link link;
    };
    auto shared = std::make_shared<Shared>(Shared{data.feature_matrix(), data.label_vector(), link});
    const double m = static_cast<double>(data.size());

    Problem p;
    p.dim = data.dim();
    p.name = "glm";
    p.eval = [shared, m](const Vector& w) {
        const Vector z = shared->A * w;
        double loss = 0.0;
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            const double r = shared->link.value(z[i]) - shared->y[i];
            loss += 0.5 * r * r;
        }
        return loss / m;
    };
    p.grad = [shared, m](const Vector& w) {
        const Vector z = shared->A * w;
        Vector coeff(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            coeff[i] = (shared->link.value(z[i]) - shared->y[i]) * shared->link.derivative(z[i]);
        }
        return Vector(shared->A.transpose() * coeff / m);
    };
    return p;
}

struct GlmData {
    LabeledDataset data;
    Vector w_star;
};

/// Standard-normal features with noiseless labels y = link(w*^T a).
inline GlmData make_glm_dataset(int samples, int dim, Link link, RandomStream& stream) {
    GlmData out;
    out.w_star = sample_standard_normal(stream, dim);
    out.data.features.reserve(static_cast<std::size_t>(samples));
    out.data.labels.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        Vector a = sample_standard_normal(stream, dim);
        out.data.labels.push_back(link.value(out.w_star.dot(a)));
        out.data.features.push_back(std::move(a));
    }
    return out;
}

}  // namespace zomin::problems

#pragma once

#include <vector>

#include "zomin/random.hpp"
#include "zomin/vector.hpp"

namespace zomin {

/// Feature/label pairs; labels are +-1 for classification problems and real
/// targets for regression-style ones.
struct LabeledDataset {
    std::vector<Vector> features;
    std::vector<double> labels;

    std::size_t size() const { return features.size(); }
    Eigen::Index dim() const { return features.empty() ? 0 : features.front().size(); }

    void validate() const {
        if (features.size() != labels.size()) {
            throw std::invalid_argument("LabeledDataset: features/labels length mismatch");
        }
        for (const Vector& v : features) {
            if (v.size() != dim()) throw std::invalid_argument("LabeledDataset: ragged features");
            if (!all_finite(v)) throw std::invalid_argument("LabeledDataset: non-finite feature");
        }
        for (double y : labels) {
            if (!std::isfinite(y)) throw std::invalid_argument("LabeledDataset: non-finite label");
        }
    }

    /// Row-major feature matrix view for vectorised evaluators.
    Eigen::MatrixXd feature_matrix() const {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(features.size()), dim());
        for (std::size_t i = 0; i < features.size(); ++i) {
            m.row(static_cast<Eigen::Index>(i)) = features[i].transpose();
        }
        return m;
    }

    Vector label_vector() const {
        return Eigen::Map<const Vector>(labels.data(), static_cast<Eigen::Index>(labels.size()));
    }
};

/// Synthetic binary classification data: standard-normal features and labels
/// sign(w*^T a) for a hidden standard-normal w*.
inline LabeledDataset make_margin_dataset(int samples, int dim, RandomStream& stream) {
    const Vector w_star = sample_standard_normal(stream, dim);
    LabeledDataset out;
    out.features.reserve(static_cast<std::size_t>(samples));
    out.labels.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        Vector a = sample_standard_normal(stream, dim);
        const double z = w_star.dot(a);
        out.features.push_back(std::move(a));
        out.labels.push_back(z >= 0 ? 1.0 : -1.0);
    }
    return out;
}

/// Rescale every feature column to zero mean and unit sample variance.
/// Constant columns are left centred.
inline LabeledDataset standardize_features(const LabeledDataset& data) {
    data.validate();
    const Eigen::Index n = data.dim();
    const auto m = static_cast<double>(data.size());
    Vector mean = Vector::Zero(n), var = Vector::Zero(n);
    for (const Vector& v : data.features) mean += v;
    mean /= m;
    for (const Vector& v : data.features) var += (v - mean).cwiseAbs2();
    var /= (m - 1.0);
    LabeledDataset out;
    out.labels = data.labels;
    out.features.reserve(data.size());
    for (const Vector& v : data.features) {
        Vector s = v - mean;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (var[j] > 0) s[j] /= std::sqrt(var[j]);
        }
        out.features.push_back(std::move(s));
    }
    return out;
}

}  // namespace zomin

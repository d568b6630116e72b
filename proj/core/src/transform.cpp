#include "tbtlrr/transform.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tbtlrr {

const char* to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::Learned: return "learned";
        case TransformKind::Dct: return "dct";
        case TransformKind::Identity: return "identity";
    }
    return "unknown";
}

TransformKind transform_kind_from_string(const std::string& text) {
    if (text == "learned") return TransformKind::Learned;
    if (text == "dct") return TransformKind::Dct;
    if (text == "identity") return TransformKind::Identity;
    throw std::invalid_argument("transform kind must be learned, dct or identity (got '" + text + "')");
}

OrthoTransform::OrthoTransform(Eigen::MatrixXd matrix, TransformKind kind)
    : matrix_(std::move(matrix)), kind_(kind) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("OrthoTransform: matrix must be square and nonempty");
    }
    const Eigen::MatrixXd gram = matrix_ * matrix_.transpose();
    const double dev = (gram - Eigen::MatrixXd::Identity(matrix_.rows(), matrix_.cols())).cwiseAbs().maxCoeff();
    if (!(dev <= kOrthogonalityTol)) {
        throw std::invalid_argument("OrthoTransform: matrix is not orthogonal (max deviation " +
                                    std::to_string(dev) + ")");
    }
}

OrthoTransform OrthoTransform::identity(int n3) {
    return {Eigen::MatrixXd::Identity(n3, n3), TransformKind::Identity};
}

OrthoTransform OrthoTransform::dct(int n3) {
    Eigen::MatrixXd m(n3, n3);
    const double pi = std::numbers::pi;
    for (int k = 0; k < n3; ++k) {
        const double scale = (k == 0) ? std::sqrt(1.0 / n3) : std::sqrt(2.0 / n3);
        for (int n = 0; n < n3; ++n) {
            m(k, n) = scale * std::cos(pi * (2.0 * n + 1.0) * k / (2.0 * n3));
        }
    }
    return {std::move(m), TransformKind::Dct};
}

namespace {

void require_transform_match(const OrthoTransform& t, const Tensor3& b, const char* op) {
    if (t.size() != b.n3()) {
        throw std::invalid_argument(std::string(op) + ": transform size " + std::to_string(t.size()) +
                                    " does not match tensor n3 " + std::to_string(b.n3()));
    }
}

}  // namespace

Tensor3 apply_transform(const OrthoTransform& t, const Tensor3& b) {
    require_transform_match(t, b, "apply_transform");
    Tensor3 out(b.n1(), b.n2(), b.n3());
    // Fibers are the rows of the (n1*n2) x n3 view, so applying T to every
    // tube is a single product with T'.
    out.fibers() = b.fibers() * t.matrix().transpose();
    return out;
}

Tensor3 inverse_transform(const OrthoTransform& t, const Tensor3& b_bar) {
    require_transform_match(t, b_bar, "inverse_transform");
    Tensor3 out(b_bar.n1(), b_bar.n2(), b_bar.n3());
    out.fibers() = b_bar.fibers() * t.matrix();
    return out;
}

OrthoTransform learn_transform(const Tensor3& x) {
    if (x.empty()) {
        throw std::invalid_argument("learn_transform: empty tensor");
    }
    if (x.max_abs() == 0.0) {
        throw std::invalid_argument("learn_transform: degenerate all-zero tensor");
    }
    // Mode-3 unfolding: row k = vec(slice k), i.e. the transpose of the
    // fiber view.
    const Eigen::MatrixXd unfolding = x.fibers().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(unfolding, Eigen::ComputeFullU);
    Eigen::MatrixXd t = svd.matrixU().transpose();
    // Sign convention: largest-magnitude entry of each row positive.
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
        Eigen::Index argmax = 0;
        t.row(r).cwiseAbs().maxCoeff(&argmax);
        if (t(r, argmax) < 0.0) {
            t.row(r) = -t.row(r);
        }
    }
    return {std::move(t), TransformKind::Learned};
}

OrthoTransform make_transform(TransformKind kind, const Tensor3& x) {
    switch (kind) {
        case TransformKind::Learned: return learn_transform(x);
        case TransformKind::Dct: return OrthoTransform::dct(x.n3());
        case TransformKind::Identity: return OrthoTransform::identity(x.n3());
    }
    throw std::invalid_argument("make_transform: unknown kind");
}

}  // namespace tbtlrr

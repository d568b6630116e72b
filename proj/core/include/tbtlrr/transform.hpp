#pragma once

#include <Eigen/Dense>

#include <string>

#include "tbtlrr/tensor.hpp"

namespace tbtlrr {

enum class TransformKind { Learned, Dct, Identity };

const char* to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& text);

/// Real orthogonal n3 x n3 matrix applied along mode-3 fibers.
///
/// Construction validates ||T*T' - I||_max <= 1e-10 and rejects anything
/// that fails it.
class OrthoTransform {
public:
    OrthoTransform(Eigen::MatrixXd matrix, TransformKind kind);

    static OrthoTransform identity(int n3);

    /// Orthonormal DCT-II matrix, the fixed-transform alternative.
    static OrthoTransform dct(int n3);

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    TransformKind kind() const { return kind_; }
    int size() const { return static_cast<int>(matrix_.rows()); }

    static constexpr double kOrthogonalityTol = 1e-10;

private:
    Eigen::MatrixXd matrix_;
    TransformKind kind_;
};

/// Multiplies every mode-3 fiber of b by t.matrix(). Output fiber (i,j,:)
/// equals T * input fiber (i,j,:).
Tensor3 apply_transform(const OrthoTransform& t, const Tensor3& b);

/// Inverse of apply_transform (multiplication by T').
Tensor3 inverse_transform(const OrthoTransform& t, const Tensor3& b_bar);

/// Data-adaptive transform: unfold x along mode 3 into an n3 x (n1*n2)
/// matrix whose row k is the column-major vectorization of frontal slice k,
/// take its SVD U*S*V', and return T = U'. Rows are sign-fixed so that each
/// row's largest-magnitude entry is positive, which makes the result
/// deterministic. Rejects the all-zero tensor.
OrthoTransform learn_transform(const Tensor3& x);

/// Builds the transform selected by `kind`: Learned is derived from x,
/// Dct/Identity depend only on x's third dimension.
OrthoTransform make_transform(TransformKind kind, const Tensor3& x);

}  // namespace tbtlrr

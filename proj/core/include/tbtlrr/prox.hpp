#pragma once

#include "tbtlrr/tensor.hpp"
#include "tbtlrr/transform.hpp"

namespace tbtlrr {

/// Parameters of the l1/2 half-thresholding operator. alpha is the
/// per-entry penalty weight; tau(alpha) = (3/2) * alpha^(2/3) is the
/// cutoff below which the minimizer is exactly zero.
struct HalfThreshParams {
    double alpha;
    double tau;

    explicit HalfThreshParams(double alpha_in);
};

/// Singular-value thresholding in the transform domain: the minimizer of
///   ||J||_ttnn + (1/(2*thresh)) * ||J - y||_F^2.
/// Every transform-domain singular value sigma becomes max(sigma - thresh, 0).
Tensor3 svt_transform(const Tensor3& y, const OrthoTransform& t, double thresh);

/// Elementwise global minimizer of alpha*|x|^(1/2) + (1/2)*(x - y)^2.
/// Zero when |y| <= tau(alpha); otherwise
///   sgn(y) * (2/3) * |y| * (1 + cos(2*pi/3 - (2/3)*arccos(3*sqrt(3)*alpha / (4*|y|^(3/2))))).
double half_threshold(double y, const HalfThreshParams& params);
Tensor3 half_threshold(const Tensor3& y, double alpha);

/// Elementwise sgn(y) * max(|y| - thresh, 0), the l1 prox.
Tensor3 soft_threshold(const Tensor3& y, double thresh);

/// Minimizer of beta*||N||_F^2 + (mu/2)*||N - (c + p/mu)||_F^2, i.e.
/// (p + mu*c) / (2*beta + mu) elementwise.
Tensor3 frobenius_shrink(const Tensor3& c, const Tensor3& p, double mu, double beta);

}  // namespace tbtlrr

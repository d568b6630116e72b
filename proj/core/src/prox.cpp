#include "tbtlrr/prox.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tbtlrr {

HalfThreshParams::HalfThreshParams(double alpha_in) : alpha(alpha_in) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("HalfThreshParams: alpha must be positive and finite");
    }
    tau = 1.5 * std::pow(alpha, 2.0 / 3.0);
}

Tensor3 svt_transform(const Tensor3& y, const OrthoTransform& t, double thresh) {
    if (!(thresh > 0.0)) {
        throw std::invalid_argument("svt_transform: thresh must be positive");
    }
    const Tensor3 y_bar = apply_transform(t, y);
    Tensor3 out_bar(y.n1(), y.n2(), y.n3());
    for (int k = 0; k < y.n3(); ++k) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(y_bar.slice(k), Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success) {
            throw std::runtime_error("svt_transform: SVD failed on transform-domain slice " + std::to_string(k));
        }
        const Eigen::VectorXd shrunk = (svd.singularValues().array() - thresh).max(0.0);
        out_bar.slice(k).noalias() = svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
    }
    return inverse_transform(t, out_bar);
}

double half_threshold(double y, const HalfThreshParams& params) {
    const double mag = std::abs(y);
    if (mag <= params.tau) {
        return 0.0;
    }
    // Largest root of u^3 - |y|*u + alpha/2 = 0 at u = sqrt(|x|); written
    // via the trigonometric cubic solution. The arccos argument is <= 1
    // whenever |y| > tau, but is clamped against floating-point drift.
    const double arg = std::clamp(3.0 * std::sqrt(3.0) * params.alpha / (4.0 * std::pow(mag, 1.5)), -1.0, 1.0);
    const double phase = 2.0 * std::numbers::pi / 3.0 - (2.0 / 3.0) * std::acos(arg);
    const double x = (2.0 / 3.0) * mag * (1.0 + std::cos(phase));
    return std::copysign(x, y);
}

Tensor3 half_threshold(const Tensor3& y, double alpha) {
    const HalfThreshParams params(alpha);
    Tensor3 out(y.n1(), y.n2(), y.n3());
    for (std::size_t i = 0; i < y.data().size(); ++i) {
        out.data()[i] = half_threshold(y.data()[i], params);
    }
    return out;
}

Tensor3 soft_threshold(const Tensor3& y, double thresh) {
    if (!(thresh > 0.0)) {
        throw std::invalid_argument("soft_threshold: thresh must be positive");
    }
    Tensor3 out(y.n1(), y.n2(), y.n3());
    for (std::size_t i = 0; i < y.data().size(); ++i) {
        const double v = y.data()[i];
        out.data()[i] = std::copysign(std::max(std::abs(v) - thresh, 0.0), v);
    }
    return out;
}

Tensor3 frobenius_shrink(const Tensor3& c, const Tensor3& p, double mu, double beta) {
    if (!c.same_shape(p)) {
        throw std::invalid_argument("frobenius_shrink: shape mismatch between c and p");
    }
    if (!(mu > 0.0) || beta < 0.0) {
        throw std::invalid_argument("frobenius_shrink: require mu > 0 and beta >= 0");
    }
    Tensor3 out(c.n1(), c.n2(), c.n3());
    const double denom = 2.0 * beta + mu;
    for (std::size_t i = 0; i < c.data().size(); ++i) {
        out.data()[i] = (p.data()[i] + mu * c.data()[i]) / denom;
    }
    return out;
}

}  // namespace tbtlrr

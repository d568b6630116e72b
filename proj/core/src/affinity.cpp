#include "tbtlrr/affinity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbtlrr {

AffinityMatrix::AffinityMatrix(Eigen::MatrixXd w_in) : w(std::move(w_in)) {
    if (w.rows() != w.cols()) {
        throw std::invalid_argument("AffinityMatrix: matrix must be square");
    }
    if (!w.allFinite()) {
        throw std::invalid_argument("AffinityMatrix: non-finite entry");
    }
    if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("AffinityMatrix: matrix is not symmetric");
    }
    if (w.minCoeff() < 0.0) {
        throw std::invalid_argument("AffinityMatrix: negative entry");
    }
}

Tensor3 AffinityMatrix::to_tensor() const {
    Tensor3 out(size(), size(), 1);
    out.slice(0) = w;
    return out;
}

namespace {

void require_square_slices(const Tensor3& z, const char* op) {
    if (z.n1() != z.n2()) {
        throw std::invalid_argument(std::string(op) + ": frontal slices must be square, got " +
                                    std::to_string(z.n1()) + "x" + std::to_string(z.n2()));
    }
}

}  // namespace

AffinityMatrix affinity_average(const Tensor3& z) {
    require_square_slices(z, "affinity_average");
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(z.n1(), z.n2());
    for (int k = 0; k < z.n3(); ++k) {
        const Eigen::MatrixXd a = z.slice(k).cwiseAbs();
        acc += a + a.transpose();
    }
    acc /= 2.0 * z.n3();
    // Enforce exact symmetry against floating-point accumulation order.
    acc = ((acc + acc.transpose()) / 2.0).eval();
    return AffinityMatrix(std::move(acc));
}

SliceWeights diag_ratio_weights(const Tensor3& z, double eps_guard) {
    require_square_slices(z, "diag_ratio_weights");
    if (!(eps_guard > 0.0)) {
        throw std::invalid_argument("diag_ratio_weights: eps_guard must be positive");
    }
    SliceWeights out;
    out.eps_guard = eps_guard;
    out.r.reserve(z.n3());
    double total = 0.0;
    for (int k = 0; k < z.n3(); ++k) {
        const auto slice = z.slice(k);
        const double diag = slice.diagonal().cwiseAbs().sum();
        const double all = slice.cwiseAbs().sum();
        const double ratio = diag / (all + eps_guard);
        out.r.push_back(ratio);
        total += ratio;
    }
    out.w.resize(z.n3());
    if (total <= 0.0) {
        out.degenerate = true;
        std::fill(out.w.begin(), out.w.end(), 1.0 / z.n3());
    } else {
        for (int k = 0; k < z.n3(); ++k) out.w[k] = out.r[k] / total;
    }
    return out;
}

AffinityMatrix affinity_weighted(const Tensor3& z, const SliceWeights& weights) {
    require_square_slices(z, "affinity_weighted");
    if (static_cast<int>(weights.w.size()) != z.n3()) {
        throw std::invalid_argument("affinity_weighted: weight count " + std::to_string(weights.w.size()) +
                                    " does not match n3 " + std::to_string(z.n3()));
    }
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(z.n1(), z.n2());
    for (int k = 0; k < z.n3(); ++k) {
        const Eigen::MatrixXd a = z.slice(k).cwiseAbs();
        acc += weights.w[k] * 0.5 * (a + a.transpose());
    }
    acc = ((acc + acc.transpose()) / 2.0).eval();
    return AffinityMatrix(std::move(acc));
}

}  // namespace tbtlrr

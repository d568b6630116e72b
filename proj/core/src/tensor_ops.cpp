#include "tbtlrr/tensor_ops.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tbtlrr {

namespace {

void require_same_n3(const OrthoTransform& t, const Tensor3& b) {
    if (t.size() != b.n3()) {
        throw std::invalid_argument("tensor_ops: transform size " + std::to_string(t.size()) +
                                    " does not match tensor n3 " + std::to_string(b.n3()));
    }
}

Eigen::JacobiSVD<Eigen::MatrixXd> slice_svd(const Eigen::MatrixXd& m, unsigned options, int slice_index) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, options);
    if (svd.info() != Eigen::Success) {
        throw std::runtime_error("t_tsvd: SVD failed on transform-domain slice " + std::to_string(slice_index));
    }
    return svd;
}

}  // namespace

Tensor3 t_product(const Tensor3& a, const Tensor3& b, const OrthoTransform& t) {
    if (a.n2() != b.n1()) {
        throw std::invalid_argument("t_product: inner dimensions " + std::to_string(a.n2()) + " and " +
                                    std::to_string(b.n1()) + " do not match");
    }
    if (a.n3() != b.n3()) {
        throw std::invalid_argument("t_product: third dimensions do not match");
    }
    const Tensor3 a_bar = apply_transform(t, a);
    const Tensor3 b_bar = apply_transform(t, b);
    Tensor3 out_bar(a.n1(), b.n2(), a.n3());
    for (int k = 0; k < a.n3(); ++k) {
        out_bar.slice(k).noalias() = a_bar.slice(k) * b_bar.slice(k);
    }
    return inverse_transform(t, out_bar);
}

Tensor3 t_transpose(const Tensor3& b, const OrthoTransform& t) {
    require_same_n3(t, b);
    // Transposition commutes with mixing slices by a real matrix, so the
    // transform round trip reduces to a per-slice transpose.
    Tensor3 out(b.n2(), b.n1(), b.n3());
    for (int k = 0; k < b.n3(); ++k) {
        out.slice(k) = b.slice(k).transpose();
    }
    return out;
}

Tensor3 t_identity(int n, int n3, const OrthoTransform& t) {
    if (n < 1 || n3 < 1) {
        throw std::invalid_argument("t_identity: dimensions must be >= 1");
    }
    if (t.size() != n3) {
        throw std::invalid_argument("t_identity: transform size does not match n3");
    }
    Tensor3 id_bar(n, n, n3);
    for (int k = 0; k < n3; ++k) {
        id_bar.slice(k).setIdentity();
    }
    return inverse_transform(t, id_bar);
}

TTsvdFactors t_tsvd(const Tensor3& b, const OrthoTransform& t, std::optional<int> r) {
    require_same_n3(t, b);
    const int full = std::min(b.n1(), b.n2());
    const int rank = r.value_or(full);
    if (rank < 1 || rank > full) {
        throw std::invalid_argument("t_tsvd: rank " + std::to_string(rank) + " out of range [1, " +
                                    std::to_string(full) + "]");
    }

    const Tensor3 b_bar = apply_transform(t, b);
    Tensor3 u_bar(b.n1(), rank, b.n3());
    Tensor3 s_bar(rank, rank, b.n3());
    Tensor3 v_bar(b.n2(), rank, b.n3());
    for (int k = 0; k < b.n3(); ++k) {
        const auto svd = slice_svd(b_bar.slice(k), Eigen::ComputeThinU | Eigen::ComputeThinV, k);
        u_bar.slice(k) = svd.matrixU().leftCols(rank);
        s_bar.slice(k) = svd.singularValues().head(rank).asDiagonal();
        v_bar.slice(k) = svd.matrixV().leftCols(rank);
    }
    return TTsvdFactors{
        inverse_transform(t, u_bar),
        inverse_transform(t, s_bar),
        inverse_transform(t, v_bar),
        t,
        rank,
    };
}

Tensor3 compose(const TTsvdFactors& f) {
    return t_product(t_product(f.u, f.s, f.transform), t_transpose(f.v, f.transform), f.transform);
}

double ttnn(const Tensor3& b, const OrthoTransform& t) {
    double sum = 0.0;
    for (const auto& sv : transform_singular_values(b, t)) {
        sum += sv.sum();
    }
    return sum / b.n3();
}

std::vector<Eigen::VectorXd> transform_singular_values(const Tensor3& b, const OrthoTransform& t) {
    require_same_n3(t, b);
    const Tensor3 b_bar = apply_transform(t, b);
    std::vector<Eigen::VectorXd> values;
    values.reserve(b.n3());
    for (int k = 0; k < b.n3(); ++k) {
        values.push_back(slice_svd(b_bar.slice(k), 0, k).singularValues());
    }
    return values;
}

}  // namespace tbtlrr

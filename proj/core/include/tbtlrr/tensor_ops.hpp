#pragma once

#include <optional>
#include <vector>

#include "tbtlrr/tensor.hpp"
#include "tbtlrr/transform.hpp"

namespace tbtlrr {

/// Transformed tensor SVD factors: b = u (*) s (*) v' under `transform`,
/// where (*) is the t-product. u is n1 x r x n3, s is r x r x n3 and
/// f-diagonal in the transform domain (nonnegative, nonincreasing per
/// slice), v is n2 x r x n3.
struct TTsvdFactors {
    Tensor3 u;
    Tensor3 s;
    Tensor3 v;
    OrthoTransform transform;
    int r = 0;
};

/// T-product: slice-wise matrix product in the transform domain, then
/// inverse transform. a is n1 x n2 x n3, b is n2 x n4 x n3; the result is
/// n1 x n4 x n3.
Tensor3 t_product(const Tensor3& a, const Tensor3& b, const OrthoTransform& t);

/// Tensor transpose: each transform-domain slice of the output is the
/// matrix transpose of the corresponding input slice. For real orthogonal
/// transforms this coincides with transposing every frontal slice directly.
Tensor3 t_transpose(const Tensor3& b, const OrthoTransform& t);

/// Neutral element of the t-product: every transform-domain slice is the
/// n x n identity.
Tensor3 t_identity(int n, int n3, const OrthoTransform& t);

/// Transformed tensor SVD, truncated to rank r when given (default
/// min(n1, n2)). Factorization is computed slice-wise in the transform
/// domain and the factors are returned in the original domain.
TTsvdFactors t_tsvd(const Tensor3& b, const OrthoTransform& t, std::optional<int> r = std::nullopt);

/// Reassembles u (*) s (*) v' from T-TSVD factors.
Tensor3 compose(const TTsvdFactors& f);

/// Transformed tensor nuclear norm: (1/n3) * sum of slice nuclear norms in
/// the transform domain.
double ttnn(const Tensor3& b, const OrthoTransform& t);

/// Singular values of every transform-domain frontal slice, in slice order.
/// Each vector is nonincreasing of length min(n1, n2).
std::vector<Eigen::VectorXd> transform_singular_values(const Tensor3& b, const OrthoTransform& t);

}  // namespace tbtlrr

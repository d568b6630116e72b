#include "tbtlrr/synthetic.hpp"

#include <Eigen/QR>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rng_mix.hpp"
#include "tbtlrr/noise.hpp"
#include "tbtlrr/transform.hpp"

namespace tbtlrr {

void SyntheticParams::validate() const {
    if (k_subspaces < 1) throw std::invalid_argument("SyntheticParams: k_subspaces must be >= 1");
    if (samples_per_cluster < 1) throw std::invalid_argument("SyntheticParams: samples_per_cluster must be >= 1");
    if (n1 < 1 || n3 < 1) throw std::invalid_argument("SyntheticParams: ambient dims must be >= 1");
    if (tubal_rank < 1 || tubal_rank > n1) {
        throw std::invalid_argument("SyntheticParams: require 1 <= tubal_rank <= n1");
    }
    if (sparse_fraction < 0.0 || sparse_fraction > 1.0) {
        throw std::invalid_argument("SyntheticParams: sparse_fraction must lie in [0, 1]");
    }
    if (gaussian_level < 0.0) throw std::invalid_argument("SyntheticParams: gaussian_level must be >= 0");
}

namespace {

// Per-slice coefficient scale in the hidden transform domain; geometric
// decay concentrates mode-3 energy in the leading slices.
constexpr double kSliceEnergyDecay = 0.5;

Eigen::MatrixXd random_gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            m(i, j) = gauss(rng);
        }
    }
    return m;
}

// Thin Q factor with the sign fixed so diag(R) > 0.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    const Eigen::VectorXd diag = qr.matrixQR().diagonal();
    for (int j = 0; j < q.cols(); ++j) {
        if (diag(j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticParams& p) {
    p.validate();
    std::mt19937_64 rng(detail::splitmix64(p.seed));

    const int n1 = p.n1, n3 = p.n3, r = p.tubal_rank;
    const int m = p.samples_per_cluster;
    const int n2 = p.k_subspaces * m;

    // Hidden orthogonal mixing transform along mode 3.
    const Eigen::MatrixXd q_mix = orthonormalize(random_gaussian(n3, n3, rng));

    // One orthonormal basis per subspace, shared across transform-domain
    // slices. Column 0 is the constant direction so that the affine [0, 1]
    // normalization below stays inside the subspace span.
    std::vector<Eigen::MatrixXd> bases;
    bases.reserve(p.k_subspaces);
    for (int c = 0; c < p.k_subspaces; ++c) {
        Eigen::MatrixXd seeded = random_gaussian(n1, r, rng);
        seeded.col(0) = Eigen::VectorXd::Constant(n1, 1.0 / std::sqrt(static_cast<double>(n1)));
        bases.push_back(orthonormalize(seeded));
    }

    // Coefficients in the hidden transform domain. The constant-direction
    // row stays zero (all samples share only the normalization offset along
    // it) unless the rank is one, in which case it is the sole direction.
    Tensor3 x_hat(n1, n2, n3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int c = 0; c < p.k_subspaces; ++c) {
        for (int k = 0; k < n3; ++k) {
            const double gain = std::pow(kSliceEnergyDecay, k);
            Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(r, m);
            const int first_row = (r == 1) ? 0 : 1;
            for (int jj = 0; jj < m; ++jj) {
                for (int ii = first_row; ii < r; ++ii) {
                    coeff(ii, jj) = gain * gauss(rng);
                }
            }
            x_hat.slice(k).middleCols(c * m, m).noalias() = bases[c] * coeff;
        }
    }

    const OrthoTransform mix(q_mix, TransformKind::Learned);
    Tensor3 x = inverse_transform(mix, x_hat);

    // Normalize to [0, 1].
    double lo = x.data()[0], hi = x.data()[0];
    for (double v : x.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi > lo) {
        for (double& v : x.data()) v = (v - lo) / (hi - lo);
    }

    SyntheticData out;
    out.clean = x;
    if (p.sparse_fraction > 0.0) {
        x = add_sparse_noise(x, p.sparse_fraction, detail::mix_seed(p.seed, 1));
    }
    if (p.gaussian_level > 0.0) {
        x = add_gaussian_noise(x, p.gaussian_level, detail::mix_seed(p.seed, 2));
    }
    out.x = std::move(x);
    out.labels.reserve(n2);
    for (int c = 0; c < p.k_subspaces; ++c) {
        out.labels.insert(out.labels.end(), m, c + 1);
    }
    return out;
}

}  // namespace tbtlrr

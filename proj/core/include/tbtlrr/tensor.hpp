#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace tbtlrr {

/// Dense real third-order tensor of shape n1 x n2 x n3.
///
/// Storage is slice-major: frontal slice k (the n1 x n2 matrix B(:,:,k))
/// occupies a contiguous block, column-major inside the slice. Slice k
/// therefore maps directly onto an Eigen column-major matrix, and the whole
/// buffer maps onto an (n1*n2) x n3 matrix whose row (i + j*n1) is the
/// mode-3 fiber B(i,j,:).
class Tensor3 {
public:
    Tensor3() = default;

    /// Zero tensor of the given shape.
    Tensor3(int n1, int n2, int n3);

    /// Takes ownership of `data` (length n1*n2*n3, slice-major layout).
    /// Throws std::invalid_argument on length mismatch or non-finite entries.
    static Tensor3 from_data(int n1, int n2, int n3, std::vector<double> data);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int n3() const { return n3_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j, int k) {
        return data_[static_cast<std::size_t>(k) * n1_ * n2_ + static_cast<std::size_t>(j) * n1_ + i];
    }
    double operator()(int i, int j, int k) const {
        return data_[static_cast<std::size_t>(k) * n1_ * n2_ + static_cast<std::size_t>(j) * n1_ + i];
    }

    /// Frontal slice k as an Eigen matrix view.
    Eigen::Map<Eigen::MatrixXd> slice(int k);
    Eigen::Map<const Eigen::MatrixXd> slice(int k) const;

    /// View of the whole tensor as an (n1*n2) x n3 matrix; row r is the
    /// mode-3 fiber at (i, j) with r = i + j*n1.
    Eigen::Map<Eigen::MatrixXd> fibers();
    Eigen::Map<const Eigen::MatrixXd> fibers() const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Tensor3& other) const {
        return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
    }

    Tensor3& operator+=(const Tensor3& rhs);
    Tensor3& operator-=(const Tensor3& rhs);
    Tensor3& operator*=(double s);

    friend Tensor3 operator+(Tensor3 lhs, const Tensor3& rhs) { return lhs += rhs; }
    friend Tensor3 operator-(Tensor3 lhs, const Tensor3& rhs) { return lhs -= rhs; }
    friend Tensor3 operator*(Tensor3 lhs, double s) { return lhs *= s; }
    friend Tensor3 operator*(double s, Tensor3 rhs) { return rhs *= s; }
    Tensor3 operator-() const;

    void set_zero();

    double frobenius_norm() const;
    double max_abs() const;
    double dot(const Tensor3& other) const;
    bool all_finite() const;

private:
    int n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<double> data_;
};

/// The four scalar norms used throughout: entrywise l1, the l1/2 quasi-norm
/// (sum of square roots, squared), Frobenius, and max-abs.
struct TensorNorms {
    double l1 = 0.0;
    double l_half = 0.0;
    double frobenius = 0.0;
    double l_inf = 0.0;
};

TensorNorms norms(const Tensor3& b);

}  // namespace tbtlrr

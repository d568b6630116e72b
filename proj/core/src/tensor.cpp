#include "tbtlrr/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbtlrr {

Tensor3::Tensor3(int n1, int n2, int n3) : n1_(n1), n2_(n2), n3_(n3) {
    if (n1 < 0 || n2 < 0 || n3 < 0) {
        throw std::invalid_argument("Tensor3: negative dimension");
    }
    data_.assign(static_cast<std::size_t>(n1) * n2 * n3, 0.0);
}

Tensor3 Tensor3::from_data(int n1, int n2, int n3, std::vector<double> data) {
    if (n1 <= 0 || n2 <= 0 || n3 <= 0) {
        throw std::invalid_argument("Tensor3::from_data: dimensions must be positive");
    }
    const std::size_t expected = static_cast<std::size_t>(n1) * n2 * n3;
    if (data.size() != expected) {
        throw std::invalid_argument("Tensor3::from_data: data length " + std::to_string(data.size()) +
                                    " does not match shape " + std::to_string(n1) + "x" + std::to_string(n2) +
                                    "x" + std::to_string(n3));
    }
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("Tensor3::from_data: non-finite entry");
        }
    }
    Tensor3 t;
    t.n1_ = n1;
    t.n2_ = n2;
    t.n3_ = n3;
    t.data_ = std::move(data);
    return t;
}

Eigen::Map<Eigen::MatrixXd> Tensor3::slice(int k) {
    return {data_.data() + static_cast<std::size_t>(k) * n1_ * n2_, n1_, n2_};
}

Eigen::Map<const Eigen::MatrixXd> Tensor3::slice(int k) const {
    return {data_.data() + static_cast<std::size_t>(k) * n1_ * n2_, n1_, n2_};
}

Eigen::Map<Eigen::MatrixXd> Tensor3::fibers() {
    return {data_.data(), static_cast<Eigen::Index>(n1_) * n2_, n3_};
}

Eigen::Map<const Eigen::MatrixXd> Tensor3::fibers() const {
    return {data_.data(), static_cast<Eigen::Index>(n1_) * n2_, n3_};
}

namespace {

void require_same_shape(const Tensor3& a, const Tensor3& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
}

}  // namespace

Tensor3& Tensor3::operator+=(const Tensor3& rhs) {
    require_same_shape(*this, rhs, "Tensor3::operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& rhs) {
    require_same_shape(*this, rhs, "Tensor3::operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor3 Tensor3::operator-() const {
    Tensor3 out = *this;
    for (double& v : out.data_) v = -v;
    return out;
}

void Tensor3::set_zero() {
    std::fill(data_.begin(), data_.end(), 0.0);
}

double Tensor3::frobenius_norm() const {
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum);
}

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Tensor3::dot(const Tensor3& other) const {
    require_same_shape(*this, other, "Tensor3::dot");
    double sum = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) sum += data_[i] * other.data_[i];
    return sum;
}

bool Tensor3::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

TensorNorms norms(const Tensor3& b) {
    TensorNorms out;
    double fro2 = 0.0;
    for (double v : b.data()) {
        const double a = std::abs(v);
        out.l1 += a;
        out.l_half += std::sqrt(a);
        fro2 += v * v;
        out.l_inf = std::max(out.l_inf, a);
    }
    out.l_half *= out.l_half;
    out.frobenius = std::sqrt(fro2);
    return out;
}

}  // namespace tbtlrr

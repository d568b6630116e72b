#include "tbtlrr/metrics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace tbtlrr {

namespace {

std::vector<int> dense_ids(const std::vector<int>& labels, int& count) {
    std::map<int, int> ids;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int v : labels) {
        const auto [it, inserted] = ids.emplace(v, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    count = static_cast<int>(ids.size());
    return out;
}

void require_comparable(const std::vector<int>& pred, const std::vector<int>& truth, const char* op) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument(std::string(op) + ": label vectors differ in length");
    }
    if (pred.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty label vectors");
    }
}

/// Minimum-cost perfect assignment on a square cost matrix via the
/// potentials + augmenting path method; returns row -> column.
std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0) assignment[p[j] - 1] = j - 1;
    }
    return assignment;
}

}  // namespace

double acc(const std::vector<int>& pred, const std::vector<int>& truth) {
    require_comparable(pred, truth, "acc");
    int kp = 0, kt = 0;
    const std::vector<int> a = dense_ids(pred, kp);
    const std::vector<int> b = dense_ids(truth, kt);
    const int k = std::max(kp, kt);

    Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i < a.size(); ++i) {
        confusion(a[i], b[i]) += 1.0;
    }
    // Maximize matched counts == minimize (max - count).
    const Eigen::MatrixXd cost = confusion.maxCoeff() - confusion.array();
    const std::vector<int> match = hungarian(cost);
    double matched = 0.0;
    for (int i = 0; i < k; ++i) {
        matched += confusion(i, match[i]);
    }
    return matched / static_cast<double>(a.size());
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    require_comparable(pred, truth, "nmi");
    int kp = 0, kt = 0;
    const std::vector<int> a = dense_ids(pred, kp);
    const std::vector<int> b = dense_ids(truth, kt);
    const double n = static_cast<double>(a.size());

    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(kp, kt);
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint(a[i], b[i]) += 1.0;
    }
    joint /= n;
    const Eigen::VectorXd pa = joint.rowwise().sum();
    const Eigen::VectorXd pb = joint.colwise().sum();

    double mi = 0.0;
    for (int i = 0; i < kp; ++i) {
        for (int j = 0; j < kt; ++j) {
            const double pij = joint(i, j);
            if (pij > 0.0) {
                mi += pij * std::log(pij / (pa(i) * pb(j)));
            }
        }
    }
    auto entropy = [](const Eigen::VectorXd& p) {
        double h = 0.0;
        for (int i = 0; i < p.size(); ++i) {
            if (p(i) > 0.0) h -= p(i) * std::log(p(i));
        }
        return h;
    };
    const double hmax = std::max(entropy(pa), entropy(pb));
    if (hmax == 0.0) {
        return 1.0;  // both partitions trivial
    }
    return mi / hmax;
}

}  // namespace tbtlrr

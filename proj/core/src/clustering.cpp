#include "tbtlrr/clustering.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rng_mix.hpp"
#include "tbtlrr/metrics.hpp"

namespace tbtlrr {

namespace {

constexpr int kKmeansMaxIters = 300;

struct KmeansRun {
    std::vector<int> labels;  // 0-based
    double distortion = 0.0;
};

int sample_weighted(const std::vector<double>& weights, double total, std::mt19937_64& rng) {
    if (total <= 0.0) {
        return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, weights.size() - 1)(rng));
    }
    const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r <= acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size() - 1);
}

KmeansRun kmeans(const Eigen::MatrixXd& points, int k, std::mt19937_64& rng) {
    const int n = static_cast<int>(points.rows());
    const int dim = static_cast<int>(points.cols());

    // k-means++ seeding
    Eigen::MatrixXd centers(k, dim);
    std::vector<double> d2(n, 0.0);
    centers.row(0) = points.row(std::uniform_int_distribution<int>(0, n - 1)(rng));
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < c; ++j) {
                best = std::min(best, (points.row(i) - centers.row(j)).squaredNorm());
            }
            d2[i] = best;
            total += best;
        }
        centers.row(c) = points.row(sample_weighted(d2, total, rng));
    }

    std::vector<int> assign(n, -1);
    std::vector<int> counts(k, 0);
    for (int iter = 0; iter < kKmeansMaxIters; ++iter) {
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best_j = 0;
            double best = (points.row(i) - centers.row(0)).squaredNorm();
            for (int j = 1; j < k; ++j) {
                const double d = (points.row(i) - centers.row(j)).squaredNorm();
                if (d < best) {
                    best = d;
                    best_j = j;
                }
            }
            if (assign[i] != best_j) {
                assign[i] = best_j;
                changed = true;
            }
            ++counts[best_j];
        }

        // Repopulate empty clusters with the point farthest from its center.
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) continue;
            int far_i = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (counts[assign[i]] <= 1) continue;
                const double d = (points.row(i) - centers.row(assign[i])).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far_i = i;
                }
            }
            if (far_i >= 0) {
                --counts[assign[far_i]];
                assign[far_i] = j;
                ++counts[j];
                changed = true;
            }
        }

        centers.setZero();
        for (int i = 0; i < n; ++i) {
            centers.row(assign[i]) += points.row(i);
        }
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) centers.row(j) /= counts[j];
        }
        if (!changed && iter > 0) break;
    }

    KmeansRun run;
    run.labels = std::move(assign);
    for (int i = 0; i < n; ++i) {
        run.distortion += (points.row(i) - centers.row(run.labels[i])).squaredNorm();
    }
    return run;
}

}  // namespace

SpectralOutcome spectral_clustering(const AffinityMatrix& w, int k, int restarts, std::uint64_t seed) {
    const int n = w.size();
    if (k < 2 || k > n) {
        throw std::invalid_argument("spectral_clustering: require 2 <= k <= n");
    }
    if (restarts < 1) {
        throw std::invalid_argument("spectral_clustering: restarts must be >= 1");
    }

    const Eigen::VectorXd degrees = w.w.rowwise().sum().array() + 1e-12;
    const Eigen::VectorXd dinv_sqrt = degrees.array().rsqrt();
    const Eigen::MatrixXd normalized = dinv_sqrt.asDiagonal() * w.w * dinv_sqrt.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("spectral_clustering: eigendecomposition failed");
    }
    // Eigenvalues come out ascending; the k largest are the last k columns.
    Eigen::MatrixXd embedding = es.eigenvectors().rightCols(k);
    for (int i = 0; i < n; ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }

    SpectralOutcome out;
    out.best_distortion = std::numeric_limits<double>::infinity();
    out.restart_labels.reserve(restarts);
    for (int rep = 0; rep < restarts; ++rep) {
        std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(rep)));
        KmeansRun run = kmeans(embedding, k, rng);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = run.labels[i] + 1;
        if (run.distortion < out.best_distortion) {
            out.best_distortion = run.distortion;
            out.best_restart = rep;
            out.labels = labels;
        }
        out.restart_labels.push_back(std::move(labels));
    }
    return out;
}

ClusterResult evaluate_clustering(const SpectralOutcome& outcome, const std::vector<int>& truth) {
    ClusterResult result;
    result.labels = outcome.labels;
    result.acc = acc(outcome.labels, truth);
    result.nmi = nmi(outcome.labels, truth);

    const int n = static_cast<int>(outcome.restart_labels.size());
    std::vector<double> accs(n), nmis(n);
    for (int i = 0; i < n; ++i) {
        accs[i] = acc(outcome.restart_labels[i], truth);
        nmis[i] = nmi(outcome.restart_labels[i], truth);
    }
    auto mean_std = [n](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= n;
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        const double sd = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
        return std::pair<double, double>(mean, sd);
    };
    std::tie(result.acc_mean, result.acc_std) = mean_std(accs);
    std::tie(result.nmi_mean, result.nmi_std) = mean_std(nmis);
    return result;
}

}  // namespace tbtlrr

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tbtlrr/tensor.hpp"
#include "tbtlrr/tensor_ops.hpp"
#include "tbtlrr/transform.hpp"

namespace tbtlrr {

/// How the dictionary tensor is obtained from the observed data before the
/// skinny T-TSVD: the data itself, a truncated T-TSVD reconstruction, or a
/// transformed-RPCA denoising pass.
struct DictMode {
    enum class Kind { SelfRepresentation, TruncatedTtsvd, Trpca };

    Kind kind = Kind::SelfRepresentation;
    int rank = 0;            // TruncatedTtsvd only
    double lambda_trpca = 0; // Trpca only; <= 0 selects 1/sqrt(max(n1,n2)*n3)

    static DictMode self() { return {}; }
    static DictMode truncated_ttsvd(int r) { return {Kind::TruncatedTtsvd, r, 0.0}; }
    static DictMode trpca(double lambda = 0.0) { return {Kind::Trpca, 0, lambda}; }

    std::string to_string() const;
    static DictMode parse(const std::string& text);
};

struct SolverConfig {
    double lambda = 1.0;
    double beta = 10.0;
    double mu0 = 1e-7;
    double mu_max = 1e7;
    double rho = 1.5;
    double eps = 1e-7;
    int max_iters = 500;
    DictMode dict_mode{};
    TransformKind transform_kind = TransformKind::Learned;
    std::uint64_t seed = 0;

    void validate() const;

    /// Reads a flat key-value text file (one `key = value` or `key value`
    /// per line, `#` comments) with keys matching the field names.
    static SolverConfig from_file(const std::filesystem::path& path);
};

/// Skinny T-TSVD dictionary factors of the denoised data x_tilde:
/// a = u (*) s and b = s (*) v', so that a (*) z_bar stands in for
/// x_tilde (*) z and l_bar (*) b for l (*) x_tilde. v is retained to
/// recover z = v (*) z_bar at the end.
struct Dictionary {
    Tensor3 a;  // n1 x r x n3
    Tensor3 b;  // r x n2 x n3
    Tensor3 v;  // n2 x r x n3
    int r = 0;
};

/// All nine iterates of the ADMM loop plus the penalty and residual
/// history. j/z_bar are r x n2 x n3, t_aux/l_bar are n1 x r x n3,
/// e/n/p are n1 x n2 x n3, g matches z_bar and w matches l_bar.
struct SolverState {
    Tensor3 j, z_bar, t_aux, l_bar, n, e;
    Tensor3 p, g, w;
    double mu = 0.0;
    int iter = 0;
    std::vector<std::array<double, 3>> residuals;
};

struct SolverReport {
    Tensor3 z;  // n2 x n2 x n3 recovered coefficient tensor
    Tensor3 e;
    Tensor3 n;
    int iterations = 0;
    bool converged = false;
    std::array<double, 3> final_residuals{};
    std::vector<double> objective_history;
    std::vector<double> lagrangian_history;
    std::vector<std::array<double, 3>> residual_history;
    OrthoTransform transform = OrthoTransform::identity(1);
};

/// Builds the dictionary data per cfg.dict_mode: the input unchanged, a
/// truncated T-TSVD reconstruction, or the low-rank part of a transformed
/// RPCA split min ||L||_ttnn + lambda*||E||_1 s.t. x = L + E solved by a
/// two-block ADMM with the same mu schedule and tolerance as cfg.
Tensor3 denoise_dictionary(const Tensor3& x, const SolverConfig& cfg, const OrthoTransform& t);

/// Skinny T-TSVD of x_tilde at its numerical tubal rank (singular values
/// above a 1e-10 relative cutoff, maximized over transform-domain slices).
Dictionary build_dictionary(const Tensor3& x_tilde, const OrthoTransform& t);

// One ADMM primal update each. All are pure: they read the state and
// return the fresh iterate. Within solve() they are invoked in the fixed
// order j, z_bar, t_aux, l_bar, n, e so that each sees the iterates it
// expects; the C terms below always use the current state fields.

/// argmin_J ||J||_ttnn + (mu/2)||J - (z_bar + g/mu)||_F^2.
Tensor3 update_j(const SolverState& s, const OrthoTransform& t, double mu);

/// Per-slice SPD solve of (I + a'a) z_bar = a'(c1 + p/mu) + j - g/mu in the
/// transform domain, with c1 = x - l_bar (*) b - e - n.
Tensor3 update_z_bar(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t,
                     double mu);

/// argmin_T ||T||_ttnn + (mu/2)||T - (l_bar + w/mu)||_F^2.
Tensor3 update_t_aux(const SolverState& s, const OrthoTransform& t, double mu);

/// Per-slice right-sided SPD solve of l_bar (I + b b') = (c2 + p/mu) b' + t_aux - w/mu
/// with c2 = x - a (*) z_bar - e - n.
Tensor3 update_l_bar(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t,
                     double mu);

/// Frobenius shrinkage (p + mu*c3)/(2*beta + mu) with c3 = x - a (*) z_bar - l_bar (*) b - e.
Tensor3 update_n(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t, double mu,
                 double beta);

/// Elementwise half-thresholding of c4 + p/mu at alpha = lambda/mu, with
/// c4 = x - a (*) z_bar - l_bar (*) b - n.
Tensor3 update_e(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t, double mu,
                 double lambda);

struct MultiplierUpdate {
    Tensor3 p, g, w;
    double mu_next = 0.0;
};

/// Dual ascent on all three multipliers plus the penalty step
/// mu_next = min(rho*mu, mu_max).
MultiplierUpdate update_multipliers(const SolverState& s, const Dictionary& d, const Tensor3& x,
                                    const OrthoTransform& t, double mu, double rho, double mu_max);

/// The three infinity-norm residuals ||z_bar - j||, ||l_bar - t_aux|| and
/// ||x - a (*) z_bar - l_bar (*) b - e - n||; converged iff all < eps.
std::pair<bool, std::array<double, 3>> check_convergence(const SolverState& s, const Dictionary& d, const Tensor3& x,
                                                         const OrthoTransform& t, double eps);

/// Full pipeline: transform selection, dictionary denoising and skinny
/// factorization, zero-initialized ADMM until convergence or max_iters,
/// then recovery of z = v (*) z_bar. When trace_path is set, a CSV with one
/// row per iteration (penalty, residuals, objective, Lagrangian value) is
/// written; its header records the solver parameters.
SolverReport solve(const Tensor3& x, const SolverConfig& cfg,
                   const std::optional<std::filesystem::path>& trace_path = std::nullopt);

}  // namespace tbtlrr

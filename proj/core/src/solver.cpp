#include "tbtlrr/solver.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "tbtlrr/prox.hpp"

namespace tbtlrr {

std::string DictMode::to_string() const {
    switch (kind) {
        case Kind::SelfRepresentation: return "self";
        case Kind::TruncatedTtsvd: return "ttsvd:" + std::to_string(rank);
        case Kind::Trpca: {
            if (lambda_trpca <= 0.0) return "trpca";
            std::ostringstream os;
            os << "trpca:" << lambda_trpca;
            return os.str();
        }
    }
    return "self";
}

DictMode DictMode::parse(const std::string& text) {
    if (text == "self") return self();
    if (text.rfind("ttsvd:", 0) == 0) {
        const int r = std::stoi(text.substr(6));
        if (r < 1) throw std::invalid_argument("DictMode: ttsvd rank must be >= 1");
        return truncated_ttsvd(r);
    }
    if (text == "trpca") return trpca();
    if (text.rfind("trpca:", 0) == 0) {
        return trpca(std::stod(text.substr(6)));
    }
    throw std::invalid_argument("DictMode: cannot parse '" + text + "' (expected self, ttsvd:R or trpca[:L])");
}

void SolverConfig::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("SolverConfig: lambda must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("SolverConfig: beta must be positive");
    if (!(mu0 > 0.0)) throw std::invalid_argument("SolverConfig: mu0 must be positive");
    if (!(mu_max > 0.0) || mu0 > mu_max) throw std::invalid_argument("SolverConfig: require 0 < mu0 <= mu_max");
    if (!(rho > 1.0)) throw std::invalid_argument("SolverConfig: rho must be > 1");
    if (!(eps > 0.0)) throw std::invalid_argument("SolverConfig: eps must be positive");
    if (max_iters < 0) throw std::invalid_argument("SolverConfig: max_iters must be >= 0");
}

SolverConfig SolverConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("SolverConfig::from_file: cannot open " + path.string());
    }
    SolverConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), '=', ' ');
        std::istringstream ls(line);
        std::string key, value;
        if (!(ls >> key)) continue;
        if (!(ls >> value)) {
            throw std::invalid_argument("SolverConfig: missing value for '" + key + "' at line " +
                                        std::to_string(lineno));
        }
        if (key == "lambda") cfg.lambda = std::stod(value);
        else if (key == "beta") cfg.beta = std::stod(value);
        else if (key == "mu0") cfg.mu0 = std::stod(value);
        else if (key == "mu_max") cfg.mu_max = std::stod(value);
        else if (key == "rho") cfg.rho = std::stod(value);
        else if (key == "eps") cfg.eps = std::stod(value);
        else if (key == "max_iters") cfg.max_iters = std::stoi(value);
        else if (key == "dict_mode") cfg.dict_mode = DictMode::parse(value);
        else if (key == "transform_kind") cfg.transform_kind = transform_kind_from_string(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else {
            throw std::invalid_argument("SolverConfig: unknown key '" + key + "' at line " + std::to_string(lineno));
        }
    }
    cfg.validate();
    return cfg;
}

namespace {

Tensor3 zeros(int n1, int n2, int n3) { return Tensor3(n1, n2, n3); }

/// x - a (*) z_bar - l_bar (*) b - e - n with the state's current iterates.
Tensor3 fit_residual(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t) {
    return x - t_product(d.a, s.z_bar, t) - t_product(s.l_bar, d.b, t) - s.e - s.n;
}

Tensor3 trpca_low_rank(const Tensor3& x, double lambda, const SolverConfig& cfg, const OrthoTransform& t) {
    Tensor3 l = zeros(x.n1(), x.n2(), x.n3());
    Tensor3 e = l;
    Tensor3 p = l;
    double mu = cfg.mu0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        l = svt_transform(x - e + (1.0 / mu) * p, t, 1.0 / (t.size() * mu));
        e = soft_threshold(x - l + (1.0 / mu) * p, lambda / mu);
        const Tensor3 r = x - l - e;
        p += mu * r;
        mu = std::min(cfg.rho * mu, cfg.mu_max);
        if (r.max_abs() < cfg.eps) break;
    }
    return l;
}

}  // namespace

Tensor3 denoise_dictionary(const Tensor3& x, const SolverConfig& cfg, const OrthoTransform& t) {
    switch (cfg.dict_mode.kind) {
        case DictMode::Kind::SelfRepresentation:
            return x;
        case DictMode::Kind::TruncatedTtsvd: {
            const int full = std::min(x.n1(), x.n2());
            if (cfg.dict_mode.rank > full) {
                throw std::invalid_argument("denoise_dictionary: ttsvd rank " + std::to_string(cfg.dict_mode.rank) +
                                            " exceeds min(n1, n2) = " + std::to_string(full));
            }
            return compose(t_tsvd(x, t, cfg.dict_mode.rank));
        }
        case DictMode::Kind::Trpca: {
            double lambda = cfg.dict_mode.lambda_trpca;
            if (lambda <= 0.0) {
                lambda = 1.0 / std::sqrt(static_cast<double>(std::max(x.n1(), x.n2())) * x.n3());
            }
            return trpca_low_rank(x, lambda, cfg, t);
        }
    }
    throw std::invalid_argument("denoise_dictionary: unknown dict mode");
}

Dictionary build_dictionary(const Tensor3& x_tilde, const OrthoTransform& t) {
    if (x_tilde.empty() || x_tilde.max_abs() == 0.0) {
        throw std::invalid_argument("build_dictionary: degenerate all-zero dictionary data");
    }
    const Tensor3 x_bar = apply_transform(t, x_tilde);
    const int n3 = x_tilde.n3();

    std::vector<Eigen::JacobiSVD<Eigen::MatrixXd>> svds;
    svds.reserve(n3);
    double sigma_max = 0.0;
    for (int k = 0; k < n3; ++k) {
        svds.emplace_back(x_bar.slice(k), Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svds.back().info() != Eigen::Success) {
            throw std::runtime_error("build_dictionary: SVD failed on transform-domain slice " + std::to_string(k));
        }
        if (svds[k].singularValues().size() > 0) {
            sigma_max = std::max(sigma_max, svds[k].singularValues()(0));
        }
    }
    const double cutoff = 1e-10 * sigma_max;
    int r = 0;
    for (int k = 0; k < n3; ++k) {
        const auto& sv = svds[k].singularValues();
        int count = 0;
        while (count < sv.size() && sv(count) > cutoff) ++count;
        r = std::max(r, count);
    }

    Tensor3 a_bar(x_tilde.n1(), r, n3);
    Tensor3 b_bar(r, x_tilde.n2(), n3);
    Tensor3 v_bar(x_tilde.n2(), r, n3);
    for (int k = 0; k < n3; ++k) {
        const auto& svd = svds[k];
        const Eigen::VectorXd s = svd.singularValues().head(r);
        a_bar.slice(k).noalias() = svd.matrixU().leftCols(r) * s.asDiagonal();
        b_bar.slice(k).noalias() = s.asDiagonal() * svd.matrixV().leftCols(r).transpose();
        v_bar.slice(k) = svd.matrixV().leftCols(r);
    }
    return Dictionary{
        inverse_transform(t, a_bar),
        inverse_transform(t, b_bar),
        inverse_transform(t, v_bar),
        r,
    };
}

Tensor3 update_j(const SolverState& s, const OrthoTransform& t, double mu) {
    // The ttnn carries a 1/n3 factor, so the exact prox shrinks the
    // transform-domain singular values by 1/(n3*mu).
    return svt_transform(s.z_bar + (1.0 / mu) * s.g, t, 1.0 / (t.size() * mu));
}

Tensor3 update_z_bar(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t,
                     double mu) {
    const Tensor3 c1 = x - t_product(s.l_bar, d.b, t) - s.e - s.n;
    const Tensor3 a_bar = apply_transform(t, d.a);
    const Tensor3 c1_bar = apply_transform(t, c1);
    const Tensor3 j_bar = apply_transform(t, s.j);
    const Tensor3 p_bar = apply_transform(t, s.p);
    const Tensor3 g_bar = apply_transform(t, s.g);

    Tensor3 out_bar(d.r, x.n2(), x.n3());
    for (int k = 0; k < x.n3(); ++k) {
        const Eigen::MatrixXd ak = a_bar.slice(k);
        const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(d.r, d.r) + ak.transpose() * ak;
        const Eigen::MatrixXd rhs = ak.transpose() * c1_bar.slice(k) + j_bar.slice(k) +
                                    (ak.transpose() * p_bar.slice(k) - g_bar.slice(k)) / mu;
        Eigen::LLT<Eigen::MatrixXd> llt(lhs);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("update_z_bar: SPD solve failed on slice " + std::to_string(k));
        }
        out_bar.slice(k) = llt.solve(rhs);
    }
    return inverse_transform(t, out_bar);
}

Tensor3 update_t_aux(const SolverState& s, const OrthoTransform& t, double mu) {
    return svt_transform(s.l_bar + (1.0 / mu) * s.w, t, 1.0 / (t.size() * mu));
}

Tensor3 update_l_bar(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t,
                     double mu) {
    const Tensor3 c2 = x - t_product(d.a, s.z_bar, t) - s.e - s.n;
    const Tensor3 b_bar = apply_transform(t, d.b);
    const Tensor3 c2_bar = apply_transform(t, c2);
    const Tensor3 t_aux_bar = apply_transform(t, s.t_aux);
    const Tensor3 p_bar = apply_transform(t, s.p);
    const Tensor3 w_bar = apply_transform(t, s.w);

    Tensor3 out_bar(x.n1(), d.r, x.n3());
    for (int k = 0; k < x.n3(); ++k) {
        const Eigen::MatrixXd bk = b_bar.slice(k);
        const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(d.r, d.r) + bk * bk.transpose();
        const Eigen::MatrixXd rhs = c2_bar.slice(k) * bk.transpose() + t_aux_bar.slice(k) +
                                    (p_bar.slice(k) * bk.transpose() - w_bar.slice(k)) / mu;
        Eigen::LLT<Eigen::MatrixXd> llt(lhs);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("update_l_bar: SPD solve failed on slice " + std::to_string(k));
        }
        // Right-sided system out * lhs = rhs, with lhs symmetric.
        out_bar.slice(k) = llt.solve(rhs.transpose()).transpose();
    }
    return inverse_transform(t, out_bar);
}

Tensor3 update_n(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t, double mu,
                 double beta) {
    const Tensor3 c3 = x - t_product(d.a, s.z_bar, t) - t_product(s.l_bar, d.b, t) - s.e;
    return frobenius_shrink(c3, s.p, mu, beta);
}

Tensor3 update_e(const SolverState& s, const Dictionary& d, const Tensor3& x, const OrthoTransform& t, double mu,
                 double lambda) {
    const Tensor3 c4 = x - t_product(d.a, s.z_bar, t) - t_product(s.l_bar, d.b, t) - s.n;
    return half_threshold(c4 + (1.0 / mu) * s.p, lambda / mu);
}

MultiplierUpdate update_multipliers(const SolverState& s, const Dictionary& d, const Tensor3& x,
                                    const OrthoTransform& t, double mu, double rho, double mu_max) {
    MultiplierUpdate out;
    out.p = s.p + mu * fit_residual(s, d, x, t);
    out.g = s.g + mu * (s.z_bar - s.j);
    out.w = s.w + mu * (s.l_bar - s.t_aux);
    out.mu_next = std::min(rho * mu, mu_max);
    return out;
}

std::pair<bool, std::array<double, 3>> check_convergence(const SolverState& s, const Dictionary& d, const Tensor3& x,
                                                         const OrthoTransform& t, double eps) {
    const std::array<double, 3> res = {
        (s.z_bar - s.j).max_abs(),
        (s.l_bar - s.t_aux).max_abs(),
        fit_residual(s, d, x, t).max_abs(),
    };
    const bool ok = res[0] < eps && res[1] < eps && res[2] < eps;
    return {ok, res};
}

namespace {

void write_trace_header(std::ofstream& out, const SolverConfig& cfg) {
    out << "# tbtlrr-trace-v1\n";
    out << "# mu0=" << cfg.mu0 << " mu_max=" << cfg.mu_max << " rho=" << cfg.rho << " eps=" << cfg.eps
        << " lambda=" << cfg.lambda << " beta=" << cfg.beta << " max_iters=" << cfg.max_iters
        << " transform=" << to_string(cfg.transform_kind) << " dict=" << cfg.dict_mode.to_string()
        << " seed=" << cfg.seed << "\n";
    out << "iter,mu,residual_coupling_z,residual_coupling_l,residual_fit,objective,lagrangian\n";
}

void check_finite(const SolverState& s, int iter) {
    const bool ok = s.j.all_finite() && s.z_bar.all_finite() && s.t_aux.all_finite() && s.l_bar.all_finite() &&
                    s.n.all_finite() && s.e.all_finite() && s.p.all_finite() && s.g.all_finite() && s.w.all_finite();
    if (!ok) {
        throw std::runtime_error("solve: non-finite iterate detected at iteration " + std::to_string(iter));
    }
}

}  // namespace

SolverReport solve(const Tensor3& x, const SolverConfig& cfg, const std::optional<std::filesystem::path>& trace_path) {
    cfg.validate();
    if (x.empty() || x.max_abs() == 0.0) {
        throw std::invalid_argument("solve: input tensor is empty or all-zero");
    }

    const OrthoTransform t = make_transform(cfg.transform_kind, x);
    const Tensor3 x_tilde = denoise_dictionary(x, cfg, t);
    const Dictionary dict = build_dictionary(x_tilde, t);

    const int n1 = x.n1(), n2 = x.n2(), n3 = x.n3(), r = dict.r;
    SolverState s;
    s.j = zeros(r, n2, n3);
    s.z_bar = zeros(r, n2, n3);
    s.g = zeros(r, n2, n3);
    s.t_aux = zeros(n1, r, n3);
    s.l_bar = zeros(n1, r, n3);
    s.w = zeros(n1, r, n3);
    s.e = zeros(n1, n2, n3);
    s.n = zeros(n1, n2, n3);
    s.p = zeros(n1, n2, n3);
    s.mu = cfg.mu0;

    std::ofstream trace;
    if (trace_path) {
        trace.open(*trace_path);
        if (!trace) {
            throw std::runtime_error("solve: cannot open trace file " + trace_path->string());
        }
        trace << std::setprecision(12);
        write_trace_header(trace, cfg);
    }

    SolverReport rep;
    bool converged = false;
    int iterations = 0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        s.iter = iter;
        const double mu = s.mu;
        s.j = update_j(s, t, mu);
        s.z_bar = update_z_bar(s, dict, x, t, mu);
        s.t_aux = update_t_aux(s, t, mu);
        s.l_bar = update_l_bar(s, dict, x, t, mu);
        s.n = update_n(s, dict, x, t, mu, cfg.beta);
        s.e = update_e(s, dict, x, t, mu, cfg.lambda);
        check_finite(s, iter);

        const Tensor3 fit = fit_residual(s, dict, x, t);
        const Tensor3 rz = s.z_bar - s.j;
        const Tensor3 rl = s.l_bar - s.t_aux;

        const double e_half = norms(s.e).l_half;
        const double n_fro2 = s.n.dot(s.n);
        const double objective = ttnn(s.z_bar, t) + ttnn(s.l_bar, t) + cfg.lambda * e_half + cfg.beta * n_fro2;
        const double lagrangian = ttnn(s.j, t) + ttnn(s.t_aux, t) + cfg.lambda * e_half + cfg.beta * n_fro2 +
                                  s.p.dot(fit) + 0.5 * mu * fit.dot(fit) + s.g.dot(rz) + 0.5 * mu * rz.dot(rz) +
                                  s.w.dot(rl) + 0.5 * mu * rl.dot(rl);
        rep.objective_history.push_back(objective);
        rep.lagrangian_history.push_back(lagrangian);

        s.p += mu * fit;
        s.g += mu * rz;
        s.w += mu * rl;
        s.mu = std::min(cfg.rho * mu, cfg.mu_max);

        const std::array<double, 3> res = {rz.max_abs(), rl.max_abs(), fit.max_abs()};
        s.residuals.push_back(res);
        rep.residual_history.push_back(res);
        iterations = iter;

        if (trace) {
            trace << iter << ',' << mu << ',' << res[0] << ',' << res[1] << ',' << res[2] << ',' << objective << ','
                  << lagrangian << '\n';
        }

        if (res[0] < cfg.eps && res[1] < cfg.eps && res[2] < cfg.eps) {
            converged = true;
            break;
        }
    }

    rep.z = t_product(dict.v, s.z_bar, t);
    rep.e = s.e;
    rep.n = s.n;
    rep.iterations = iterations;
    rep.converged = converged;
    rep.final_residuals = s.residuals.empty() ? check_convergence(s, dict, x, t, cfg.eps).second : s.residuals.back();
    rep.transform = t;
    return rep;
}

}  // namespace tbtlrr

#include "tbtlrr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rng_mix.hpp"
#include "tbtlrr/io.hpp"
#include "tbtlrr/metrics.hpp"
#include "tbtlrr/noise.hpp"
#include "tbtlrr/tensor_ops.hpp"

namespace tbtlrr {

const char* to_string(NoiseType type) {
    return type == NoiseType::Sparse ? "sparse" : "gaussian";
}

NoiseType noise_type_from_string(const std::string& text) {
    if (text == "sparse") return NoiseType::Sparse;
    if (text == "gaussian") return NoiseType::Gaussian;
    throw std::invalid_argument("noise type must be sparse or gaussian (got '" + text + "')");
}

void ExperimentSpec::validate() const {
    if (input.has_value() == synthetic.has_value()) {
        throw std::invalid_argument("ExperimentSpec: exactly one of input path and synthetic params is required");
    }
    if (synthetic && labels) {
        throw std::invalid_argument("ExperimentSpec: synthetic data carries its own ground truth");
    }
    if (clustering.k < 2) throw std::invalid_argument("ExperimentSpec: k must be >= 2");
    if (clustering.restarts < 1) throw std::invalid_argument("ExperimentSpec: restarts must be >= 1");
    solver.validate();
}

namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LoadedData {
    Tensor3 x;
    std::optional<std::vector<int>> truth;
    double noise_level = 0.0;
};

LoadedData load_data(const ExperimentSpec& spec) {
    LoadedData data;
    if (spec.synthetic) {
        SyntheticData gen = generate_synthetic(*spec.synthetic);
        data.x = std::move(gen.x);
        data.truth = std::move(gen.labels);
        data.noise_level = spec.synthetic->sparse_fraction > 0.0 ? spec.synthetic->sparse_fraction
                                                                 : spec.synthetic->gaussian_level;
    } else {
        data.x = read_t3b(*spec.input);
        if (spec.labels) {
            data.truth = read_labels_csv(*spec.labels);
        }
    }
    if (data.truth) {
        if (static_cast<int>(data.truth->size()) != data.x.n2()) {
            throw std::invalid_argument("run_pipeline: label count does not match sample count n2");
        }
        const std::set<int> distinct(data.truth->begin(), data.truth->end());
        if (static_cast<int>(distinct.size()) != spec.clustering.k) {
            throw std::invalid_argument("run_pipeline: k = " + std::to_string(spec.clustering.k) +
                                        " does not match label cardinality " + std::to_string(distinct.size()));
        }
    }
    return data;
}

void write_row(std::ostream& out, const ResultRow& row) {
    out << row.variant << ',' << row.lambda << ',' << row.beta << ',' << row.noise_level << ',' << row.acc_mean << ','
        << row.acc_std << ',' << row.nmi_mean << ',' << row.nmi_std << ',' << row.iterations << ','
        << row.runtime_seconds << '\n';
}

ClusterResult cluster_variant(const AffinityMatrix& aff, const ExperimentSpec& spec,
                              const std::optional<std::vector<int>>& truth) {
    const SpectralOutcome outcome =
        spectral_clustering(aff, spec.clustering.k, spec.clustering.restarts, spec.clustering.seed);
    if (truth) {
        return evaluate_clustering(outcome, *truth);
    }
    ClusterResult result;
    result.labels = outcome.labels;
    result.acc = result.nmi = kNaN;
    result.acc_mean = result.acc_std = result.nmi_mean = result.nmi_std = kNaN;
    return result;
}

PipelineResult run_pipeline_on(const Tensor3& x, const std::optional<std::vector<int>>& truth, double noise_level,
                               const ExperimentSpec& spec) {
    fs::create_directories(spec.out_dir);

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<fs::path> trace_path;
    if (spec.write_trace) trace_path = spec.out_dir / "trace.csv";

    PipelineResult result;
    result.report = solve(x, spec.solver, trace_path);
    const auto t_solved = std::chrono::steady_clock::now();
    const double solve_seconds = std::chrono::duration<double>(t_solved - t0).count();

    const Tensor3& z = result.report.z;

    auto timed_variant = [&](const AffinityMatrix& aff) {
        const auto c0 = std::chrono::steady_clock::now();
        ClusterResult res = cluster_variant(aff, spec, truth);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        return std::pair<ClusterResult, double>(std::move(res), secs);
    };

    const AffinityMatrix avg = affinity_average(z);
    auto [avg_result, avg_seconds] = timed_variant(avg);
    result.average = std::move(avg_result);

    const SliceWeights weights = diag_ratio_weights(z);
    const AffinityMatrix wgt = affinity_weighted(z, weights);
    auto [wgt_result, wgt_seconds] = timed_variant(wgt);
    result.weighted = std::move(wgt_result);

    auto make_row = [&](const char* variant, const ClusterResult& res, double cluster_seconds) {
        ResultRow row;
        row.variant = variant;
        row.lambda = spec.solver.lambda;
        row.beta = spec.solver.beta;
        row.noise_level = noise_level;
        row.acc_mean = res.acc_mean;
        row.acc_std = res.acc_std;
        row.nmi_mean = res.nmi_mean;
        row.nmi_std = res.nmi_std;
        row.iterations = result.report.iterations;
        row.runtime_seconds = solve_seconds + cluster_seconds;
        return row;
    };
    result.rows.push_back(make_row("average", result.average, avg_seconds));
    result.rows.push_back(make_row("weighted", result.weighted, wgt_seconds));

    write_labels_csv(spec.out_dir / "labels_average.csv", result.average.labels);
    write_labels_csv(spec.out_dir / "labels_weighted.csv", result.weighted.labels);
    if (spec.dump_tensors) {
        write_t3b(spec.out_dir / "z.t3b", result.report.z);
        write_t3b(spec.out_dir / "e.t3b", result.report.e);
        write_t3b(spec.out_dir / "n.t3b", result.report.n);
    }
    result.results_csv = spec.out_dir / "results.csv";
    write_results_csv(result.results_csv, result.rows);
    return result;
}

}  // namespace

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_results_csv: cannot open " + path.string());
    }
    out << std::setprecision(17);
    out << "# " << kResultsSchemaVersion << '\n';
    out << "variant,lambda,beta,noise_level,acc_mean,acc_std,nmi_mean,nmi_std,iterations,runtime_seconds\n";
    for (const ResultRow& row : rows) {
        write_row(out, row);
    }
}

PipelineResult run_pipeline(const ExperimentSpec& spec) {
    spec.validate();
    const LoadedData data = load_data(spec);
    return run_pipeline_on(data.x, data.truth, data.noise_level, spec);
}

std::vector<double> default_grid() {
    std::vector<double> grid;
    for (int e = -5; e <= 3; ++e) {
        grid.push_back(std::pow(10.0, e));
    }
    return grid;
}

GridSearchResult grid_search(const ExperimentSpec& spec, const std::vector<double>& lambdas,
                             const std::vector<double>& betas) {
    spec.validate();
    if (lambdas.empty() || betas.empty()) {
        throw std::invalid_argument("grid_search: grids must be nonempty");
    }
    const LoadedData data = load_data(spec);

    GridSearchResult out;
    double best_acc = -1.0, best_nmi = -1.0;
    int point = 0;
    for (double lambda : lambdas) {
        for (double beta : betas) {
            ExperimentSpec point_spec = spec;
            point_spec.solver.lambda = lambda;
            point_spec.solver.beta = beta;
            point_spec.out_dir = spec.out_dir / ("grid_point_" + std::to_string(point));
            ++point;
            try {
                const PipelineResult res = run_pipeline_on(data.x, data.truth, data.noise_level, point_spec);
                out.table.insert(out.table.end(), res.rows.begin(), res.rows.end());
                const ResultRow& ranked = res.rows.back();  // weighted variant
                if (ranked.acc_mean > best_acc || (ranked.acc_mean == best_acc && ranked.nmi_mean > best_nmi)) {
                    best_acc = ranked.acc_mean;
                    best_nmi = ranked.nmi_mean;
                    out.best_lambda = lambda;
                    out.best_beta = beta;
                }
            } catch (const std::exception&) {
                // Record the failed point and keep searching.
                for (const char* variant : {"average", "weighted"}) {
                    ResultRow row;
                    row.variant = variant;
                    row.lambda = lambda;
                    row.beta = beta;
                    row.noise_level = data.noise_level;
                    row.acc_mean = row.acc_std = row.nmi_mean = row.nmi_std = kNaN;
                    row.iterations = 0;
                    row.runtime_seconds = kNaN;
                    out.table.push_back(std::move(row));
                }
            }
        }
    }
    write_results_csv(spec.out_dir / "grid_results.csv", out.table);
    return out;
}

std::vector<ResultRow> noise_sweep(const ExperimentSpec& spec, NoiseType type, const std::vector<double>& levels) {
    spec.validate();
    for (double level : levels) {
        if (level < 0.0 || level > 1.0) {
            throw std::invalid_argument("noise_sweep: levels must lie in [0, 1]");
        }
    }
    std::vector<ResultRow> rows;
    int point = 0;
    for (double level : levels) {
        ExperimentSpec point_spec = spec;
        std::ostringstream dir;
        dir << "sweep_" << to_string(type) << "_" << point;
        point_spec.out_dir = spec.out_dir / dir.str();
        ++point;

        PipelineResult res;
        if (spec.synthetic) {
            SyntheticParams params = *spec.synthetic;
            if (type == NoiseType::Sparse) {
                params.sparse_fraction = level;
            } else {
                params.gaussian_level = level;
            }
            point_spec.synthetic = params;
            point_spec.validate();
            const SyntheticData gen = generate_synthetic(params);
            res = run_pipeline_on(gen.x, gen.labels, level, point_spec);
        } else {
            const LoadedData base = load_data(spec);
            Tensor3 noisy = base.x;
            if (level > 0.0) {
                const std::uint64_t noise_seed = detail::mix_seed(spec.solver.seed, static_cast<std::uint64_t>(point));
                noisy = (type == NoiseType::Sparse) ? add_sparse_noise(noisy, level, noise_seed)
                                                    : add_gaussian_noise(noisy, level, noise_seed);
            }
            res = run_pipeline_on(noisy, base.truth, level, point_spec);
        }
        rows.insert(rows.end(), res.rows.begin(), res.rows.end());
    }
    write_results_csv(spec.out_dir / "sweep_results.csv", rows);
    return rows;
}

std::vector<SpectrumRow> spectrum_table(const Tensor3& x, const OrthoTransform& t) {
    std::vector<SpectrumRow> rows;
    const auto values = transform_singular_values(x, t);
    for (int k = 0; k < static_cast<int>(values.size()); ++k) {
        for (int i = 0; i < values[k].size(); ++i) {
            rows.push_back({k + 1, static_cast<int>(i) + 1, values[k](i)});
        }
    }
    return rows;
}

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<SpectrumRow>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_spectrum_csv: cannot open " + path.string());
    }
    out << std::setprecision(17);
    out << "# tbtlrr-spectrum-v1\n";
    out << "slice,index,sigma\n";
    for (const SpectrumRow& row : rows) {
        out << row.slice << ',' << row.index << ',' << row.sigma << '\n';
    }
}

}  // namespace tbtlrr

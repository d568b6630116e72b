#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tbtlrr/clustering.hpp"
#include "tbtlrr/solver.hpp"
#include "tbtlrr/synthetic.hpp"

namespace tbtlrr {

enum class NoiseType { Sparse, Gaussian };

const char* to_string(NoiseType type);
NoiseType noise_type_from_string(const std::string& text);

struct ClusteringParams {
    int k = 2;
    int restarts = 50;
    std::uint64_t seed = 0;
};

/// One experiment: where the data comes from (a T3B file or the synthetic
/// generator, exactly one), optional ground-truth labels for file input,
/// solver and clustering settings, and where outputs land.
struct ExperimentSpec {
    std::optional<std::filesystem::path> input;
    std::optional<SyntheticParams> synthetic;
    std::optional<std::filesystem::path> labels;
    SolverConfig solver;
    ClusteringParams clustering;
    std::filesystem::path out_dir = ".";
    bool dump_tensors = false;
    bool write_trace = true;

    void validate() const;
};

/// One line of the results table. `variant` is the affinity fusion that
/// produced the row ("average" or "weighted"). Metrics are NaN when no
/// ground truth was available. Wall-clock time is reported but never part
/// of any determinism contract.
struct ResultRow {
    std::string variant;
    double lambda = 0.0;
    double beta = 0.0;
    double noise_level = 0.0;
    double acc_mean = 0.0;
    double acc_std = 0.0;
    double nmi_mean = 0.0;
    double nmi_std = 0.0;
    int iterations = 0;
    double runtime_seconds = 0.0;
};

constexpr const char* kResultsSchemaVersion = "tbtlrr-results-v1";

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

struct PipelineResult {
    std::vector<ResultRow> rows;  // one per affinity variant
    SolverReport report;
    ClusterResult average;
    ClusterResult weighted;
    std::filesystem::path results_csv;
};

/// Load or generate the data, run the solver, fuse the coefficient tensor
/// into both affinity variants, cluster, score against the truth when
/// available, and write results/labels/trace (plus optional tensor dumps)
/// under spec.out_dir.
PipelineResult run_pipeline(const ExperimentSpec& spec);

struct GridSearchResult {
    double best_lambda = 0.0;
    double best_beta = 0.0;
    std::vector<ResultRow> table;
};

/// Decade-spaced default search grid over [1e-5, 1e3].
std::vector<double> default_grid();

/// Runs the pipeline once per (lambda, beta) grid point and ranks points by
/// weighted-affinity acc_mean, then nmi_mean. Failed points are recorded as
/// NaN rows and skipped in the ranking.
GridSearchResult grid_search(const ExperimentSpec& spec, const std::vector<double>& lambdas,
                             const std::vector<double>& betas);

/// Runs the pipeline once per noise level, overriding the selected noise
/// channel each time. File-based specs have the noise injected on the
/// loaded tensor; synthetic specs are regenerated with the level.
std::vector<ResultRow> noise_sweep(const ExperimentSpec& spec, NoiseType type, const std::vector<double>& levels);

struct SpectrumRow {
    int slice = 0;  // 1-based, in tensor slice order
    int index = 0;  // 1-based position within the slice, nonincreasing sigma
    double sigma = 0.0;
};

/// Per-slice transform-domain singular values, for low-tubal-rank
/// inspection.
std::vector<SpectrumRow> spectrum_table(const Tensor3& x, const OrthoTransform& t);

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<SpectrumRow>& rows);

}  // namespace tbtlrr

// Command-line front end: synthetic data generation, end-to-end clustering
// runs, lambda/beta grid search, noise sweeps, and transform-domain spectrum
// dumps.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tbtlrr/tbtlrr.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

struct SynthOpts {
    tbtlrr::SyntheticParams params;

    void attach(CLI::App* app, bool with_noise = true) {
        app->add_option("--k-subspaces", params.k_subspaces, "Number of synthetic subspaces");
        app->add_option("--per-cluster", params.samples_per_cluster, "Samples per subspace");
        app->add_option("--n1", params.n1, "Ambient feature dimension");
        app->add_option("--n3", params.n3, "Number of frontal slices");
        app->add_option("--rank", params.tubal_rank, "Tubal rank per subspace");
        if (with_noise) {
            app->add_option("--sparse", params.sparse_fraction, "Sparse corruption fraction in [0,1]");
            app->add_option("--gaussian", params.gaussian_level, "Gaussian noise level");
        }
    }
};

struct RunOpts {
    std::string input;
    std::string labels;
    std::string out_dir = "tbtlrr_out";
    std::string transform = "learned";
    std::string dict = "self";
    std::string solver_config;
    tbtlrr::ExperimentSpec spec;
    bool use_synth = false;
    SynthOpts synth;
    std::uint64_t seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--input", input, "Input tensor (T3B format)");
        app->add_option("--labels", labels, "Ground-truth labels CSV (file input only)");
        app->add_flag("--synth", use_synth, "Generate synthetic data instead of reading --input");
        synth.attach(app);
        app->add_option("--k", spec.clustering.k, "Number of clusters");
        app->add_option("--restarts", spec.clustering.restarts, "k-means restarts");
        app->add_option("--seed", seed, "Base RNG seed");
        app->add_option("--lambda", spec.solver.lambda, "Sparse-noise trade-off");
        app->add_option("--beta", spec.solver.beta, "Gaussian-noise trade-off");
        app->add_option("--mu0", spec.solver.mu0, "Initial penalty");
        app->add_option("--mu-max", spec.solver.mu_max, "Penalty cap");
        app->add_option("--rho", spec.solver.rho, "Penalty growth factor");
        app->add_option("--eps", spec.solver.eps, "Convergence tolerance");
        app->add_option("--max-iters", spec.solver.max_iters, "Iteration cap");
        app->add_option("--transform", transform, "Transform: learned|dct|identity");
        app->add_option("--dict", dict, "Dictionary mode: self|ttsvd:R|trpca[:L]");
        app->add_option("--solver-config", solver_config, "Key-value solver config file (overridden by flags)");
        app->add_option("--out", out_dir, "Output directory");
        app->add_flag("--dump-tensors", spec.dump_tensors, "Also write z/e/n as T3B");
    }

    tbtlrr::ExperimentSpec build(const CLI::App* app) {
        if (!solver_config.empty()) {
            // Config file first, explicit flags win.
            tbtlrr::SolverConfig from_file = tbtlrr::SolverConfig::from_file(solver_config);
            auto keep = [&](const char* flag) { return app->count(flag) > 0; };
            if (!keep("--lambda")) spec.solver.lambda = from_file.lambda;
            if (!keep("--beta")) spec.solver.beta = from_file.beta;
            if (!keep("--mu0")) spec.solver.mu0 = from_file.mu0;
            if (!keep("--mu-max")) spec.solver.mu_max = from_file.mu_max;
            if (!keep("--rho")) spec.solver.rho = from_file.rho;
            if (!keep("--eps")) spec.solver.eps = from_file.eps;
            if (!keep("--max-iters")) spec.solver.max_iters = from_file.max_iters;
            if (!keep("--dict")) spec.solver.dict_mode = from_file.dict_mode;
            if (!keep("--transform")) spec.solver.transform_kind = from_file.transform_kind;
        }
        if (app->count("--transform") > 0 || solver_config.empty()) {
            spec.solver.transform_kind = tbtlrr::transform_kind_from_string(transform);
        }
        if (app->count("--dict") > 0 || solver_config.empty()) {
            spec.solver.dict_mode = tbtlrr::DictMode::parse(dict);
        }
        spec.solver.seed = seed;
        spec.clustering.seed = seed;
        if (use_synth) {
            synth.params.seed = seed;
            spec.synthetic = synth.params;
        } else if (!input.empty()) {
            spec.input = fs::path(input);
        }
        if (!labels.empty()) spec.labels = fs::path(labels);
        spec.out_dir = fs::path(out_dir);
        return spec;
    }
};

void print_rows(const std::vector<tbtlrr::ResultRow>& rows) {
    for (const auto& row : rows) {
        std::cout << row.variant << ": acc " << row.acc_mean << " +/- " << row.acc_std << ", nmi " << row.nmi_mean
                  << " +/- " << row.nmi_std << " (iters " << row.iterations << ", " << row.runtime_seconds << " s)\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transformed bilateral tensor low-rank representation clustering"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic union-of-subspaces tensor");
    SynthOpts synth_opts;
    synth_opts.attach(synth_cmd);
    std::uint64_t synth_seed = 0;
    std::string synth_out = "synthetic.t3b";
    std::string synth_labels_out = "synthetic_labels.csv";
    synth_cmd->add_option("--seed", synth_seed, "RNG seed");
    synth_cmd->add_option("--out", synth_out, "Output tensor path (T3B)");
    synth_cmd->add_option("--labels-out", synth_labels_out, "Output labels CSV path");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "Run the full clustering pipeline");
    RunOpts cluster_opts;
    cluster_opts.attach(cluster_cmd);

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "Grid search over lambda and beta");
    RunOpts grid_opts;
    grid_opts.attach(grid_cmd);
    std::string lambdas_text, betas_text;
    grid_cmd->add_option("--lambdas", lambdas_text, "Comma-separated lambda grid (default decades in [1e-5,1e3])");
    grid_cmd->add_option("--betas", betas_text, "Comma-separated beta grid (default decades in [1e-5,1e3])");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Noise robustness sweep");
    RunOpts sweep_opts;
    sweep_opts.attach(sweep_cmd);
    std::string noise_text = "sparse";
    std::string levels_text = "0,0.1,0.2,0.35";
    sweep_cmd->add_option("--noise", noise_text, "Noise channel: sparse|gaussian");
    sweep_cmd->add_option("--levels", levels_text, "Comma-separated noise levels in [0,1]");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Dump transform-domain singular values per slice");
    std::string spectrum_input, spectrum_transform = "learned", spectrum_out = "spectrum.csv";
    spectrum_cmd->add_option("--input", spectrum_input, "Input tensor (T3B format)")->required();
    spectrum_cmd->add_option("--transform", spectrum_transform, "Transform: learned|dct|identity");
    spectrum_cmd->add_option("--out", spectrum_out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            synth_opts.params.seed = synth_seed;
            const tbtlrr::SyntheticData data = tbtlrr::generate_synthetic(synth_opts.params);
            tbtlrr::write_t3b(synth_out, data.x);
            tbtlrr::write_labels_csv(synth_labels_out, data.labels);
            std::cout << "wrote " << synth_out << " (" << data.x.n1() << "x" << data.x.n2() << "x" << data.x.n3()
                      << ") and " << synth_labels_out << "\n";
        } else if (cluster_cmd->parsed()) {
            const tbtlrr::ExperimentSpec spec = cluster_opts.build(cluster_cmd);
            const tbtlrr::PipelineResult result = tbtlrr::run_pipeline(spec);
            std::cout << (result.report.converged ? "converged" : "iteration cap reached") << " after "
                      << result.report.iterations << " iterations\n";
            print_rows(result.rows);
            std::cout << "results: " << result.results_csv.string() << "\n";
        } else if (grid_cmd->parsed()) {
            const tbtlrr::ExperimentSpec spec = grid_opts.build(grid_cmd);
            const std::vector<double> lambdas =
                lambdas_text.empty() ? tbtlrr::default_grid() : parse_double_list(lambdas_text);
            const std::vector<double> betas =
                betas_text.empty() ? tbtlrr::default_grid() : parse_double_list(betas_text);
            const tbtlrr::GridSearchResult result = tbtlrr::grid_search(spec, lambdas, betas);
            std::cout << "best lambda " << result.best_lambda << ", beta " << result.best_beta << "\n";
            std::cout << "table: " << (spec.out_dir / "grid_results.csv").string() << "\n";
        } else if (sweep_cmd->parsed()) {
            const tbtlrr::ExperimentSpec spec = sweep_opts.build(sweep_cmd);
            const tbtlrr::NoiseType type = tbtlrr::noise_type_from_string(noise_text);
            const std::vector<double> levels = parse_double_list(levels_text);
            const std::vector<tbtlrr::ResultRow> rows = tbtlrr::noise_sweep(spec, type, levels);
            print_rows(rows);
            std::cout << "table: " << (spec.out_dir / "sweep_results.csv").string() << "\n";
        } else if (spectrum_cmd->parsed()) {
            const tbtlrr::Tensor3 x = tbtlrr::read_t3b(spectrum_input);
            const tbtlrr::OrthoTransform t =
                tbtlrr::make_transform(tbtlrr::transform_kind_from_string(spectrum_transform), x);
            tbtlrr::write_spectrum_csv(spectrum_out, tbtlrr::spectrum_table(x, t));
            std::cout << "wrote " << spectrum_out << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

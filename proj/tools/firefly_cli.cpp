// Experiment runner: `run`, `compare`, `list-benchmarks`.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "firefly/benchmarks.hpp"
#include "firefly/harness.hpp"

namespace {

void apply_overrides(firefly::ExperimentConfig& config, const std::optional<std::string>& out,
                     const std::optional<std::uint64_t>& seed) {
    if (out) config.output_dir = *out;
    if (seed) config.base_seed = *seed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Firefly algorithm experiment runner"};
    app.require_subcommand(1);

    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    bool concurrent = false;

    auto* run_cmd = app.add_subcommand("run", "Execute one experiment and write summary and curve files");
    std::string config_path;
    run_cmd->add_option("--config", config_path, "Experiment config (flat JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir, "Override output_dir");
    run_cmd->add_option("--seed", seed, "Override base_seed");
    run_cmd->add_flag("--parallel", concurrent, "Run repetitions concurrently");

    auto* compare_cmd = app.add_subcommand("compare", "Run several configs and print a comparison table");
    std::vector<std::string> config_paths;
    compare_cmd->add_option("--configs", config_paths, "Experiment configs sharing benchmark and budget")
        ->required()
        ->check(CLI::ExistingFile);
    compare_cmd->add_option("--out", out_dir, "Directory for comparison.csv");
    compare_cmd->add_option("--seed", seed, "Override base_seed of every config");
    compare_cmd->add_flag("--parallel", concurrent, "Run repetitions concurrently");

    app.add_subcommand("list-benchmarks", "Print the benchmark registry names");

    CLI11_PARSE(app, argc, argv);

    const auto execution = concurrent ? firefly::Execution::concurrent : firefly::Execution::sequential;
    try {
        if (app.got_subcommand("list-benchmarks")) {
            for (const auto& name : firefly::benchmark_names()) std::cout << name << '\n';
            return 0;
        }
        if (app.got_subcommand(run_cmd)) {
            auto config = firefly::load_config(config_path);
            apply_overrides(config, out_dir, seed);
            const auto result = firefly::run_experiment(config, execution);
            const auto files = firefly::emit_results(result.stats, result.reports, config);
            std::cout << "variant=" << firefly::to_string(config.variant) << " benchmark=" << config.benchmark
                      << " mean_best=" << firefly::format_double(result.stats.mean_best)
                      << " success_rate=" << firefly::format_double(result.stats.success_rate) << '\n'
                      << "wrote " << files.summary.string() << '\n';
            return 0;
        }
        if (app.got_subcommand(compare_cmd)) {
            std::vector<firefly::ExperimentConfig> configs;
            for (const auto& path : config_paths) {
                configs.push_back(firefly::load_config(path));
                if (seed) configs.back().base_seed = *seed;
            }
            const auto table = firefly::comparison_csv(firefly::compare_variants(configs, execution));
            std::cout << table;
            if (out_dir) {
                std::filesystem::create_directories(*out_dir);
                const auto path = std::filesystem::path(*out_dir) / "comparison.csv";
                std::ofstream file(path, std::ios::binary);
                if (!(file << table)) throw std::runtime_error("cannot write " + path.string());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

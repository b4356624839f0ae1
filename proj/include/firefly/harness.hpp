#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "firefly/core.hpp"
#include "firefly/variants.hpp"

namespace firefly {

enum class Variant { base, elitist, gaussian_pull, levy, chaotic_alpha, multiswarm, sa_like, de_like, pso_like };

std::string_view to_string(Variant variant);
/// Throws std::invalid_argument for an unknown name.
Variant parse_variant(std::string_view name);
const std::vector<Variant>& all_variants();

struct ExperimentConfig {
    std::string benchmark;
    std::size_t dim = 2;
    Variant variant = Variant::base;
    /// User-level parameters; the variant preset is layered on per run.
    FaParams params;
    MultiSwarmConfig multiswarm;
    std::size_t repetitions = 30;
    std::uint64_t base_seed = 0;
    /// Success means final best <= optimum + threshold.
    double success_threshold = 1e-2;
    std::filesystem::path output_dir = "results";

    std::uint64_t seed_for(std::size_t repetition) const { return base_seed + repetition; }
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Parses a flat JSON object. Required keys: benchmark, variant,
/// repetitions, base_seed. Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON echo of a config (flat, same keys parse_config accepts).
std::string config_to_json(const ExperimentConfig& config);

/// Parameters for one repetition after applying the variant preset.
FaParams effective_params(const ExperimentConfig& config, std::uint64_t seed);

RunReport run_repetition(const ExperimentConfig& config, std::size_t repetition);

struct SummaryStats {
    std::size_t repetitions = 0;
    double mean_best = 0.0;
    double std_best = 0.0;  // sample standard deviation, 0 for one repetition
    double min_best = 0.0;
    double max_best = 0.0;
    double success_rate = 0.0;
    /// Mean evaluations until a successful run first met the threshold;
    /// absent when no run succeeded.
    std::optional<double> mean_fes_to_success;
};

SummaryStats summarize(const std::vector<RunReport>& reports, double optimum_value, double success_threshold);

enum class Execution { sequential, concurrent };

struct ExperimentResult {
    SummaryStats stats;
    std::vector<RunReport> reports;  // indexed by repetition
};

/// Runs `config.repetitions` runs with seeds base_seed + r. A failing
/// repetition aborts with a std::runtime_error naming its seed.
ExperimentResult run_experiment(const ExperimentConfig& config, Execution execution = Execution::sequential,
                                unsigned threads = 0);

/// `%.17g`
std::string format_double(double value);

/// "generation,fes_used,best_fitness" then one row per trace entry.
std::string curve_csv(const RunReport& report);

struct MedianPoint {
    std::uint64_t generation = 0;
    double median_best = 0.0;
    std::size_t count = 0;
};

/// Elementwise median across repetitions at matching trace indices.
std::vector<MedianPoint> median_curve(const std::vector<RunReport>& reports);
std::string median_curve_csv(const std::vector<RunReport>& reports);

std::string summary_json(const SummaryStats& stats, const ExperimentConfig& config);

struct EmittedFiles {
    std::filesystem::path summary;
    std::vector<std::filesystem::path> curves;
    std::filesystem::path median;
};

/// Writes summary.json, curves/rep_NNN.csv and median_curve.csv under
/// config.output_dir. Throws std::runtime_error if the directory is unwritable.
EmittedFiles emit_results(const SummaryStats& stats, const std::vector<RunReport>& reports,
                          const ExperimentConfig& config);

struct ComparisonRow {
    std::string variant;
    std::uint64_t max_fes = 0;
    SummaryStats stats;
};

/// Runs every config (they must share benchmark, dimension and budget) and
/// returns the rows in input order.
std::vector<ComparisonRow> compare_variants(const std::vector<ExperimentConfig>& configs,
                                            Execution execution = Execution::sequential);

/// "variant,max_fes,mean_best,std_best,success_rate,mean_fes_to_success";
/// an absent mean_fes_to_success is an empty field.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> parse_comparison_csv(std::string_view text);

}  // namespace firefly

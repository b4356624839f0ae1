#include "firefly/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "firefly/benchmarks.hpp"

namespace firefly {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct VariantName {
    Variant variant;
    std::string_view name;
};

constexpr VariantName variant_names[] = {
    {Variant::base, "base"},           {Variant::elitist, "elitist"},       {Variant::gaussian_pull, "gaussian_pull"},
    {Variant::levy, "levy"},           {Variant::chaotic_alpha, "chaotic_alpha"}, {Variant::multiswarm, "multiswarm"},
    {Variant::sa_like, "sa_like"},     {Variant::de_like, "de_like"},       {Variant::pso_like, "pso_like"},
};

constexpr std::size_t default_elitist_trials = 5;

template <typename Enum>
struct EnumName {
    Enum value;
    std::string_view name;
};

constexpr EnumName<EpsilonKind> epsilon_names[] = {
    {EpsilonKind::gaussian, "gaussian"}, {EpsilonKind::uniform_centered, "uniform_centered"}, {EpsilonKind::levy, "levy"}};
constexpr EnumName<UpdateScheme> scheme_names[] = {
    {UpdateScheme::asynchronous, "asynchronous"}, {UpdateScheme::synchronous, "synchronous"}};
constexpr EnumName<ScheduleKind> schedule_names[] = {
    {ScheduleKind::constant, "constant"}, {ScheduleKind::geometric, "geometric"}, {ScheduleKind::chaotic, "chaotic"}};

template <typename Enum, std::size_t N>
std::string_view name_of(const EnumName<Enum> (&table)[N], Enum value) {
    for (const auto& e : table)
        if (e.value == value) return e.name;
    return "?";
}

template <typename Enum, std::size_t N>
Enum enum_from(const EnumName<Enum> (&table)[N], const std::string& key, const std::string& text) {
    for (const auto& e : table)
        if (e.name == text) return e.value;
    throw ConfigError(key, "unrecognized value '" + text + "'");
}

class Reader {
public:
    explicit Reader(const json& doc) : doc_(doc) {}

    bool has(const std::string& key) const { return doc_.contains(key); }

    std::string string(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_string()) throw ConfigError(key, "expected a string");
        return v.get<std::string>();
    }

    double number(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_number()) throw ConfigError(key, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ConfigError(key, "expected a finite number");
        return x;
    }

    double non_negative(const std::string& key) const {
        const double x = number(key);
        if (x < 0.0) throw ConfigError(key, "must be >= 0");
        return x;
    }

    std::uint64_t unsigned_int(const std::string& key) const {
        const auto& v = at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) throw ConfigError(key, "must be >= 0");
        throw ConfigError(key, "expected a non-negative integer");
    }

    std::uint64_t positive_int(const std::string& key) const {
        const auto value = unsigned_int(key);
        if (value == 0) throw ConfigError(key, "must be positive");
        return value;
    }

    bool boolean(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
        return v.get<bool>();
    }

private:
    const json& at(const std::string& key) const {
        if (!doc_.contains(key)) throw ConfigError(key, "missing required key");
        return doc_.at(key);
    }

    const json& doc_;
};

const std::vector<std::string> known_keys{
    "benchmark",      "dim",           "variant",           "repetitions",   "base_seed",
    "alpha",          "beta0",         "gamma",             "pop_size",      "max_fes",
    "success_threshold", "output_dir", "epsilon_kind",      "levy_lambda",   "update_scheme",
    "alpha_schedule", "alpha_ratio",   "chaos_x0",          "elitism",       "elitist_trials",
    "num_swarms",     "exclusion_radius", "anticonvergence_radius", "sentinel_count"};

}  // namespace

std::string_view to_string(Variant variant) {
    for (const auto& v : variant_names)
        if (v.variant == variant) return v.name;
    return "?";
}

Variant parse_variant(std::string_view name) {
    for (const auto& v : variant_names)
        if (v.name == name) return v.variant;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

const std::vector<Variant>& all_variants() {
    static const std::vector<Variant> variants = [] {
        std::vector<Variant> out;
        for (const auto& v : variant_names) out.push_back(v.variant);
        return out;
    }();
    return variants;
}

ExperimentConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "expected a flat key/value object");
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
            throw ConfigError(key, "unknown key");
        if (value.is_object() || value.is_array()) throw ConfigError(key, "nested values are not allowed");
    }

    const Reader in(doc);
    ExperimentConfig config;
    config.benchmark = in.string("benchmark");
    try {
        config.variant = parse_variant(in.string("variant"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("variant", e.what());
    }
    config.repetitions = in.positive_int("repetitions");
    config.base_seed = in.unsigned_int("base_seed");

    if (in.has("dim")) config.dim = in.positive_int("dim");
    auto& p = config.params;
    if (in.has("alpha")) p.alpha_schedule.alpha0 = in.non_negative("alpha");
    if (in.has("beta0")) p.beta0 = in.non_negative("beta0");
    if (in.has("gamma")) p.gamma = in.non_negative("gamma");
    if (in.has("pop_size")) p.pop_size = in.positive_int("pop_size");
    if (in.has("max_fes")) p.max_fes = in.positive_int("max_fes");
    if (in.has("success_threshold")) config.success_threshold = in.non_negative("success_threshold");
    if (in.has("output_dir")) config.output_dir = in.string("output_dir");
    if (in.has("epsilon_kind")) p.epsilon_kind = enum_from(epsilon_names, "epsilon_kind", in.string("epsilon_kind"));
    if (in.has("levy_lambda")) p.levy_lambda = in.number("levy_lambda");
    if (in.has("update_scheme"))
        p.update_scheme = enum_from(scheme_names, "update_scheme", in.string("update_scheme"));
    if (in.has("alpha_schedule"))
        p.alpha_schedule.kind = enum_from(schedule_names, "alpha_schedule", in.string("alpha_schedule"));
    if (in.has("alpha_ratio")) p.alpha_schedule.ratio = in.number("alpha_ratio");
    if (in.has("chaos_x0")) p.alpha_schedule.x0 = in.number("chaos_x0");
    if (in.has("elitism")) p.elitism = in.boolean("elitism");
    if (in.has("elitist_trials")) p.elitist_trials = in.unsigned_int("elitist_trials");
    auto& ms = config.multiswarm;
    if (in.has("num_swarms")) ms.num_swarms = in.positive_int("num_swarms");
    if (in.has("exclusion_radius")) ms.exclusion_radius = in.number("exclusion_radius");
    if (in.has("anticonvergence_radius")) ms.anticonvergence_radius = in.number("anticonvergence_radius");
    if (in.has("sentinel_count")) ms.sentinel_count = in.unsigned_int("sentinel_count");

    try {
        lookup(config.benchmark, config.dim);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("benchmark", e.what());
    }
    try {
        validate(effective_params(config, config.seed_for(0)));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("params", e.what());
    }
    if (config.variant == Variant::multiswarm) {
        if (p.pop_size % ms.num_swarms != 0)
            throw ConfigError("num_swarms", "must divide pop_size");
        ms.swarm_size = p.pop_size / ms.num_swarms;
        try {
            validate(ms, config.dim);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("num_swarms", e.what());
        }
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

ordered_json config_object(const ExperimentConfig& config) {
    const auto& p = config.params;
    ordered_json out;
    out["benchmark"] = config.benchmark;
    out["dim"] = config.dim;
    out["variant"] = to_string(config.variant);
    out["repetitions"] = config.repetitions;
    out["base_seed"] = config.base_seed;
    out["alpha"] = p.alpha0();
    out["beta0"] = p.beta0;
    out["gamma"] = p.gamma;
    out["pop_size"] = p.pop_size;
    out["max_fes"] = p.max_fes;
    out["success_threshold"] = config.success_threshold;
    out["output_dir"] = config.output_dir.generic_string();
    out["epsilon_kind"] = name_of(epsilon_names, p.epsilon_kind);
    out["levy_lambda"] = p.levy_lambda;
    out["update_scheme"] = name_of(scheme_names, p.update_scheme);
    out["alpha_schedule"] = name_of(schedule_names, p.alpha_schedule.kind);
    out["alpha_ratio"] = p.alpha_schedule.ratio;
    out["chaos_x0"] = p.alpha_schedule.x0;
    out["elitism"] = p.elitism;
    out["elitist_trials"] = p.elitist_trials;
    out["num_swarms"] = config.multiswarm.num_swarms;
    out["exclusion_radius"] = config.multiswarm.exclusion_radius;
    out["anticonvergence_radius"] = config.multiswarm.anticonvergence_radius;
    out["sentinel_count"] = config.multiswarm.sentinel_count;
    return out;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) { return config_object(config).dump(2); }

FaParams effective_params(const ExperimentConfig& config, std::uint64_t seed) {
    FaParams p = config.params;
    switch (config.variant) {
        case Variant::base:
        case Variant::multiswarm: break;
        case Variant::elitist:
            p.elitism = true;
            if (p.elitist_trials == 0) p.elitist_trials = default_elitist_trials;
            break;
        case Variant::gaussian_pull: p.move_rule = MoveRule::global_best_pull; break;
        case Variant::levy: p.epsilon_kind = EpsilonKind::levy; break;
        case Variant::chaotic_alpha: p.alpha_schedule.kind = ScheduleKind::chaotic; break;
        case Variant::sa_like: p = reduction_mode(ReductionMode::sa_like, p, seed); break;
        case Variant::de_like: p = reduction_mode(ReductionMode::de_like, p, seed); break;
        case Variant::pso_like: p = reduction_mode(ReductionMode::pso_like, p, seed); break;
    }
    return p;
}

RunReport run_repetition(const ExperimentConfig& config, std::size_t repetition) {
    const std::uint64_t seed = config.seed_for(repetition);
    const Objective objective = lookup(config.benchmark, config.dim);
    const FaParams params = effective_params(config, seed);
    if (config.variant == Variant::multiswarm) {
        MultiSwarmConfig ms = config.multiswarm;
        ms.swarm_size = params.pop_size / ms.num_swarms;
        return run_multiswarm(objective, ms, params, seed);
    }
    return run(objective, params, seed);
}

SummaryStats summarize(const std::vector<RunReport>& reports, double optimum_value, double success_threshold) {
    if (reports.empty()) throw std::invalid_argument("summarize: no reports");
    SummaryStats s;
    s.repetitions = reports.size();
    const double n = static_cast<double>(reports.size());
    s.min_best = reports.front().final_best.fitness;
    s.max_best = s.min_best;
    double sum = 0.0;
    for (const auto& r : reports) {
        const double f = r.final_best.fitness;
        sum += f;
        s.min_best = std::min(s.min_best, f);
        s.max_best = std::max(s.max_best, f);
    }
    s.mean_best = sum / n;
    // Rounding can push the mean a hair outside [min, max] for equal values.
    s.mean_best = std::clamp(s.mean_best, s.min_best, s.max_best);
    if (reports.size() > 1) {
        double sq = 0.0;
        for (const auto& r : reports) sq += (r.final_best.fitness - s.mean_best) * (r.final_best.fitness - s.mean_best);
        s.std_best = std::sqrt(sq / (n - 1.0));
    }

    const double target = optimum_value + success_threshold;
    std::size_t successes = 0;
    double fes_sum = 0.0;
    for (const auto& r : reports) {
        if (!(r.final_best.fitness <= target)) continue;
        ++successes;
        for (const auto& point : r.trace) {
            if (point.best_fitness <= target) {
                fes_sum += static_cast<double>(point.fes_used);
                break;
            }
        }
    }
    s.success_rate = static_cast<double>(successes) / n;
    if (successes > 0) s.mean_fes_to_success = fes_sum / static_cast<double>(successes);
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config, Execution execution, unsigned threads) {
    const std::size_t reps = config.repetitions;
    std::vector<RunReport> reports(reps);
    std::vector<std::exception_ptr> errors(reps);
    auto work = [&](std::size_t r) {
        try {
            reports[r] = run_repetition(config, r);
        } catch (...) {
            errors[r] = std::current_exception();
        }
    };

    if (execution == Execution::concurrent && reps > 1) {
        if (threads == 0) threads = std::max(2u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < reps; r = next++) work(r);
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t r = 0; r < reps; ++r) {
            work(r);
            if (errors[r]) break;
        }
    }

    for (std::size_t r = 0; r < reps; ++r) {
        if (!errors[r]) continue;
        try {
            std::rethrow_exception(errors[r]);
        } catch (const std::exception& e) {
            throw std::runtime_error("repetition " + std::to_string(r) + " (seed " +
                                     std::to_string(config.seed_for(r)) + ") failed: " + e.what());
        }
    }

    const Objective objective = lookup(config.benchmark, config.dim);
    ExperimentResult result;
    result.stats = summarize(reports, objective.known_optimum()->value, config.success_threshold);
    result.reports = std::move(reports);
    return result;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string curve_csv(const RunReport& report) {
    std::string out = "generation,fes_used,best_fitness\n";
    for (const auto& p : report.trace) {
        out += std::to_string(p.generation);
        out += ',';
        out += std::to_string(p.fes_used);
        out += ',';
        out += format_double(p.best_fitness);
        out += '\n';
    }
    return out;
}

std::vector<MedianPoint> median_curve(const std::vector<RunReport>& reports) {
    std::size_t longest = 0;
    for (const auto& r : reports) longest = std::max(longest, r.trace.size());
    std::vector<MedianPoint> curve;
    std::vector<double> column;
    for (std::size_t g = 0; g < longest; ++g) {
        column.clear();
        MedianPoint point;
        for (const auto& r : reports) {
            if (g >= r.trace.size()) continue;
            if (column.empty()) point.generation = r.trace[g].generation;
            column.push_back(r.trace[g].best_fitness);
        }
        std::sort(column.begin(), column.end());
        const std::size_t m = column.size();
        point.count = m;
        point.median_best = m % 2 ? column[m / 2] : 0.5 * (column[m / 2 - 1] + column[m / 2]);
        curve.push_back(point);
    }
    return curve;
}

std::string median_curve_csv(const std::vector<RunReport>& reports) {
    std::string out = "generation,median_best_fitness,repetitions\n";
    for (const auto& p : median_curve(reports))
        out += std::to_string(p.generation) + ',' + format_double(p.median_best) + ',' + std::to_string(p.count) + '\n';
    return out;
}

namespace {

ordered_json stats_object(const SummaryStats& stats) {
    ordered_json out;
    out["repetitions"] = stats.repetitions;
    out["mean_best"] = stats.mean_best;
    out["std_best"] = stats.std_best;
    out["min_best"] = stats.min_best;
    out["max_best"] = stats.max_best;
    out["success_rate"] = stats.success_rate;
    out["mean_fes_to_success"] = stats.mean_fes_to_success ? ordered_json(*stats.mean_fes_to_success) : ordered_json();
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string summary_json(const SummaryStats& stats, const ExperimentConfig& config) {
    ordered_json doc;
    doc["config"] = config_object(config);
    doc["stats"] = stats_object(stats);
    doc["notes"]["mean_fes_to_success"] =
        "efficiency: mean evaluations until a successful repetition first reached optimum + success_threshold";
    return doc.dump(2) + "\n";
}

EmittedFiles emit_results(const SummaryStats& stats, const std::vector<RunReport>& reports,
                          const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    const fs::path dir = config.output_dir;
    std::error_code ec;
    fs::create_directories(dir / "curves", ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

    EmittedFiles files;
    files.summary = dir / "summary.json";
    write_file(files.summary, summary_json(stats, config));
    for (std::size_t r = 0; r < reports.size(); ++r) {
        char name[32];
        std::snprintf(name, sizeof name, "rep_%03zu.csv", r);
        files.curves.push_back(dir / "curves" / name);
        write_file(files.curves.back(), curve_csv(reports[r]));
    }
    files.median = dir / "median_curve.csv";
    write_file(files.median, median_curve_csv(reports));
    return files;
}

std::vector<ComparisonRow> compare_variants(const std::vector<ExperimentConfig>& configs, Execution execution) {
    if (configs.empty()) throw std::invalid_argument("compare_variants: no configs");
    const auto& first = configs.front();
    for (const auto& c : configs) {
        if (c.benchmark != first.benchmark || c.dim != first.dim)
            throw std::invalid_argument("compare_variants: configs must share the benchmark (" + first.benchmark +
                                        " dim " + std::to_string(first.dim) + " vs " + c.benchmark + " dim " +
                                        std::to_string(c.dim) + ")");
        if (c.params.max_fes != first.params.max_fes)
            throw std::invalid_argument("compare_variants: configs must share max_fes");
    }
    std::vector<ComparisonRow> rows;
    for (const auto& c : configs) {
        auto result = run_experiment(c, execution);
        rows.push_back({std::string(to_string(c.variant)), c.params.max_fes, result.stats});
    }
    return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "variant,max_fes,mean_best,std_best,success_rate,mean_fes_to_success\n";
    for (const auto& row : rows) {
        out += row.variant + ',' + std::to_string(row.max_fes) + ',' + format_double(row.stats.mean_best) + ',' +
               format_double(row.stats.std_best) + ',' + format_double(row.stats.success_rate) + ',';
        if (row.stats.mean_fes_to_success) out += format_double(*row.stats.mean_fes_to_success);
        out += '\n';
    }
    return out;
}

std::vector<ComparisonRow> parse_comparison_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "variant,max_fes,mean_best,std_best,success_rate,mean_fes_to_success")
        throw std::invalid_argument("comparison table: unexpected header");
    std::vector<ComparisonRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
            fields.push_back(line.substr(start, pos - start));
        fields.push_back(line.substr(start));
        if (fields.size() != 6) throw std::invalid_argument("comparison table: expected 6 fields in '" + line + "'");
        ComparisonRow row;
        row.variant = fields[0];
        row.max_fes = std::stoull(fields[1]);
        row.stats.mean_best = std::stod(fields[2]);
        row.stats.std_best = std::stod(fields[3]);
        row.stats.success_rate = std::stod(fields[4]);
        if (!fields[5].empty()) row.stats.mean_fes_to_success = std::stod(fields[5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace firefly

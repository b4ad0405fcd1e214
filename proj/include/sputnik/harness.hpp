#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sputnik/cloud.hpp"
#include "sputnik/objectives.hpp"
#include "sputnik/selector.hpp"

namespace sputnik::bench {

enum class Algorithm { Nsga2, EpsMoea };

std::string_view to_string(Algorithm a);
/// Accepts "nsga2" or "eps-moea"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct GeneratedInstance {
    std::size_t vms = 30;
    std::size_t components = 60;
    double public_fraction = 0.5;
    std::uint64_t seed = 7;
    cloud::InstanceParams params;
};

/// Either an instance file or generator parameters.
struct InstanceSource {
    std::optional<std::filesystem::path> path;
    GeneratedInstance generated;

    cloud::CloudInstance resolve() const;
};

struct RunConfig {
    Algorithm algorithm = Algorithm::Nsga2;
    Strategy strategy = Strategy::Caste;
    std::size_t population_size = 100;
    std::size_t generations = 300;
    double mutation_probability = 1.0;
    double crossover_probability = 0.9;
    double exploration_floor = 0.1;
    /// Box sizes in raw objective units (cost, latency ms); eps-moea only.
    std::vector<double> epsilon{0.4, 0.25};
    InstanceSource instance;
    std::uint64_t seed = 1;
    /// Worker threads for offspring evaluation; never changes results.
    std::size_t threads = 1;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Options that only matter when comparing several strategies.
struct CompareOptions {
    std::vector<Strategy> strategies{Strategy::Random, Strategy::Elitist, Strategy::Caste};
    std::vector<Algorithm> algorithms{Algorithm::Nsga2};
    std::size_t repeats = 20;
    double threshold_fraction = 0.9;
    std::size_t table_generation = 200;
    std::optional<std::size_t> stagnation_window;
    std::size_t stagnation_cap = 1000;
    /// Length of one extra run per algorithm whose hypervolume also counts as "best".
    std::optional<std::size_t> reference_generations;
    /// Parallel independent runs; 0 picks the hardware concurrency.
    std::size_t jobs = 0;
};

/// Parses a JSON run configuration; relative instance paths resolve against `base_dir`.
RunConfig run_config_from_json(std::string_view text, const std::filesystem::path& base_dir = {});
CompareOptions compare_options_from_json(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);
CompareOptions load_compare_options(const std::filesystem::path& path);
std::string run_config_to_json(const RunConfig& config);

struct GenerationRow {
    std::size_t generation = 0;
    double hypervolume = 0.0;
    ObjectiveVector best;
    ObjectiveVector mean;
    std::size_t mutations = 0;
    std::vector<std::size_t> selections;
    std::vector<std::optional<double>> delta_impact;
    /// Raw objective vectors of the generation's non-dominated set.
    std::vector<ObjectiveVector> front;
};

struct RunTrace {
    Algorithm algorithm = Algorithm::Nsga2;
    Strategy strategy = Strategy::Random;
    std::uint64_t seed = 0;
    std::vector<std::string> objective_names;
    std::vector<std::string> operator_ids;
    std::vector<GenerationRow> rows;
    /// Stagnation runs only: stopped by the generation cap.
    bool hit_cap = false;
    /// Coordinates clamped while normalizing for hypervolume.
    std::size_t clamped = 0;

    std::vector<double> hypervolumes() const;
};

/// Union of the front points' ranges across traces. Zero-width objectives are widened to one unit.
ObjectiveBounds observed_bounds(std::span<const RunTrace> traces);

/// Recomputes every row's hypervolume against fixed normalization bounds.
void rescore(RunTrace& trace, const ObjectiveBounds& bounds);

/// Full fixed-length run. Hypervolumes are normalized by the run's own observed bounds.
RunTrace run_experiment(const RunConfig& config);
RunTrace run_experiment(const RunConfig& config, const cloud::CloudInstance& instance);

/// Runs until the hypervolume is unchanged (within 1e-9) for `window` consecutive
/// generations, or `cap` generations. Stagnation is judged against the instance's
/// feasible bounds; the returned trace is rescored by its own observed bounds.
RunTrace stagnation_run(const RunConfig& config, std::size_t window, std::size_t cap);
RunTrace stagnation_run(const RunConfig& config, const cloud::CloudInstance& instance, std::size_t window,
                        std::size_t cap);

/// Header: generation,hypervolume,best_<obj>,mean_<obj>...,mutations,sel_<op>...,delta_<op>...
std::string trace_to_csv(const RunTrace& trace);

/// Lower quartile, median and upper quartile (linear interpolation). "Never" values
/// are carried as +infinity.
struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

Quartiles quartiles(std::vector<double> values);

struct SummaryRow {
    Algorithm algorithm = Algorithm::Nsga2;
    Strategy strategy = Strategy::Random;
    std::size_t runs = 0;
    Quartiles final_hv;
    std::optional<Quartiles> table_hv;
    Quartiles generations_to_threshold;
    std::size_t never_reached = 0;
    std::optional<Quartiles> stagnation_hv;
    std::size_t stagnation_cap_hits = 0;
};

struct Comparison {
    std::vector<RunTrace> traces;
    std::vector<RunTrace> stagnation_traces;
    std::vector<RunTrace> reference_traces;
    ObjectiveBounds bounds;
    /// Per-row threshold = threshold_fraction * best hypervolume of that row's algorithm.
    std::vector<SummaryRow> rows;
    std::vector<double> thresholds;
    std::size_t table_generation = 200;
};

/// One RunConfig per (algorithm, strategy) combination of `options`, based on `base`.
std::vector<RunConfig> expand_configs(const RunConfig& base, const CompareOptions& options);

/// Runs each config `repeats` times with seeds seed, seed+1, ...; normalizes all
/// traces by the batch's union bounds and summarizes per (algorithm, strategy).
/// With `reference_generations`, the first config of each algorithm is also run
/// once for that many generations; it joins the bounds and the best-HV pool.
Comparison compare_strategies(std::span<const RunConfig> configs, const CompareOptions& options);

std::string summary_to_csv(const Comparison& comparison);
std::string summary_to_text(const Comparison& comparison);

/// Generation at which a trace first reaches `threshold` (or nullopt).
std::optional<std::size_t> trace_generations_to_threshold(const RunTrace& trace, double threshold);

/// Writes traces, summary and plot data for a comparison into `dir`.
void write_comparison(const Comparison& comparison, const std::filesystem::path& dir);

} // namespace sputnik::bench

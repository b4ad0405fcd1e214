#include "sputnik/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sputnik/eps_moea.hpp"
#include "sputnik/csv.hpp"
#include "sputnik/errors.hpp"
#include "sputnik/indicators.hpp"
#include "sputnik/nsga2.hpp"
#include "sputnik/pareto.hpp"
#include "sputnik/plot.hpp"

namespace sputnik::bench {

using Json = nlohmann::ordered_json;
using cloud::CloudProblem;
using cloud::PlacementGenome;

std::string_view to_string(Algorithm a) { return a == Algorithm::Nsga2 ? "nsga2" : "eps-moea"; }

Algorithm parse_algorithm(std::string_view name) {
    if (name == "nsga2") return Algorithm::Nsga2;
    if (name == "eps-moea") return Algorithm::EpsMoea;
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected nsga2 or eps-moea)");
}

cloud::CloudInstance InstanceSource::resolve() const {
    if (path) return cloud::load_instance(*path);
    return cloud::random_instance(generated.vms, generated.components, generated.public_fraction, generated.seed,
                                  generated.params);
}

void RunConfig::validate() const {
    auto probability = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };
    probability(mutation_probability, "mutation_probability");
    probability(crossover_probability, "crossover_probability");
    probability(exploration_floor, "exploration_floor");
    if (population_size < 1) throw ConfigError("population_size must be at least 1");
    if (generations < 1) throw ConfigError("generations must be at least 1");
    if (algorithm == Algorithm::EpsMoea) validate_epsilon(epsilon);
    if (!instance.path) {
        if (instance.generated.vms < 1 || instance.generated.components < 1) {
            throw ConfigError("generated instance needs at least one VM and one component");
        }
        probability(instance.generated.public_fraction, "public_fraction");
    }
}

// Config files ---------------------------------------------------------------

namespace {

const std::set<std::string> kRunKeys = {"algorithm", "strategy", "population_size", "generations",
                                        "mutation_probability", "crossover_probability", "exploration_floor",
                                        "epsilon", "instance", "seed", "threads"};
const std::set<std::string> kCompareKeys = {"strategies", "algorithms", "repeats", "threshold_fraction",
                                            "table_generation", "stagnation_window", "stagnation_cap", "jobs",
                                            "reference_generations"};

Json parse_config(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kRunKeys.contains(key) && !kCompareKeys.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return j;
}

template <class T>
void read_if(const Json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

RunConfig run_config_from_json(std::string_view text, const std::filesystem::path& base_dir) {
    const Json j = parse_config(text);
    RunConfig c;
    std::string name;
    if (j.contains("algorithm")) {
        read_if(j, "algorithm", name);
        c.algorithm = parse_algorithm(name);
    }
    if (j.contains("strategy")) {
        read_if(j, "strategy", name);
        c.strategy = parse_strategy(name);
    }
    read_if(j, "population_size", c.population_size);
    read_if(j, "generations", c.generations);
    read_if(j, "mutation_probability", c.mutation_probability);
    read_if(j, "crossover_probability", c.crossover_probability);
    read_if(j, "exploration_floor", c.exploration_floor);
    read_if(j, "epsilon", c.epsilon);
    read_if(j, "seed", c.seed);
    read_if(j, "threads", c.threads);
    if (j.contains("instance")) {
        const auto& inst = j.at("instance");
        if (inst.is_string()) {
            std::filesystem::path p = inst.get<std::string>();
            c.instance.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        } else if (inst.is_object()) {
            auto& g = c.instance.generated;
            read_if(inst, "vms", g.vms);
            read_if(inst, "components", g.components);
            read_if(inst, "public_fraction", g.public_fraction);
            read_if(inst, "seed", g.seed);
            read_if(inst, "latency_min_ms", g.params.latency_min_ms);
            read_if(inst, "latency_max_ms", g.params.latency_max_ms);
            read_if(inst, "cost_private", g.params.cost_private);
            read_if(inst, "cost_public", g.params.cost_public);
            read_if(inst, "remote_penalty_ms", g.params.remote_penalty_ms);
        } else {
            throw ConfigError("config key 'instance' must be a file path or generator parameters");
        }
    }
    c.validate();
    return c;
}

CompareOptions compare_options_from_json(std::string_view text) {
    const Json j = parse_config(text);
    CompareOptions o;
    if (j.contains("strategies")) {
        std::vector<std::string> names;
        read_if(j, "strategies", names);
        o.strategies.clear();
        for (const auto& n : names) o.strategies.push_back(parse_strategy(n));
    }
    if (j.contains("algorithms")) {
        std::vector<std::string> names;
        read_if(j, "algorithms", names);
        o.algorithms.clear();
        for (const auto& n : names) o.algorithms.push_back(parse_algorithm(n));
    }
    read_if(j, "repeats", o.repeats);
    read_if(j, "threshold_fraction", o.threshold_fraction);
    read_if(j, "table_generation", o.table_generation);
    if (j.contains("stagnation_window")) {
        std::size_t w = 0;
        read_if(j, "stagnation_window", w);
        if (w < 1) throw ConfigError("stagnation_window must be at least 1");
        o.stagnation_window = w;
    }
    read_if(j, "stagnation_cap", o.stagnation_cap);
    if (j.contains("reference_generations")) {
        std::size_t g = 0;
        read_if(j, "reference_generations", g);
        if (g < 1) throw ConfigError("reference_generations must be at least 1");
        o.reference_generations = g;
    }
    read_if(j, "jobs", o.jobs);
    if (o.strategies.empty() || o.algorithms.empty()) throw ConfigError("nothing to compare");
    if (!(o.threshold_fraction > 0.0 && o.threshold_fraction <= 1.0)) {
        throw ConfigError("threshold_fraction must lie in (0, 1]");
    }
    return o;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    try {
        return run_config_from_json(read_text(path), path.parent_path());
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.rfind(path.string(), 0) == 0) throw;
        throw ConfigError(path.string() + ": " + what);
    }
}

CompareOptions load_compare_options(const std::filesystem::path& path) {
    try {
        return compare_options_from_json(read_text(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string run_config_to_json(const RunConfig& c) {
    Json j;
    j["algorithm"] = std::string(to_string(c.algorithm));
    j["strategy"] = std::string(to_string(c.strategy));
    j["population_size"] = c.population_size;
    j["generations"] = c.generations;
    j["mutation_probability"] = c.mutation_probability;
    j["crossover_probability"] = c.crossover_probability;
    j["exploration_floor"] = c.exploration_floor;
    j["epsilon"] = c.epsilon;
    if (c.instance.path) {
        j["instance"] = c.instance.path->string();
    } else {
        const auto& g = c.instance.generated;
        j["instance"] = {{"vms", g.vms},
                         {"components", g.components},
                         {"public_fraction", g.public_fraction},
                         {"seed", g.seed},
                         {"latency_min_ms", g.params.latency_min_ms},
                         {"latency_max_ms", g.params.latency_max_ms},
                         {"cost_private", g.params.cost_private},
                         {"cost_public", g.params.cost_public},
                         {"remote_penalty_ms", g.params.remote_penalty_ms}};
    }
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

// Runs -----------------------------------------------------------------------

std::vector<double> RunTrace::hypervolumes() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.hypervolume);
    return out;
}

namespace {

/// One optimization run driven a generation at a time.
class RunSession {
public:
    RunSession(const RunConfig& config, const cloud::CloudInstance& instance)
        : config_(config), problem_(instance) {
        config.validate();
        const auto ids = problem_.mutation_operators().ids();
        selector_ = std::make_unique<SputnikSelector>(ids, config.strategy, config.exploration_floor,
                                                      mix_seed(config.seed ^ 0x5e1ec7095e1ec709ULL));
        const VariationConfig variation{config.crossover_probability, config.mutation_probability,
                                        std::max<std::size_t>(1, config.threads)};
        Rng rng = make_stream(config.seed, 0);
        if (config.algorithm == Algorithm::Nsga2) {
            nsga2_.emplace(problem_, *selector_, variation, std::move(rng));
            population_ = nsga2_->initialize(config.population_size);
        } else {
            eps_.emplace(problem_, *selector_, variation, config.epsilon, std::move(rng));
            state_ = eps_->initialize(config.population_size);
        }
    }

    RunTrace empty_trace() const {
        RunTrace t;
        t.algorithm = config_.algorithm;
        t.strategy = config_.strategy;
        t.seed = config_.seed;
        t.objective_names = problem_.objective_names();
        t.operator_ids = problem_.mutation_operators().ids();
        return t;
    }

    GenerationRow advance() {
        GenerationRow row;
        row.generation = generation_++;
        const Population<PlacementGenome>* pop = nullptr;
        if (nsga2_) {
            population_ = nsga2_->generation(population_);
            row.mutations = nsga2_->last_mutations();
            pop = &population_;
            const auto objectives = population_.objectives();
            for (std::size_t i : nondominated_indices(objectives)) row.front.push_back(objectives[i]);
        } else {
            eps_->generation(state_);
            row.mutations = eps_->last_mutations();
            pop = &state_.population;
            row.front = state_.archive_objectives();
        }
        const auto objectives = pop->objectives();
        const std::size_t m = objectives.front().size();
        row.best.assign(m, std::numeric_limits<double>::infinity());
        row.mean.assign(m, 0.0);
        for (const auto& f : objectives) {
            for (std::size_t i = 0; i < m; ++i) {
                row.best[i] = std::min(row.best[i], f[i]);
                row.mean[i] += f[i];
            }
        }
        for (auto& v : row.mean) v /= static_cast<double>(objectives.size());
        const auto& snapshot = selector_->last_generation();
        row.selections = snapshot.selections;
        row.delta_impact = snapshot.delta_impact;
        return row;
    }

    const CloudProblem& problem() const { return problem_; }

private:
    RunConfig config_;
    CloudProblem problem_;
    std::unique_ptr<SputnikSelector> selector_;
    std::optional<Nsga2<CloudProblem>> nsga2_;
    std::optional<EpsMoea<CloudProblem>> eps_;
    Population<PlacementGenome> population_;
    EpsMoeaState<PlacementGenome> state_;
    std::size_t generation_ = 0;
};

} // namespace

ObjectiveBounds observed_bounds(std::span<const RunTrace> traces) {
    RunningBounds running;
    for (const auto& t : traces) {
        for (const auto& row : t.rows) {
            for (const auto& p : row.front) running.observe(p);
        }
    }
    ObjectiveBounds b = running.bounds();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!(b.upper[i] > b.lower[i])) b.upper[i] = b.lower[i] + 1.0;
    }
    return b;
}

void rescore(RunTrace& trace, const ObjectiveBounds& bounds) {
    trace.clamped = 0;
    for (auto& row : trace.rows) {
        const auto normalized = normalize_front(row.front, bounds);
        trace.clamped += normalized.clamped;
        const std::vector<double> ref(bounds.size(), kNormalizedReference);
        row.hypervolume = hypervolume_2d(normalized.points, ref);
    }
}

RunTrace run_experiment(const RunConfig& config) { return run_experiment(config, config.instance.resolve()); }

RunTrace run_experiment(const RunConfig& config, const cloud::CloudInstance& instance) {
    RunSession session(config, instance);
    RunTrace trace = session.empty_trace();
    trace.rows.reserve(config.generations);
    for (std::size_t g = 0; g < config.generations; ++g) trace.rows.push_back(session.advance());
    rescore(trace, observed_bounds(std::span<const RunTrace>(&trace, 1)));
    return trace;
}

RunTrace stagnation_run(const RunConfig& config, std::size_t window, std::size_t cap) {
    return stagnation_run(config, config.instance.resolve(), window, cap);
}

RunTrace stagnation_run(const RunConfig& config, const cloud::CloudInstance& instance, std::size_t window,
                        std::size_t cap) {
    if (window < 1) throw UsageError("stagnation window must be at least 1");
    if (cap < 1) throw UsageError("stagnation cap must be at least 1");
    RunSession session(config, instance);
    const ObjectiveBounds judge = session.problem().feasible_bounds();
    RunTrace trace = session.empty_trace();
    std::size_t unchanged = 0;
    double previous = 0.0;
    while (trace.rows.size() < cap) {
        GenerationRow row = session.advance();
        const double hv = normalized_hypervolume(row.front, judge);
        if (!trace.rows.empty() && std::abs(hv - previous) <= 1e-9) {
            ++unchanged;
        } else {
            unchanged = 0;
        }
        previous = hv;
        trace.rows.push_back(std::move(row));
        if (unchanged >= window) break;
    }
    trace.hit_cap = unchanged < window;
    rescore(trace, observed_bounds(std::span<const RunTrace>(&trace, 1)));
    return trace;
}

std::string trace_to_csv(const RunTrace& trace) {
    std::string out = "generation,hypervolume";
    for (const auto& n : trace.objective_names) out += ",best_" + n;
    for (const auto& n : trace.objective_names) out += ",mean_" + n;
    out += ",mutations";
    for (const auto& id : trace.operator_ids) out += ",sel_" + id;
    for (const auto& id : trace.operator_ids) out += ",delta_" + id;
    out += '\n';
    for (const auto& row : trace.rows) {
        out += std::to_string(row.generation);
        out += ',' + format_number(row.hypervolume);
        for (double v : row.best) out += ',' + format_number(v);
        for (double v : row.mean) out += ',' + format_number(v);
        out += ',' + std::to_string(row.mutations);
        for (auto s : row.selections) out += ',' + std::to_string(s);
        for (const auto& d : row.delta_impact) out += ',' + format_number(d);
        out += '\n';
    }
    return out;
}

// Comparison -----------------------------------------------------------------

Quartiles quartiles(std::vector<double> values) {
    if (values.empty()) throw UsageError("quartiles of an empty sample");
    std::sort(values.begin(), values.end());
    auto at = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        if (lo == hi || values[lo] == values[hi]) return values[lo];
        if (std::isinf(values[hi])) return values[hi];
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {at(0.25), at(0.5), at(0.75)};
}

std::optional<std::size_t> trace_generations_to_threshold(const RunTrace& trace, double threshold) {
    const auto hv = trace.hypervolumes();
    return generations_to_threshold(hv, threshold);
}

std::vector<RunConfig> expand_configs(const RunConfig& base, const CompareOptions& options) {
    std::vector<RunConfig> out;
    for (auto algorithm : options.algorithms) {
        for (auto strategy : options.strategies) {
            RunConfig c = base;
            c.algorithm = algorithm;
            c.strategy = strategy;
            out.push_back(c);
        }
    }
    return out;
}

namespace {

template <class Job>
void run_parallel(std::size_t count, std::size_t jobs, Job job) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    {
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) job(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = count;
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

double max_hypervolume(const RunTrace& t) {
    double best = 0.0;
    for (const auto& row : t.rows) best = std::max(best, row.hypervolume);
    return best;
}

} // namespace

Comparison compare_strategies(std::span<const RunConfig> configs, const CompareOptions& options) {
    if (configs.empty()) throw UsageError("compare_strategies: no configurations");
    if (options.repeats < 1) throw ConfigError("repeats must be at least 1");

    std::vector<cloud::CloudInstance> instances;
    for (const auto& c : configs) {
        c.validate();
        instances.push_back(c.instance.resolve());
    }

    std::vector<RunConfig> runs;
    std::vector<std::size_t> instance_of;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (std::size_t r = 0; r < options.repeats; ++r) {
            RunConfig c = configs[i];
            c.seed = configs[i].seed + r;
            runs.push_back(c);
            instance_of.push_back(i);
        }
    }

    Comparison cmp;
    cmp.table_generation = options.table_generation;
    cmp.traces.resize(runs.size());
    run_parallel(runs.size(), options.jobs, [&](std::size_t i) {
        cmp.traces[i] = run_experiment(runs[i], instances[instance_of[i]]);
    });
    if (options.reference_generations) {
        std::vector<std::size_t> firsts;
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const bool seen = std::any_of(firsts.begin(), firsts.end(), [&](std::size_t f) {
                return configs[f].algorithm == configs[i].algorithm;
            });
            if (!seen) firsts.push_back(i);
        }
        cmp.reference_traces.resize(firsts.size());
        run_parallel(firsts.size(), options.jobs, [&](std::size_t k) {
            RunConfig c = configs[firsts[k]];
            c.generations = *options.reference_generations;
            cmp.reference_traces[k] = run_experiment(c, instances[firsts[k]]);
        });
    }
    {
        std::vector<RunTrace> all = cmp.traces;
        all.insert(all.end(), cmp.reference_traces.begin(), cmp.reference_traces.end());
        cmp.bounds = observed_bounds(all);
    }
    for (auto& t : cmp.traces) rescore(t, cmp.bounds);
    for (auto& t : cmp.reference_traces) rescore(t, cmp.bounds);

    if (options.stagnation_window) {
        cmp.stagnation_traces.resize(runs.size());
        run_parallel(runs.size(), options.jobs, [&](std::size_t i) {
            cmp.stagnation_traces[i] = stagnation_run(runs[i], instances[instance_of[i]], *options.stagnation_window,
                                                      options.stagnation_cap);
        });
        const auto sbounds = observed_bounds(cmp.stagnation_traces);
        for (auto& t : cmp.stagnation_traces) rescore(t, sbounds);
    }

    for (std::size_t i = 0; i < configs.size(); ++i) {
        SummaryRow row;
        row.algorithm = configs[i].algorithm;
        row.strategy = configs[i].strategy;

        double best = 0.0;
        for (const auto* pool : {&cmp.traces, &cmp.reference_traces}) {
            for (const auto& t : *pool) {
                if (t.algorithm == row.algorithm) best = std::max(best, max_hypervolume(t));
            }
        }
        const double threshold = options.threshold_fraction * best;

        std::vector<double> final_hv;
        std::vector<double> table_hv;
        std::vector<double> gtt;
        std::vector<double> stag_hv;
        for (std::size_t k = 0; k < runs.size(); ++k) {
            if (instance_of[k] != i) continue;
            const auto& t = cmp.traces[k];
            ++row.runs;
            final_hv.push_back(t.rows.back().hypervolume);
            if (options.table_generation >= 1 && t.rows.size() >= options.table_generation) {
                table_hv.push_back(t.rows[options.table_generation - 1].hypervolume);
            }
            const auto g = trace_generations_to_threshold(t, threshold);
            if (!g) ++row.never_reached;
            gtt.push_back(g ? static_cast<double>(*g) : std::numeric_limits<double>::infinity());
            if (!cmp.stagnation_traces.empty()) {
                const auto& s = cmp.stagnation_traces[k];
                stag_hv.push_back(s.rows.back().hypervolume);
                row.stagnation_cap_hits += s.hit_cap ? 1 : 0;
            }
        }
        row.final_hv = quartiles(final_hv);
        if (!table_hv.empty()) row.table_hv = quartiles(table_hv);
        row.generations_to_threshold = quartiles(gtt);
        if (!stag_hv.empty()) row.stagnation_hv = quartiles(stag_hv);
        cmp.rows.push_back(row);
        cmp.thresholds.push_back(threshold);
    }
    return cmp;
}

namespace {

std::string gtt_text(double v) { return std::isinf(v) ? "never" : format_number(v); }

} // namespace

std::string summary_to_csv(const Comparison& cmp) {
    const std::string tg = std::to_string(cmp.table_generation);
    std::string out = "algorithm,strategy,runs,final_hv_median,final_hv_q1,final_hv_q3,hv_at_" + tg +
                      "_median,hv_at_" + tg + "_q1,hv_at_" + tg +
                      "_q3,threshold,gtt_median,gtt_q1,gtt_q3,gtt_never,stagnation_hv_median,stagnation_hv_q1,"
                      "stagnation_hv_q3,stagnation_cap_hits\n";
    for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
        const auto& r = cmp.rows[i];
        out += std::string(to_string(r.algorithm)) + ',' + std::string(to_string(r.strategy)) + ',' +
               std::to_string(r.runs);
        out += ',' + format_number(r.final_hv.median) + ',' + format_number(r.final_hv.q1) + ',' +
               format_number(r.final_hv.q3);
        if (r.table_hv) {
            out += ',' + format_number(r.table_hv->median) + ',' + format_number(r.table_hv->q1) + ',' +
                   format_number(r.table_hv->q3);
        } else {
            out += ",,,";
        }
        out += ',' + format_number(cmp.thresholds[i]);
        out += ',' + gtt_text(r.generations_to_threshold.median) + ',' + gtt_text(r.generations_to_threshold.q1) +
               ',' + gtt_text(r.generations_to_threshold.q3) + ',' + std::to_string(r.never_reached);
        if (r.stagnation_hv) {
            out += ',' + format_number(r.stagnation_hv->median) + ',' + format_number(r.stagnation_hv->q1) + ',' +
                   format_number(r.stagnation_hv->q3) + ',' + std::to_string(r.stagnation_cap_hits);
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
    return out;
}

std::string summary_to_text(const Comparison& cmp) {
    std::ostringstream os;
    auto fixed = [](double v) {
        if (std::isinf(v)) return std::string("never");
        std::ostringstream s;
        s << std::fixed << std::setprecision(4) << v;
        return s.str();
    };
    auto iqr = [&](const Quartiles& q) { return fixed(q.median) + " [" + fixed(q.q1) + ", " + fixed(q.q3) + "]"; };

    os << std::left << std::setw(10) << "algorithm" << std::setw(9) << "strategy" << std::setw(6) << "runs"
       << std::setw(28) << "final HV" << std::setw(28) << ("HV@" + std::to_string(cmp.table_generation))
       << std::setw(30) << "gens to threshold" << "stagnation HV\n";
    for (const auto& r : cmp.rows) {
        os << std::left << std::setw(10) << to_string(r.algorithm) << std::setw(9) << to_string(r.strategy)
           << std::setw(6) << r.runs << std::setw(28) << iqr(r.final_hv) << std::setw(28)
           << (r.table_hv ? iqr(*r.table_hv) : std::string("-"));
        std::ostringstream g;
        g << gtt_text(r.generations_to_threshold.median) << " [" << gtt_text(r.generations_to_threshold.q1) << ", "
          << gtt_text(r.generations_to_threshold.q3) << "]";
        os << std::setw(30) << g.str();
        if (r.stagnation_hv) {
            os << iqr(*r.stagnation_hv) << " cap hits " << r.stagnation_cap_hits;
        } else {
            os << "-";
        }
        os << '\n';
    }
    return os.str();
}

void write_comparison(const Comparison& cmp, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "traces");
    auto write = [](const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw RuntimeFailure(p.string() + ": cannot write");
        out << text;
    };
    auto name = [](const RunTrace& t) {
        return std::string(to_string(t.algorithm)) + "_" + std::string(to_string(t.strategy)) + "_seed" +
               std::to_string(t.seed) + ".csv";
    };
    for (const auto& t : cmp.traces) write(dir / "traces" / name(t), trace_to_csv(t));
    if (!cmp.stagnation_traces.empty()) {
        fs::create_directories(dir / "stagnation");
        for (const auto& t : cmp.stagnation_traces) write(dir / "stagnation" / name(t), trace_to_csv(t));
    }
    if (!cmp.reference_traces.empty()) {
        fs::create_directories(dir / "reference");
        for (const auto& t : cmp.reference_traces) write(dir / "reference" / name(t), trace_to_csv(t));
    }
    write(dir / "summary.csv", summary_to_csv(cmp));
    write(dir / "summary.txt", summary_to_text(cmp));
    emit_plot_data(cmp.traces, dir);
}

} // namespace sputnik::bench

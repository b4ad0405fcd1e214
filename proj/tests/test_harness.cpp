#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sputnik/csv.hpp"
#include "sputnik/errors.hpp"
#include "sputnik/harness.hpp"
#include "sputnik/indicators.hpp"
#include "sputnik/plot.hpp"

using namespace sputnik;
using namespace sputnik::bench;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.population_size = 16;
    c.generations = 12;
    c.instance.generated = {8, 12, 0.5, 11, {}};
    c.seed = 5;
    return c;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("sputnik_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("run config parsing") {
    const auto c = run_config_from_json(R"({"algorithm": "eps-moea", "strategy": "elitist",
        "population_size": 40, "generations": 7, "epsilon": [0.5, 0.5], "seed": 9,
        "instance": {"vms": 5, "components": 6, "public_fraction": 0.2}})");
    CHECK(c.algorithm == Algorithm::EpsMoea);
    CHECK(c.strategy == Strategy::Elitist);
    CHECK(c.population_size == 40);
    CHECK(c.generations == 7);
    CHECK(c.epsilon == std::vector<double>{0.5, 0.5});
    CHECK(c.seed == 9);
    CHECK(c.instance.generated.vms == 5);
    CHECK(c.instance.generated.public_fraction == doctest::Approx(0.2));
    CHECK(c.mutation_probability == 1.0);

    const auto d = run_config_from_json(R"({"instance": "inst.json"})", "/data");
    REQUIRE(d.instance.path);
    CHECK(*d.instance.path == std::filesystem::path("/data/inst.json"));

    const auto round = run_config_from_json(run_config_to_json(c));
    CHECK(run_config_to_json(round) == run_config_to_json(c));
}

TEST_CASE("run config errors") {
    CHECK_THROWS_AS(run_config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(run_config_from_json("[]"), ConfigError);
    CHECK_THROWS_WITH_AS(run_config_from_json(R"({"strategy": "greedy"})"), doctest::Contains("greedy"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(run_config_from_json(R"({"populaton_size": 3})"), doctest::Contains("populaton_size"),
                         ConfigError);
    CHECK_THROWS_AS(run_config_from_json(R"({"generations": "ten"})"), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(R"({"population_size": 0})").validate(), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(R"({"exploration_floor": 1.5})").validate(), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(R"({"algorithm": "eps-moea", "epsilon": [0.1, -1]})").validate(), ConfigError);
    CHECK_THROWS_AS(run_config_from_json(R"({"instance": 3})"), ConfigError);
    CHECK_THROWS_WITH_AS(load_run_config("/nonexistent/run.json"), doctest::Contains("/nonexistent/run.json"),
                         ConfigError);
}

TEST_CASE("a missing instance file is reported with its path") {
    RunConfig c = small_config();
    c.instance.path = "/nonexistent/instance.json";
    CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("/nonexistent/instance.json"), ConfigError);
}

TEST_CASE("compare options parsing") {
    const auto o = compare_options_from_json(R"({"strategies": ["random", "caste"],
        "algorithms": ["nsga2", "eps-moea"], "repeats": 3, "stagnation_window": 5})");
    CHECK(o.strategies == std::vector<Strategy>{Strategy::Random, Strategy::Caste});
    CHECK(o.algorithms.size() == 2);
    CHECK(o.repeats == 3);
    CHECK(o.stagnation_window == std::optional<std::size_t>{5});
    CHECK(expand_configs(RunConfig{}, o).size() == 4);
    CHECK_THROWS_AS(compare_options_from_json(R"({"strategies": []})"), ConfigError);
    CHECK_THROWS_AS(compare_options_from_json(R"({"threshold_fraction": 0})"), ConfigError);
    CHECK_THROWS_AS(compare_options_from_json(R"({"stagnation_window": 0})"), ConfigError);
    CHECK_THROWS_AS(compare_options_from_json(R"({"reference_generations": 0})"), ConfigError);
    CHECK(compare_options_from_json(R"({"reference_generations": 50})").reference_generations ==
          std::optional<std::size_t>{50});
}

TEST_CASE("a one-generation run has exactly one row") {
    RunConfig c = small_config();
    c.generations = 1;
    const auto t = run_experiment(c);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].generation == 0);
    CHECK(lines_of(trace_to_csv(t)).size() == 2);
}

TEST_CASE("trace rows are consecutive and internally consistent") {
    for (auto algorithm : {Algorithm::Nsga2, Algorithm::EpsMoea}) {
        RunConfig c = small_config();
        c.algorithm = algorithm;
        c.mutation_probability = 0.7;
        const auto t = run_experiment(c);
        REQUIRE(t.rows.size() == c.generations);
        for (std::size_t g = 0; g < t.rows.size(); ++g) {
            const auto& row = t.rows[g];
            CHECK(row.generation == g);
            CHECK(std::accumulate(row.selections.begin(), row.selections.end(), std::size_t{0}) == row.mutations);
            CHECK(row.hypervolume >= 0.0);
            CHECK(row.hypervolume <= kNormalizedReference * kNormalizedReference + 1e-12);
            CHECK_FALSE(row.front.empty());
            for (std::size_t i = 0; i < 2; ++i) CHECK(row.best[i] <= row.mean[i] + 1e-9);
        }
        CHECK(t.clamped == 0);
    }
}

TEST_CASE("trace CSV is reproducible and has a stable header") {
    const RunConfig c = small_config();
    const auto a = trace_to_csv(run_experiment(c));
    const auto b = trace_to_csv(run_experiment(c));
    CHECK(a == b);
    RunConfig threaded = c;
    threaded.threads = 3;
    CHECK(trace_to_csv(run_experiment(threaded)) == a);
    RunConfig other = c;
    other.seed = 6;
    CHECK(trace_to_csv(run_experiment(other)) != a);

    const auto header = lines_of(a).front();
    CHECK(header ==
          "generation,hypervolume,best_cost,best_latency,mean_cost,mean_latency,mutations,"
          "sel_AddReplica,sel_RemoveReplica,sel_MoveComponent,sel_MigrateToPublic,sel_MigrateToPrivate,"
          "sel_ConsolidateVM,delta_AddReplica,delta_RemoveReplica,delta_MoveComponent,"
          "delta_MigrateToPublic,delta_MigrateToPrivate,delta_ConsolidateVM");
    for (const auto& line : lines_of(a)) CHECK(split_csv_line(line).size() == 19);
}

TEST_CASE("the random strategy spreads selections uniformly") {
    RunConfig c = small_config();
    c.strategy = Strategy::Random;
    c.population_size = 50;
    c.generations = 100;
    const auto t = run_experiment(c);
    std::vector<double> counts(6, 0.0);
    double total = 0.0;
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < 6; ++k) counts[k] += static_cast<double>(row.selections[k]);
        total += static_cast<double>(row.mutations);
    }
    for (double n : counts) CHECK(std::abs(n / total - 1.0 / 6.0) <= 0.02);
}

TEST_CASE("stagnation detection") {
    SUBCASE("a frozen population stops after exactly one window") {
        RunConfig c = small_config();
        c.mutation_probability = 0.0;
        c.crossover_probability = 0.0;
        const auto t = stagnation_run(c, 7, 100);
        CHECK(t.rows.size() == 8);
        CHECK_FALSE(t.hit_cap);
        for (const auto& row : t.rows) CHECK(row.mutations == 0);
    }
    SUBCASE("the cap is reported") {
        const auto t = stagnation_run(small_config(), 1000, 5);
        CHECK(t.rows.size() == 5);
        CHECK(t.hit_cap);
    }
    CHECK_THROWS_AS(stagnation_run(small_config(), 0, 5), UsageError);
}

TEST_CASE("quartiles") {
    const auto q = quartiles({4, 1, 3, 2, 5});
    CHECK(q.q1 == 2.0);
    CHECK(q.median == 3.0);
    CHECK(q.q3 == 4.0);
    const auto even = quartiles({1, 2, 3, 4});
    CHECK(even.q1 == doctest::Approx(1.75));
    CHECK(even.median == doctest::Approx(2.5));
    CHECK(even.q3 == doctest::Approx(3.25));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(std::isinf(quartiles({1, 2, inf, inf}).median));
    CHECK(quartiles({7}).median == 7.0);
    CHECK_THROWS_AS(quartiles({}), UsageError);
}

TEST_CASE("strategy comparison") {
    RunConfig base = small_config();
    CompareOptions o;
    o.algorithms = {Algorithm::Nsga2, Algorithm::EpsMoea};
    o.repeats = 3;
    o.table_generation = 10;
    o.stagnation_window = 3;
    o.stagnation_cap = 30;
    o.jobs = 2;
    const auto configs = expand_configs(base, o);
    const auto cmp = compare_strategies(configs, o);
    CHECK(cmp.traces.size() == 18);
    CHECK(cmp.stagnation_traces.size() == 18);
    REQUIRE(cmp.rows.size() == 6);
    for (const auto& row : cmp.rows) {
        CHECK(row.runs == 3);
        CHECK(row.table_hv.has_value());
        CHECK(row.stagnation_hv.has_value());
        CHECK(row.final_hv.q1 <= row.final_hv.median);
        CHECK(row.final_hv.median <= row.final_hv.q3);
    }
    for (std::size_t i = 0; i < cmp.traces.size(); ++i) CHECK(cmp.traces[i].seed == base.seed + i % 3);

    // Same batch through a single worker gives the same summary.
    o.jobs = 1;
    CHECK(summary_to_csv(compare_strategies(configs, o)) == summary_to_csv(cmp));
    CHECK(lines_of(summary_to_csv(cmp)).size() == 7);
    CHECK(summary_to_text(cmp).find("caste") != std::string::npos);

    // Identical configurations under different labels produce identical statistics.
    std::vector<RunConfig> twins(2, base);
    twins[0].strategy = twins[1].strategy = Strategy::Elitist;
    CompareOptions t;
    t.repeats = 2;
    t.jobs = 1;
    const auto same = compare_strategies(twins, t);
    CHECK(same.rows[0].final_hv.median == same.rows[1].final_hv.median);
    CHECK(same.rows[0].generations_to_threshold.median == same.rows[1].generations_to_threshold.median);

    const auto dir = scratch_dir("compare");
    write_comparison(cmp, dir);
    for (const char* f : {"summary.csv", "summary.txt", "plot_data.csv", "plot_summary.csv", "hypervolume.svg"}) {
        CHECK(std::filesystem::exists(dir / f));
    }
    CHECK(std::distance(std::filesystem::directory_iterator(dir / "traces"), {}) == 18);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a long reference run raises the best hypervolume used for the threshold") {
    RunConfig base = small_config();
    base.generations = 5;
    CompareOptions o;
    o.strategies = {Strategy::Random};
    o.repeats = 2;
    o.jobs = 1;
    const auto plain = compare_strategies(expand_configs(base, o), o);
    CHECK(plain.reference_traces.empty());
    o.reference_generations = 60;
    const auto with_ref = compare_strategies(expand_configs(base, o), o);
    REQUIRE(with_ref.reference_traces.size() == 1);
    CHECK(with_ref.reference_traces[0].rows.size() == 60);
    double ref_best = 0.0;
    for (const auto& row : with_ref.reference_traces[0].rows) ref_best = std::max(ref_best, row.hypervolume);
    double batch_best = 0.0;
    for (const auto& t : with_ref.traces) {
        for (const auto& row : t.rows) batch_best = std::max(batch_best, row.hypervolume);
    }
    CHECK(with_ref.thresholds[0] == doctest::Approx(0.9 * std::max(ref_best, batch_best)));
}

TEST_CASE("plot data") {
    RunConfig c = small_config();
    c.generations = 300;
    c.population_size = 8;
    c.instance.generated = {4, 5, 0.5, 1, {}};
    std::vector<RunTrace> traces;
    for (auto s : {Strategy::Random, Strategy::Elitist, Strategy::Caste}) {
        c.strategy = s;
        traces.push_back(run_experiment(c));
    }
    const auto points = plot_points(traces);
    CHECK(points.size() == 900);
    CHECK(parse_plot_data_csv(plot_data_csv(points)).size() == 900);
    const auto reparsed = parse_plot_data_csv(plot_data_csv(points));
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(reparsed[i].strategy == points[i].strategy);
        CHECK(reparsed[i].generation == points[i].generation);
        CHECK(reparsed[i].hypervolume == points[i].hypervolume);
    }

    const auto series = summarize_series(points);
    REQUIRE(series.size() == 3);
    for (const auto& s : series) CHECK(s.median.size() == 300);
    CHECK(render_svg(series, "hv").find("<svg") == 0);

    traces[1].rows.clear();
    CHECK_THROWS_AS(plot_points(traces), UsageError);
    CHECK_THROWS_AS(plot_points(std::span<const RunTrace>{}), UsageError);
}

TEST_CASE("series summaries match per-generation medians and means") {
    RunConfig c = small_config();
    c.algorithm = Algorithm::EpsMoea;
    c.generations = 40;
    std::vector<RunTrace> traces;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        c.seed = s;
        traces.push_back(run_experiment(c));
    }
    const auto series = summarize_series(plot_points(traces));
    REQUIRE(series.size() == 1);
    CHECK(series[0].label == "eps-moea/caste");
    for (std::size_t g = 0; g < 40; ++g) {
        std::vector<double> hv;
        for (const auto& t : traces) hv.push_back(t.rows[g].hypervolume);
        std::sort(hv.begin(), hv.end());
        CHECK(series[0].median[g] == hv[1]);
        CHECK(series[0].mean[g] == doctest::Approx((hv[0] + hv[1] + hv[2]) / 3.0));
    }
}

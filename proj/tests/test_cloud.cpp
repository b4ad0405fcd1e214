#include <doctest.h>

#include <random>

#include "sputnik/cloud.hpp"
#include "sputnik/errors.hpp"
#include "sputnik/pareto.hpp"

using namespace sputnik;
using namespace sputnik::cloud;

namespace {

CloudInstance three_vm_instance() {
    CloudInstance inst;
    inst.vms = {{"vm0", Location::Private, 10.0}, {"vm1", Location::Private, 30.0}, {"vm2", Location::Public, 2.0}};
    inst.components = {{"c0"}, {"c1"}};
    inst.cost_private = 1.0;
    inst.cost_public = 0.4;
    inst.remote_penalty_ms = 40.0;
    return inst;
}

PlacementGenome all_on(const CloudInstance& inst, std::uint32_t vm) {
    return PlacementGenome{std::vector<std::vector<std::uint32_t>>(inst.components.size(), {vm})};
}

} // namespace

TEST_CASE("cost sums the prices of active VMs") {
    const auto inst = three_vm_instance();
    CHECK(cost(PlacementGenome{{{0}, {2}}}, inst) == doctest::Approx(1.4));
    CHECK(cost(all_on(inst, 0), inst) == doctest::Approx(1.0));
    CHECK(cost(PlacementGenome{{{0, 1}, {2}}}, inst) == doctest::Approx(2.4));
    CHECK_THROWS_AS(cost(PlacementGenome{{{0}}}, inst), UsageError);
    CHECK_THROWS_AS(cost(PlacementGenome{{{0}, {}}}, inst), UsageError);
    CHECK_THROWS_AS(cost(PlacementGenome{{{0}, {5}}}, inst), UsageError);
    CHECK_THROWS_AS(cost(PlacementGenome{{{1, 0}, {2}}}, inst), UsageError);
}

TEST_CASE("latency is the mean of per-component best replica latency") {
    auto inst = three_vm_instance();
    // vm2 is public: effective 2 + 40 = 42.
    CHECK(latency(PlacementGenome{{{0, 2}, {0, 2}}}, inst) == doctest::Approx(10.0));
    CHECK(latency(PlacementGenome{{{0}, {1}}}, inst) == doctest::Approx(20.0));

    CloudInstance pub;
    pub.vms = {{"vm0", Location::Public, 5.0}};
    pub.components = {{"c0"}, {"c1"}, {"c2"}};
    CHECK(latency(all_on(pub, 0), pub) == doctest::Approx(45.0));
}

TEST_CASE("generated instances") {
    const auto a = random_instance(100, 50, 0.5, 7);
    const auto b = random_instance(100, 50, 0.5, 7);
    CHECK(a == b);
    CHECK(std::count_if(a.vms.begin(), a.vms.end(), [](const VmSpec& v) { return v.location == Location::Public; }) == 50);
    for (const auto& vm : a.vms) {
        CHECK(vm.base_latency_ms >= 1.0);
        CHECK(vm.base_latency_ms <= 20.0);
    }
    CHECK(a.cost_private == 1.0);
    CHECK(a.cost_public == 0.4);
    CHECK(a.remote_penalty_ms == 40.0);
    CHECK(random_instance(10, 5, 0.35, 1).vms.back().location == Location::Public);

    const auto priv = random_instance(10, 20, 0.0, 3);
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto g = random_genome(priv, rng);
        CHECK(migrate_to_public(g, priv, rng) == g);
    }

    const auto tiny = random_instance(1, 3, 0.0, 42);
    const auto g = random_genome(tiny, 9);
    CHECK(g == all_on(tiny, 0));
    CHECK(cost(g, tiny) == 1.0);

    CHECK_THROWS_AS(random_instance(0, 3, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(random_instance(3, 3, 1.5, 1), ConfigError);
}

TEST_CASE("random genomes place every component exactly once") {
    const auto inst = random_instance(30, 60, 0.5, 7);
    const auto g = random_genome(inst, 11);
    CHECK(is_valid(g, inst));
    for (const auto& r : g.placements) CHECK(r.size() == 1);
    CHECK(random_genome(inst, 11) == g);
    CHECK(random_genome(inst, 12) != g);
}

TEST_CASE("operators are inapplicable in degenerate cases") {
    const auto inst = random_instance(6, 10, 0.5, 1);
    Rng rng(3);
    const auto single = random_genome(inst, rng);
    CHECK(remove_replica(single, inst, rng) == single);

    const auto one_vm = random_instance(1, 4, 0.0, 1);
    const auto g = random_genome(one_vm, rng);
    CHECK(add_replica(g, one_vm, rng) == g);
    CHECK(move_component(g, one_vm, rng) == g);
    CHECK(consolidate_vm(g, one_vm, rng) == g);
    CHECK(migrate_to_private(g, one_vm, rng) == g);
}

TEST_CASE("every operator maps valid genomes to valid genomes") {
    std::mt19937_64 meta(17);
    auto pool = operator_set(std::make_shared<const CloudInstance>(random_instance(12, 20, 0.5, 5)));
    const auto inst = random_instance(12, 20, 0.5, 5);
    Rng rng(99);
    std::size_t checks = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        PlacementGenome g = random_genome(inst, rng);
        // Random walk so genomes with replicas and mixed locations are covered.
        const int steps = static_cast<int>(meta() % 8);
        for (int s = 0; s < steps; ++s) g = pool[meta() % pool.size()].apply(g, rng);
        REQUIRE(is_valid(g, inst));
        for (std::size_t op = 0; op < pool.size(); ++op) {
            CHECK(is_valid(pool[op].apply(g, rng), inst));
            ++checks;
        }
    }
    CHECK(checks == 60000);
    CHECK(pool.ids() == std::vector<std::string>{"AddReplica", "RemoveReplica", "MoveComponent", "MigrateToPublic",
                                                 "MigrateToPrivate", "ConsolidateVM"});
}

TEST_CASE("objective effects of individual operators") {
    const auto inst = random_instance(10, 15, 0.4, 21);
    Rng rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        auto g = random_genome(inst, rng);
        for (int s = 0; s < static_cast<int>(rng() % 4); ++s) g = add_replica(g, inst, rng);

        const auto added = add_replica(g, inst, rng);
        CHECK(latency(added, inst) <= latency(g, inst) + 1e-12);
        // If the new replica landed on an already-active VM the cost is unchanged.
        std::vector<bool> active(inst.vms.size(), false);
        for (const auto& r : g.placements) {
            for (auto vm : r) active[vm] = true;
        }
        bool new_vm = false;
        for (std::size_t c = 0; c < g.placements.size(); ++c) {
            for (auto vm : added.placements[c]) {
                if (!std::binary_search(g.placements[c].begin(), g.placements[c].end(), vm)) new_vm = !active[vm];
            }
        }
        if (!new_vm) CHECK(cost(added, inst) == doctest::Approx(cost(g, inst)));

        const auto consolidated = consolidate_vm(g, inst, rng);
        CHECK(cost(consolidated, inst) <= cost(g, inst) + 1e-12);

        CHECK(cost(g, inst) == cost(g, inst));
        CHECK(latency(g, inst) == latency(g, inst));
    }
}

TEST_CASE("consolidation empties the least loaded active VM") {
    const auto inst = three_vm_instance();
    Rng rng(1);
    const PlacementGenome g{{{0}, {1}}};
    const auto out = consolidate_vm(g, inst, rng);
    CHECK(is_valid(out, inst));
    CHECK(cost(out, inst) == doctest::Approx(1.0));
}

TEST_CASE("crossover exchanges whole replica sets") {
    const auto inst = random_instance(8, 10, 0.5, 2);
    Rng rng(4);
    const auto a = random_genome(inst, rng);
    const auto b = add_replica(random_genome(inst, rng), inst, rng);

    const auto same = crossover(a, a, rng);
    CHECK(same.first == a);
    CHECK(same.second == a);

    const auto unchanged = crossover_with_mask(a, b, std::vector<bool>(10, false));
    CHECK(unchanged.first == a);
    CHECK(unchanged.second == b);

    const auto swapped = crossover_with_mask(a, b, std::vector<bool>(10, true));
    CHECK(swapped.first == b);
    CHECK(swapped.second == a);

    Rng r1(77), r2(77);
    const auto x = crossover(a, b, r1);
    const auto y = crossover(a, b, r2);
    CHECK(x == y);
    CHECK(is_valid(x.first, inst));
    CHECK(is_valid(x.second, inst));
    for (std::size_t c = 0; c < 10; ++c) {
        const bool kept = x.first.placements[c] == a.placements[c] && x.second.placements[c] == b.placements[c];
        const bool swap = x.first.placements[c] == b.placements[c] && x.second.placements[c] == a.placements[c];
        CHECK((kept || swap));
    }
    CHECK_THROWS_AS(crossover_with_mask(a, b, std::vector<bool>(3, false)), UsageError);
}

TEST_CASE("objectives conflict between all-private and all-public placements") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto inst = random_instance(10 + seed, 20, 0.5, seed);
        const auto priv = all_on(inst, 0);
        const auto pub = all_on(inst, static_cast<std::uint32_t>(inst.vms.size() - 1));
        const auto fp = evaluate(priv, inst);
        const auto fq = evaluate(pub, inst);
        const std::vector<double> p{fp.cost, fp.latency}, q{fq.cost, fq.latency};
        CHECK_FALSE(dominates(p, q));
        CHECK_FALSE(dominates(q, p));
    }
}

TEST_CASE("instance and genome JSON round-trip bit-exactly") {
    const auto inst = random_instance(7, 9, 0.3, 123);
    const auto text = instance_to_json(inst);
    const auto back = instance_from_json(text);
    CHECK(back == inst);
    CHECK(instance_to_json(back) == text);
    CHECK(text.find("\"remote_penalty_ms\": 40.0") != std::string::npos);

    Rng rng(8);
    auto g = random_genome(inst, rng);
    for (int i = 0; i < 6; ++i) g = add_replica(g, inst, rng);
    const auto gtext = genome_to_json(g, inst);
    CHECK(genome_from_json(gtext, inst) == g);
    CHECK(genome_to_json(genome_from_json(gtext, inst), inst) == gtext);

    const std::string handwritten =
        R"({"vms":[{"id":"a","location":"private","base_latency_ms":5.0},{"id":"b","location":"public","base_latency_ms":1.5}],)"
        R"("components":[{"id":"web"},{"id":"db"}],"cost_private":1.0,"cost_public":0.4,"remote_penalty_ms":40.0})";
    const auto small = instance_from_json(handwritten);
    const auto placed = genome_from_json(R"({"placements":{"web":["b","a"],"db":["a"]}})", small);
    CHECK(placed.placements == std::vector<std::vector<std::uint32_t>>{{0, 1}, {0}});
    CHECK(cost(placed, small) == doctest::Approx(1.4));
}

TEST_CASE("malformed JSON is a configuration error") {
    CHECK_THROWS_AS(instance_from_json("{\"vms\": ["), ConfigError);
    CHECK_THROWS_AS(instance_from_json(R"({"vms":[],"components":[{"id":"c"}],"cost_private":1,"cost_public":1,"remote_penalty_ms":1})"),
                    ConfigError);
    CHECK_THROWS_AS(
        instance_from_json(R"({"vms":[{"id":"a","location":"moon","base_latency_ms":1}],"components":[{"id":"c"}],"cost_private":1,"cost_public":1,"remote_penalty_ms":1})"),
        ConfigError);
    const auto inst = three_vm_instance();
    CHECK_THROWS_AS(genome_from_json(R"({"placements":{"c0":["vm0"]}})", inst), ConfigError);
    CHECK_THROWS_AS(genome_from_json(R"({"placements":{"c0":["vm0"],"c1":["vm9"]}})", inst), ConfigError);
    CHECK_THROWS_AS(genome_from_json(R"({"placements":{"c0":["vm0","vm0"],"c1":["vm1"]}})", inst), ConfigError);
    CHECK_THROWS_AS(genome_from_json(R"({"placements":{"c0":[],"c1":["vm1"]}})", inst), ConfigError);
    try {
        load_instance("/nonexistent/instance.json");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/instance.json") != std::string::npos);
    }
}

#include "sputnik/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sputnik/errors.hpp"

namespace sputnik::cloud {

using Json = nlohmann::ordered_json;

std::string_view to_string(Location l) { return l == Location::Public ? "public" : "private"; }

void CloudInstance::validate() const {
    if (vms.empty()) throw ConfigError("instance needs at least one VM");
    if (components.empty()) throw ConfigError("instance needs at least one component");
    if (!(cost_private >= 0.0) || !(cost_public >= 0.0)) throw ConfigError("VM costs must be non-negative");
    if (!(remote_penalty_ms >= 0.0) || !std::isfinite(remote_penalty_ms)) {
        throw ConfigError("remote penalty must be a non-negative number");
    }
    std::set<std::string> ids;
    for (const auto& vm : vms) {
        if (!(vm.base_latency_ms >= 0.0) || !std::isfinite(vm.base_latency_ms)) {
            throw ConfigError("VM '" + vm.id + "' has an invalid base latency");
        }
        if (!ids.insert(vm.id).second) throw ConfigError("duplicate VM id '" + vm.id + "'");
    }
    ids.clear();
    for (const auto& c : components) {
        if (!ids.insert(c.id).second) throw ConfigError("duplicate component id '" + c.id + "'");
    }
}

double CloudInstance::vm_cost(std::size_t vm) const {
    return vms.at(vm).location == Location::Public ? cost_public : cost_private;
}

double CloudInstance::effective_latency(std::size_t vm) const {
    const auto& spec = vms.at(vm);
    return spec.base_latency_ms + (spec.location == Location::Public ? remote_penalty_ms : 0.0);
}

bool is_valid(const PlacementGenome& genome, const CloudInstance& inst) {
    if (genome.placements.size() != inst.components.size()) return false;
    for (const auto& replicas : genome.placements) {
        if (replicas.empty()) return false;
        for (std::size_t k = 0; k < replicas.size(); ++k) {
            if (replicas[k] >= inst.vms.size()) return false;
            if (k > 0 && replicas[k] <= replicas[k - 1]) return false;
        }
    }
    return true;
}

void check_valid(const PlacementGenome& genome, const CloudInstance& inst) {
    if (genome.placements.size() != inst.components.size()) {
        throw UsageError("genome places " + std::to_string(genome.placements.size()) + " components, instance has " +
                         std::to_string(inst.components.size()));
    }
    for (std::size_t c = 0; c < genome.placements.size(); ++c) {
        const auto& replicas = genome.placements[c];
        if (replicas.empty()) throw UsageError("component " + std::to_string(c) + " is not placed on any VM");
        for (std::size_t k = 0; k < replicas.size(); ++k) {
            if (replicas[k] >= inst.vms.size()) {
                throw UsageError("component " + std::to_string(c) + " placed on unknown VM index " +
                                 std::to_string(replicas[k]));
            }
            if (k > 0 && replicas[k] <= replicas[k - 1]) {
                throw UsageError("component " + std::to_string(c) + " has unsorted or duplicate replicas");
            }
        }
    }
}

double cost(const PlacementGenome& genome, const CloudInstance& inst) {
    check_valid(genome, inst);
    std::vector<bool> active(inst.vms.size(), false);
    for (const auto& replicas : genome.placements) {
        for (auto vm : replicas) active[vm] = true;
    }
    double total = 0.0;
    for (std::size_t vm = 0; vm < active.size(); ++vm) {
        if (active[vm]) total += inst.vm_cost(vm);
    }
    return total;
}

double latency(const PlacementGenome& genome, const CloudInstance& inst) {
    check_valid(genome, inst);
    double sum = 0.0;
    for (const auto& replicas : genome.placements) {
        double best = std::numeric_limits<double>::infinity();
        for (auto vm : replicas) best = std::min(best, inst.effective_latency(vm));
        sum += best;
    }
    return sum / static_cast<double>(genome.placements.size());
}

ObjectivePair evaluate(const PlacementGenome& genome, const CloudInstance& inst) {
    return {cost(genome, inst), latency(genome, inst)};
}

ObjectiveBounds feasible_bounds(const CloudInstance& inst) {
    double cheapest = std::numeric_limits<double>::infinity();
    double total = 0.0;
    double fastest = std::numeric_limits<double>::infinity();
    double slowest = 0.0;
    for (std::size_t vm = 0; vm < inst.vms.size(); ++vm) {
        cheapest = std::min(cheapest, inst.vm_cost(vm));
        total += inst.vm_cost(vm);
        fastest = std::min(fastest, inst.effective_latency(vm));
        slowest = std::max(slowest, inst.effective_latency(vm));
    }
    return {{cheapest, fastest}, {total, slowest}};
}

CloudInstance random_instance(std::size_t n_vms, std::size_t n_components, double public_fraction,
                              std::uint64_t seed, const InstanceParams& params) {
    if (n_vms == 0 || n_components == 0) throw ConfigError("instance needs at least one VM and one component");
    if (!(public_fraction >= 0.0 && public_fraction <= 1.0)) throw ConfigError("public fraction must lie in [0, 1]");
    if (!(params.latency_min_ms <= params.latency_max_ms)) throw ConfigError("latency range is inverted");

    Rng rng(seed);
    std::uniform_real_distribution<double> base(params.latency_min_ms, params.latency_max_ms);
    const auto n_public = static_cast<std::size_t>(std::floor(public_fraction * static_cast<double>(n_vms)));

    CloudInstance inst;
    inst.cost_private = params.cost_private;
    inst.cost_public = params.cost_public;
    inst.remote_penalty_ms = params.remote_penalty_ms;
    for (std::size_t vm = 0; vm < n_vms; ++vm) {
        const auto location = vm < n_vms - n_public ? Location::Private : Location::Public;
        inst.vms.push_back(VmSpec{"vm" + std::to_string(vm), location, base(rng)});
    }
    for (std::size_t c = 0; c < n_components; ++c) inst.components.push_back(ComponentSpec{"c" + std::to_string(c)});
    inst.validate();
    return inst;
}

PlacementGenome random_genome(const CloudInstance& inst, Rng& rng) {
    PlacementGenome g;
    g.placements.reserve(inst.components.size());
    for (std::size_t c = 0; c < inst.components.size(); ++c) {
        g.placements.push_back({static_cast<std::uint32_t>(pick_index(rng, inst.vms.size()))});
    }
    return g;
}

PlacementGenome random_genome(const CloudInstance& inst, std::uint64_t seed) {
    Rng rng(seed);
    return random_genome(inst, rng);
}

namespace {

bool hosts(const std::vector<std::uint32_t>& replicas, std::uint32_t vm) {
    return std::binary_search(replicas.begin(), replicas.end(), vm);
}

void insert_sorted(std::vector<std::uint32_t>& replicas, std::uint32_t vm) {
    replicas.insert(std::upper_bound(replicas.begin(), replicas.end(), vm), vm);
}

void erase_value(std::vector<std::uint32_t>& replicas, std::uint32_t vm) {
    replicas.erase(std::lower_bound(replicas.begin(), replicas.end(), vm));
}

std::vector<std::uint32_t> free_vms(const std::vector<std::uint32_t>& replicas, const CloudInstance& inst,
                                    bool any_location, Location location = Location::Private) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t vm = 0; vm < inst.vms.size(); ++vm) {
        if (hosts(replicas, vm)) continue;
        if (any_location || inst.vms[vm].location == location) out.push_back(vm);
    }
    return out;
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
    return v[pick_index(rng, v.size())];
}

PlacementGenome migrate(const PlacementGenome& g, const CloudInstance& inst, Rng& rng, Location from, Location to) {
    struct Candidate {
        std::size_t component;
        std::uint32_t vm;
    };
    std::vector<Candidate> candidates;
    for (std::size_t c = 0; c < g.placements.size(); ++c) {
        const auto& replicas = g.placements[c];
        if (free_vms(replicas, inst, false, to).empty()) continue;
        for (auto vm : replicas) {
            if (inst.vms[vm].location == from) candidates.push_back({c, vm});
        }
    }
    if (candidates.empty()) return g;
    const auto chosen = pick(candidates, rng);
    PlacementGenome out = g;
    auto& replicas = out.placements[chosen.component];
    const auto target = pick(free_vms(replicas, inst, false, to), rng);
    erase_value(replicas, chosen.vm);
    insert_sorted(replicas, target);
    return out;
}

} // namespace

PlacementGenome add_replica(const PlacementGenome& g, const CloudInstance& inst, Rng& rng) {
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < g.placements.size(); ++c) {
        if (g.placements[c].size() < inst.vms.size()) candidates.push_back(c);
    }
    if (candidates.empty()) return g;
    PlacementGenome out = g;
    auto& replicas = out.placements[pick(candidates, rng)];
    insert_sorted(replicas, pick(free_vms(replicas, inst, true), rng));
    return out;
}

PlacementGenome remove_replica(const PlacementGenome& g, const CloudInstance&, Rng& rng) {
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < g.placements.size(); ++c) {
        if (g.placements[c].size() >= 2) candidates.push_back(c);
    }
    if (candidates.empty()) return g;
    PlacementGenome out = g;
    auto& replicas = out.placements[pick(candidates, rng)];
    replicas.erase(replicas.begin() + static_cast<std::ptrdiff_t>(pick_index(rng, replicas.size())));
    return out;
}

PlacementGenome move_component(const PlacementGenome& g, const CloudInstance& inst, Rng& rng) {
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < g.placements.size(); ++c) {
        if (g.placements[c].size() < inst.vms.size()) candidates.push_back(c);
    }
    if (candidates.empty()) return g;
    PlacementGenome out = g;
    auto& replicas = out.placements[pick(candidates, rng)];
    const auto source = pick(replicas, rng);
    const auto target = pick(free_vms(replicas, inst, true), rng);
    erase_value(replicas, source);
    insert_sorted(replicas, target);
    return out;
}

PlacementGenome migrate_to_public(const PlacementGenome& g, const CloudInstance& inst, Rng& rng) {
    return migrate(g, inst, rng, Location::Private, Location::Public);
}

PlacementGenome migrate_to_private(const PlacementGenome& g, const CloudInstance& inst, Rng& rng) {
    return migrate(g, inst, rng, Location::Public, Location::Private);
}

PlacementGenome consolidate_vm(const PlacementGenome& g, const CloudInstance& inst, Rng& rng) {
    std::vector<std::size_t> load(inst.vms.size(), 0);
    for (const auto& replicas : g.placements) {
        for (auto vm : replicas) ++load[vm];
    }
    std::vector<std::uint32_t> active;
    for (std::uint32_t vm = 0; vm < load.size(); ++vm) {
        if (load[vm] > 0) active.push_back(vm);
    }
    if (active.size() < 2) return g;

    std::size_t lightest = std::numeric_limits<std::size_t>::max();
    for (auto vm : active) lightest = std::min(lightest, load[vm]);
    std::vector<std::uint32_t> tied;
    for (auto vm : active) {
        if (load[vm] == lightest) tied.push_back(vm);
    }
    const auto vacated = pick(tied, rng);
    std::vector<std::uint32_t> receivers;
    for (auto vm : active) {
        if (vm != vacated) receivers.push_back(vm);
    }

    PlacementGenome out = g;
    for (auto& replicas : out.placements) {
        if (!hosts(replicas, vacated)) continue;
        erase_value(replicas, vacated);
        if (replicas.empty()) replicas.push_back(pick(receivers, rng));
    }
    return out;
}

OperatorPool<PlacementGenome> operator_set(std::shared_ptr<const CloudInstance> inst) {
    using Fn = PlacementGenome (*)(const PlacementGenome&, const CloudInstance&, Rng&);
    const std::pair<const char*, Fn> table[] = {
        {"AddReplica", add_replica},           {"RemoveReplica", remove_replica},
        {"MoveComponent", move_component},     {"MigrateToPublic", migrate_to_public},
        {"MigrateToPrivate", migrate_to_private}, {"ConsolidateVM", consolidate_vm},
    };
    OperatorPool<PlacementGenome> pool;
    for (const auto& [id, fn] : table) {
        pool.operators.push_back({id, [inst, fn](const PlacementGenome& g, Rng& rng) { return fn(g, *inst, rng); }});
    }
    return pool;
}

std::pair<PlacementGenome, PlacementGenome> crossover_with_mask(const PlacementGenome& a, const PlacementGenome& b,
                                                                const std::vector<bool>& mask) {
    if (a.placements.size() != b.placements.size() || mask.size() != a.placements.size()) {
        throw UsageError("crossover: parents and mask must cover the same components");
    }
    std::pair<PlacementGenome, PlacementGenome> children{a, b};
    for (std::size_t c = 0; c < mask.size(); ++c) {
        if (mask[c]) std::swap(children.first.placements[c], children.second.placements[c]);
    }
    return children;
}

std::pair<PlacementGenome, PlacementGenome> crossover(const PlacementGenome& a, const PlacementGenome& b, Rng& rng) {
    std::vector<bool> mask(a.placements.size());
    for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = coin(rng, 0.5);
    return crossover_with_mask(a, b, mask);
}

// JSON ---------------------------------------------------------------------

namespace {

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

std::string instance_to_json(const CloudInstance& inst) {
    Json j;
    j["vms"] = Json::array();
    for (const auto& vm : inst.vms) {
        j["vms"].push_back(
            {{"id", vm.id}, {"location", std::string(to_string(vm.location))}, {"base_latency_ms", vm.base_latency_ms}});
    }
    j["components"] = Json::array();
    for (const auto& c : inst.components) j["components"].push_back({{"id", c.id}});
    j["cost_private"] = inst.cost_private;
    j["cost_public"] = inst.cost_public;
    j["remote_penalty_ms"] = inst.remote_penalty_ms;
    return j.dump(2) + "\n";
}

CloudInstance instance_from_json(std::string_view text) {
    const Json j = parse_json(text);
    CloudInstance inst;
    try {
        for (const auto& vm : j.at("vms")) {
            const auto location = vm.at("location").get<std::string>();
            if (location != "private" && location != "public") {
                throw ConfigError("VM location must be 'private' or 'public', got '" + location + "'");
            }
            inst.vms.push_back(VmSpec{vm.at("id").get<std::string>(),
                                      location == "public" ? Location::Public : Location::Private,
                                      vm.at("base_latency_ms").get<double>()});
        }
        for (const auto& c : j.at("components")) inst.components.push_back(ComponentSpec{c.at("id").get<std::string>()});
        inst.cost_private = j.at("cost_private").get<double>();
        inst.cost_public = j.at("cost_public").get<double>();
        inst.remote_penalty_ms = j.at("remote_penalty_ms").get<double>();
    } catch (const Json::exception& e) {
        throw ConfigError(e.what());
    }
    inst.validate();
    return inst;
}

CloudInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open instance file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return instance_from_json(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void save_instance(const CloudInstance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(path.string() + ": cannot write instance file");
    out << instance_to_json(inst);
}

std::string genome_to_json(const PlacementGenome& genome, const CloudInstance& inst) {
    check_valid(genome, inst);
    Json placements = Json::object();
    for (std::size_t c = 0; c < genome.placements.size(); ++c) {
        Json vms = Json::array();
        for (auto vm : genome.placements[c]) vms.push_back(inst.vms[vm].id);
        placements[inst.components[c].id] = std::move(vms);
    }
    Json j;
    j["placements"] = std::move(placements);
    return j.dump(2) + "\n";
}

PlacementGenome genome_from_json(std::string_view text, const CloudInstance& inst) {
    const Json j = parse_json(text);
    PlacementGenome genome;
    genome.placements.resize(inst.components.size());
    try {
        const auto& placements = j.at("placements");
        for (std::size_t c = 0; c < inst.components.size(); ++c) {
            const auto& id = inst.components[c].id;
            if (!placements.contains(id)) throw ConfigError("genome does not place component '" + id + "'");
            for (const auto& vm_id : placements.at(id)) {
                const auto name = vm_id.get<std::string>();
                const auto it = std::find_if(inst.vms.begin(), inst.vms.end(),
                                             [&](const VmSpec& vm) { return vm.id == name; });
                if (it == inst.vms.end()) throw ConfigError("genome references unknown VM '" + name + "'");
                const auto index = static_cast<std::uint32_t>(it - inst.vms.begin());
                auto& replicas = genome.placements[c];
                if (hosts(replicas, index)) throw ConfigError("component '" + id + "' lists VM '" + name + "' twice");
                insert_sorted(replicas, index);
            }
        }
        if (placements.size() != inst.components.size()) throw ConfigError("genome places unknown components");
    } catch (const Json::exception& e) {
        throw ConfigError(e.what());
    }
    if (!is_valid(genome, inst)) throw ConfigError("genome violates placement invariants");
    return genome;
}

// Problem adapter -----------------------------------------------------------

CloudProblem::CloudProblem(CloudInstance inst) : inst_(std::make_shared<const CloudInstance>(std::move(inst))) {
    inst_->validate();
}

ObjectiveVector CloudProblem::evaluate(const Genome& g) const {
    const auto f = cloud::evaluate(g, *inst_);
    return {f.cost, f.latency};
}

} // namespace sputnik::cloud

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sputnik/objectives.hpp"
#include "sputnik/population.hpp"
#include "sputnik/random.hpp"

/// Hybrid-cloud placement of software components onto private and public VMs,
/// minimizing (cost, latency).
namespace sputnik::cloud {

enum class Location { Private, Public };

std::string_view to_string(Location l);

struct VmSpec {
    std::string id;
    Location location = Location::Private;
    double base_latency_ms = 0.0;

    bool operator==(const VmSpec&) const = default;
};

struct ComponentSpec {
    std::string id;

    bool operator==(const ComponentSpec&) const = default;
};

struct CloudInstance {
    std::vector<VmSpec> vms;
    std::vector<ComponentSpec> components;
    double cost_private = 1.0;
    double cost_public = 0.4;
    double remote_penalty_ms = 40.0;

    /// Throws ConfigError when the instance is malformed.
    void validate() const;

    double vm_cost(std::size_t vm) const;
    /// Latency seen by a component hosted on `vm`: base latency plus the remote
    /// penalty for public VMs.
    double effective_latency(std::size_t vm) const;

    bool operator==(const CloudInstance&) const = default;
};

/// For each component, the sorted, duplicate-free set of VM indices hosting it.
struct PlacementGenome {
    std::vector<std::vector<std::uint32_t>> placements;

    bool operator==(const PlacementGenome&) const = default;
};

bool is_valid(const PlacementGenome& genome, const CloudInstance& inst);
/// Throws UsageError describing the first violated invariant.
void check_valid(const PlacementGenome& genome, const CloudInstance& inst);

/// Sum of the prices of VMs hosting at least one component.
double cost(const PlacementGenome& genome, const CloudInstance& inst);
/// Mean over components of the best effective latency among its replicas.
double latency(const PlacementGenome& genome, const CloudInstance& inst);

struct ObjectivePair {
    double cost = 0.0;
    double latency = 0.0;
};

ObjectivePair evaluate(const PlacementGenome& genome, const CloudInstance& inst);

/// Feasible objective ranges of an instance (any valid genome falls inside).
ObjectiveBounds feasible_bounds(const CloudInstance& inst);

struct InstanceParams {
    double latency_min_ms = 1.0;
    double latency_max_ms = 20.0;
    double cost_private = 1.0;
    double cost_public = 0.4;
    double remote_penalty_ms = 40.0;
};

/// Deterministic generated instance: the first n_vms - floor(public_fraction * n_vms)
/// VMs are private, the rest public; base latencies uniform in the configured range.
CloudInstance random_instance(std::size_t n_vms, std::size_t n_components, double public_fraction,
                              std::uint64_t seed, const InstanceParams& params = {});

/// Every component on exactly one uniformly drawn VM.
PlacementGenome random_genome(const CloudInstance& inst, Rng& rng);
PlacementGenome random_genome(const CloudInstance& inst, std::uint64_t seed);

// Elementary mutation operators. Each returns the genome unchanged when it cannot apply.
PlacementGenome add_replica(const PlacementGenome& g, const CloudInstance& inst, Rng& rng);
PlacementGenome remove_replica(const PlacementGenome& g, const CloudInstance& inst, Rng& rng);
PlacementGenome move_component(const PlacementGenome& g, const CloudInstance& inst, Rng& rng);
PlacementGenome migrate_to_public(const PlacementGenome& g, const CloudInstance& inst, Rng& rng);
PlacementGenome migrate_to_private(const PlacementGenome& g, const CloudInstance& inst, Rng& rng);
PlacementGenome consolidate_vm(const PlacementGenome& g, const CloudInstance& inst, Rng& rng);

/// The six operators above, in that order, bound to a shared instance.
OperatorPool<PlacementGenome> operator_set(std::shared_ptr<const CloudInstance> inst);

/// Uniform per-component exchange of whole replica sets.
std::pair<PlacementGenome, PlacementGenome> crossover(const PlacementGenome& a, const PlacementGenome& b, Rng& rng);
/// Same exchange with an explicit mask; mask[c] true swaps component c.
std::pair<PlacementGenome, PlacementGenome> crossover_with_mask(const PlacementGenome& a, const PlacementGenome& b,
                                                                const std::vector<bool>& mask);

// JSON formats. Parse failures raise ConfigError carrying the parser message.
std::string instance_to_json(const CloudInstance& inst);
CloudInstance instance_from_json(std::string_view text);
CloudInstance load_instance(const std::filesystem::path& path);
void save_instance(const CloudInstance& inst, const std::filesystem::path& path);

std::string genome_to_json(const PlacementGenome& genome, const CloudInstance& inst);
PlacementGenome genome_from_json(std::string_view text, const CloudInstance& inst);

/// Adapter exposing the placement problem to the generation loops.
class CloudProblem {
public:
    using Genome = PlacementGenome;

    explicit CloudProblem(CloudInstance inst);

    ObjectiveVector evaluate(const Genome& g) const;
    Genome random_genome(Rng& rng) const { return cloud::random_genome(*inst_, rng); }
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) const {
        return cloud::crossover(a, b, rng);
    }
    OperatorPool<Genome> mutation_operators() const { return operator_set(inst_); }
    std::vector<std::string> objective_names() const { return {"cost", "latency"}; }
    ObjectiveBounds feasible_bounds() const { return cloud::feasible_bounds(*inst_); }

    const CloudInstance& instance() const { return *inst_; }

private:
    std::shared_ptr<const CloudInstance> inst_;
};

} // namespace sputnik::cloud

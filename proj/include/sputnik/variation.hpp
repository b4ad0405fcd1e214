#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sputnik/evaluation.hpp"
#include "sputnik/population.hpp"
#include "sputnik/selector.hpp"

namespace sputnik {

struct VariationConfig {
    double crossover_probability = 0.9;
    double mutation_probability = 1.0;
    std::size_t threads = 1;
};

/// An unevaluated child plus what is needed to credit its mutation operator.
template <class Genome>
struct Offspring {
    Individual<Genome> child;
    /// Genome right before mutation when it differs from the parent (crossover happened).
    std::optional<Genome> pre_mutation;
    /// Parent objectives when the child was mutated straight from a parent copy.
    std::optional<ObjectiveVector> parent_objectives;
};

/// Crossover + single-operator mutation, and per-application credit reporting
/// to the operator selector. Shared by both generation loops.
template <Problem P>
class Breeder {
public:
    using Genome = typename P::Genome;

    Breeder(const P& problem, OperatorPool<Genome> pool, OperatorSelector& selector, VariationConfig config)
        : problem_(&problem), pool_(std::move(pool)), selector_(&selector), config_(config) {
        if (pool_.size() == 0) throw UsageError("mutation operator pool is empty");
        if (pool_.size() != selector.size()) throw UsageError("selector and operator pool sizes differ");
    }

    /// Appends up to `max_children` (1 or 2) offspring bred from parents a and b.
    void breed(const Individual<Genome>& a, const Individual<Genome>& b, Rng& rng,
               std::vector<Offspring<Genome>>& out, std::size_t max_children = 2) {
        const bool crossed = coin(rng, config_.crossover_probability);
        std::pair<Genome, Genome> children = crossed ? problem_->crossover(a.genome, b.genome, rng)
                                                     : std::pair<Genome, Genome>{a.genome, b.genome};
        mutate_into(std::move(children.first), crossed, a, rng, out);
        if (max_children > 1) mutate_into(std::move(children.second), crossed, b, rng, out);
    }

    /// Evaluates the batch, widens the running bounds and credits every mutation.
    std::vector<Individual<Genome>> settle(std::vector<Offspring<Genome>>& batch) {
        std::vector<const Genome*> genomes;
        genomes.reserve(batch.size() * 2);
        for (const auto& o : batch) genomes.push_back(&o.child.genome);
        std::vector<std::size_t> pre_slot(batch.size(), 0);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (batch[i].pre_mutation) {
                pre_slot[i] = genomes.size();
                genomes.push_back(&*batch[i].pre_mutation);
            }
        }
        auto values = evaluate_all(*problem_, genomes, config_.threads);
        for (const auto& v : values) bounds_.observe(v);

        std::vector<Individual<Genome>> evaluated;
        evaluated.reserve(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            auto& o = batch[i];
            o.child.objectives = values[i];
            if (o.child.provenance) {
                const ObjectiveVector& before = o.pre_mutation ? values[pre_slot[i]] : *o.parent_objectives;
                selector_->report_outcome(*o.child.provenance, score_of(before, bounds_.bounds()),
                                          score_of(*o.child.objectives, bounds_.bounds()));
            }
            evaluated.push_back(std::move(o.child));
        }
        return evaluated;
    }

    void observe(const Population<Genome>& pop) {
        for (const auto& m : pop.members) bounds_.observe(m.fitness());
    }

    /// Starts a new credit generation and returns the number of mutations in the one just closed.
    std::size_t end_generation() {
        selector_->end_generation();
        return std::exchange(mutations_, 0);
    }

    const OperatorPool<Genome>& pool() const { return pool_; }
    const ObjectiveBounds& bounds() const { return bounds_.bounds(); }
    const P& problem() const { return *problem_; }
    const VariationConfig& config() const { return config_; }

private:
    void mutate_into(Genome genome, bool crossed, const Individual<Genome>& parent, Rng& rng,
                     std::vector<Offspring<Genome>>& out) {
        Offspring<Genome> o;
        if (coin(rng, config_.mutation_probability)) {
            const std::size_t op = selector_->select();
            if (crossed) {
                o.pre_mutation = genome;
            } else {
                o.parent_objectives = parent.fitness();
            }
            o.child.genome = pool_[op].apply(genome, rng);
            o.child.provenance = op;
            ++mutations_;
        } else {
            o.child.genome = std::move(genome);
        }
        out.push_back(std::move(o));
    }

    const P* problem_;
    OperatorPool<Genome> pool_;
    OperatorSelector* selector_;
    VariationConfig config_;
    RunningBounds bounds_;
    std::size_t mutations_ = 0;
};

} // namespace sputnik

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "sputnik/pareto.hpp"
#include "sputnik/variation.hpp"

namespace sputnik {

/// Environmental selection: best `mu` indices of `points` by (rank, crowding).
/// Whole fronts are taken in order; the overflowing front is cut by descending
/// crowding distance, ties by index.
inline std::vector<std::size_t> truncate_by_rank_and_crowding(std::span<const ObjectiveVector> points,
                                                              std::size_t mu) {
    const auto rc = rank_and_crowd(points);
    std::vector<std::size_t> kept;
    kept.reserve(mu);
    for (const Front& front : rc.fronts) {
        if (kept.size() + front.size() <= mu) {
            kept.insert(kept.end(), front.begin(), front.end());
            if (kept.size() == mu) break;
            continue;
        }
        Front last = front;
        std::stable_sort(last.begin(), last.end(), [&](std::size_t a, std::size_t b) {
            return rc.crowding[a] > rc.crowding[b];
        });
        last.resize(mu - kept.size());
        kept.insert(kept.end(), last.begin(), last.end());
        break;
    }
    return kept;
}

/// NSGA-II generation loop, (mu + mu) elitist, with the mutation operator of each
/// offspring supplied by an OperatorSelector.
template <Problem P>
class Nsga2 {
public:
    using Genome = typename P::Genome;

    Nsga2(const P& problem, OperatorSelector& selector, VariationConfig config, Rng rng)
        : breeder_(problem, problem.mutation_operators(), selector, config), rng_(std::move(rng)) {}

    Population<Genome> initialize(std::size_t mu) {
        if (mu == 0) throw UsageError("population size must be at least 1");
        std::vector<Genome> genomes;
        genomes.reserve(mu);
        for (std::size_t i = 0; i < mu; ++i) genomes.push_back(breeder_.problem().random_genome(rng_));
        std::vector<const Genome*> refs;
        for (const auto& g : genomes) refs.push_back(&g);
        auto values = evaluate_all(breeder_.problem(), refs, breeder_.config().threads);
        Population<Genome> pop;
        for (std::size_t i = 0; i < mu; ++i) {
            pop.members.push_back(Individual<Genome>{std::move(genomes[i]), std::move(values[i]), std::nullopt});
        }
        breeder_.observe(pop);
        return pop;
    }

    /// One generation: tournament selection, variation, evaluation, credit
    /// reporting and (mu + mu) truncation.
    Population<Genome> generation(const Population<Genome>& pop) {
        const std::size_t mu = pop.size();
        if (mu == 0) throw UsageError("cannot evolve an empty population");
        const auto objectives = pop.objectives();
        const auto rc = rank_and_crowd(objectives);

        auto tournament = [&]() -> std::size_t {
            const std::size_t a = pick_index(rng_, mu);
            const std::size_t b = pick_index(rng_, mu);
            if (rc.rank[a] != rc.rank[b]) return rc.rank[a] < rc.rank[b] ? a : b;
            if (rc.crowding[a] != rc.crowding[b]) return rc.crowding[a] > rc.crowding[b] ? a : b;
            return coin(rng_, 0.5) ? a : b;
        };

        std::vector<Offspring<Genome>> batch;
        batch.reserve(mu);
        while (batch.size() < mu) {
            const std::size_t p1 = tournament();
            const std::size_t p2 = tournament();
            breeder_.breed(pop.members[p1], pop.members[p2], rng_, batch, std::min<std::size_t>(2, mu - batch.size()));
        }
        auto offspring = breeder_.settle(batch);
        last_mutations_ = breeder_.end_generation();

        std::vector<Individual<Genome>> merged = pop.members;
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        std::vector<ObjectiveVector> merged_obj;
        merged_obj.reserve(merged.size());
        for (const auto& m : merged) merged_obj.push_back(m.fitness());

        Population<Genome> next;
        next.generation_index = pop.generation_index + 1;
        for (std::size_t idx : truncate_by_rank_and_crowding(merged_obj, mu)) {
            next.members.push_back(std::move(merged[idx]));
        }
        return next;
    }

    std::size_t last_mutations() const { return last_mutations_; }
    const Breeder<P>& breeder() const { return breeder_; }

private:
    Breeder<P> breeder_;
    Rng rng_;
    std::size_t last_mutations_ = 0;
};

} // namespace sputnik

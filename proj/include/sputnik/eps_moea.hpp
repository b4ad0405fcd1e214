#pragma once

#include <algorithm>
#include <vector>

#include "sputnik/epsilon.hpp"
#include "sputnik/variation.hpp"

namespace sputnik {

template <class Genome>
struct EpsMoeaState {
    Population<Genome> population;
    std::vector<Individual<Genome>> archive;

    std::vector<ObjectiveVector> archive_objectives() const {
        std::vector<ObjectiveVector> out;
        out.reserve(archive.size());
        for (const auto& m : archive) out.push_back(m.fitness());
        return out;
    }
};

/// Steady-state epsilon-dominance MOEA. One offspring per step; a "generation"
/// is population-size steps, after which the operator credits are closed.
template <Problem P>
class EpsMoea {
public:
    using Genome = typename P::Genome;

    EpsMoea(const P& problem, OperatorSelector& selector, VariationConfig config, std::vector<double> epsilon,
            Rng rng)
        : breeder_(problem, problem.mutation_operators(), selector, config),
          epsilon_(std::move(epsilon)),
          rng_(std::move(rng)) {
        validate_epsilon(epsilon_);
    }

    EpsMoeaState<Genome> initialize(std::size_t mu) {
        if (mu == 0) throw UsageError("population size must be at least 1");
        std::vector<Genome> genomes;
        for (std::size_t i = 0; i < mu; ++i) genomes.push_back(breeder_.problem().random_genome(rng_));
        std::vector<const Genome*> refs;
        for (const auto& g : genomes) refs.push_back(&g);
        auto values = evaluate_all(breeder_.problem(), refs, breeder_.config().threads);

        EpsMoeaState<Genome> state;
        for (std::size_t i = 0; i < mu; ++i) {
            state.population.members.push_back(
                Individual<Genome>{std::move(genomes[i]), std::move(values[i]), std::nullopt});
        }
        if (state.population.members.front().fitness().size() != epsilon_.size()) {
            throw ConfigError("epsilon needs one entry per objective");
        }
        breeder_.observe(state.population);
        for (const auto& m : state.population.members) offer_to_archive(state, m);
        return state;
    }

    /// One steady-state step: population parent by binary dominance tournament,
    /// archive parent uniformly; one offspring; archive and population update.
    void step(EpsMoeaState<Genome>& state) {
        auto& members = state.population.members;
        if (members.empty() || state.archive.empty()) throw UsageError("epsilon-MOEA state is not initialized");
        const std::size_t a = pick_index(rng_, members.size());
        const std::size_t b = pick_index(rng_, members.size());
        std::size_t from_pop = a;
        if (dominates(members[b].fitness(), members[a].fitness())) {
            from_pop = b;
        } else if (!dominates(members[a].fitness(), members[b].fitness())) {
            from_pop = coin(rng_, 0.5) ? a : b;
        }
        const std::size_t from_archive = pick_index(rng_, state.archive.size());

        std::vector<Offspring<Genome>> batch;
        breeder_.breed(members[from_pop], state.archive[from_archive], rng_, batch, 1);
        auto child = std::move(breeder_.settle(batch).front());

        offer_to_archive(state, child);
        offer_to_population(state, std::move(child));
    }

    /// Population-size steps, then closes the operator-credit generation.
    void generation(EpsMoeaState<Genome>& state) {
        const std::size_t mu = state.population.size();
        for (std::size_t i = 0; i < mu; ++i) step(state);
        last_mutations_ = breeder_.end_generation();
        ++state.population.generation_index;
    }

    void offer_to_archive(EpsMoeaState<Genome>& state, const Individual<Genome>& candidate) const {
        const auto update = epsilon_archive_update(state.archive_objectives(), candidate.fitness(), epsilon_);
        if (!update.accepted) return;
        for (auto it = update.evicted.rbegin(); it != update.evicted.rend(); ++it) {
            state.archive.erase(state.archive.begin() + static_cast<std::ptrdiff_t>(*it));
        }
        state.archive.push_back(candidate);
    }

    const std::vector<double>& epsilon() const { return epsilon_; }
    std::size_t last_mutations() const { return last_mutations_; }
    const Breeder<P>& breeder() const { return breeder_; }

private:
    void offer_to_population(EpsMoeaState<Genome>& state, Individual<Genome> child) {
        auto& members = state.population.members;
        std::vector<std::size_t> dominated;
        bool is_dominated = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (dominates(child.fitness(), members[i].fitness())) {
                dominated.push_back(i);
            } else if (dominates(members[i].fitness(), child.fitness())) {
                is_dominated = true;
            }
        }
        if (!dominated.empty()) {
            members[dominated[pick_index(rng_, dominated.size())]] = std::move(child);
        } else if (!is_dominated) {
            members[pick_index(rng_, members.size())] = std::move(child);
        }
    }

    Breeder<P> breeder_;
    std::vector<double> epsilon_;
    Rng rng_;
    std::size_t last_mutations_ = 0;
};

} // namespace sputnik

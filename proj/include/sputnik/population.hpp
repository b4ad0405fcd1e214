#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sputnik/errors.hpp"
#include "sputnik/objectives.hpp"
#include "sputnik/random.hpp"

namespace sputnik {

template <class Genome>
struct Individual {
    Genome genome;
    std::optional<ObjectiveVector> objectives;
    /// Pool index of the mutation operator that produced this individual, if any.
    std::optional<std::size_t> provenance;

    bool evaluated() const { return objectives.has_value(); }

    const ObjectiveVector& fitness() const {
        if (!objectives) throw UsageError("individual has not been evaluated");
        return *objectives;
    }
};

template <class Genome>
struct Population {
    std::vector<Individual<Genome>> members;
    std::size_t generation_index = 0;

    std::size_t size() const { return members.size(); }

    /// Objective vectors of all members; throws UsageError if any member is unevaluated.
    std::vector<ObjectiveVector> objectives() const {
        std::vector<ObjectiveVector> out;
        out.reserve(members.size());
        for (const auto& m : members) out.push_back(m.fitness());
        return out;
    }
};

/// A named mutation operator. `apply` must be a pure function of the genome and
/// the random stream.
template <class Genome>
struct OperatorHandle {
    std::string id;
    std::function<Genome(const Genome&, Rng&)> apply;
};

template <class Genome>
struct OperatorPool {
    std::vector<OperatorHandle<Genome>> operators;

    std::size_t size() const { return operators.size(); }
    const OperatorHandle<Genome>& operator[](std::size_t i) const { return operators.at(i); }

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        for (const auto& op : operators) out.push_back(op.id);
        return out;
    }
};

/// What the generation loops need from an optimization problem.
template <class P>
concept Problem = requires(const P& p, const typename P::Genome& g, Rng& rng) {
    typename P::Genome;
    { p.evaluate(g) } -> std::convertible_to<ObjectiveVector>;
    { p.random_genome(rng) } -> std::same_as<typename P::Genome>;
    { p.crossover(g, g, rng) } -> std::same_as<std::pair<typename P::Genome, typename P::Genome>>;
    { p.mutation_operators() } -> std::same_as<OperatorPool<typename P::Genome>>;
    { p.objective_names() } -> std::convertible_to<std::vector<std::string>>;
};

} // namespace sputnik

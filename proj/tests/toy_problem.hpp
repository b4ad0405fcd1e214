#pragma once

// A tiny problem whose genome is its own objective vector, with operators of
// known effect. Lets engine tests reason about outcomes exactly.

#include <algorithm>
#include <stdexcept>

#include "sputnik/population.hpp"

namespace toy {

struct Problem {
    using Genome = std::vector<double>;

    std::size_t dims = 2;
    double improve_step = 10.0;
    bool fail_on_negative = false;
    std::size_t n_worsening = 2;

    sputnik::ObjectiveVector evaluate(const Genome& g) const {
        if (fail_on_negative && g[0] < 0) throw std::runtime_error("negative genome");
        return g;
    }
    Genome random_genome(sputnik::Rng& rng) const {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Genome g(dims);
        for (auto& x : g) x = u(rng);
        return g;
    }
    std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, sputnik::Rng& rng) const {
        Genome x = a, y = b;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (sputnik::coin(rng, 0.5)) std::swap(x[i], y[i]);
        }
        return {x, y};
    }
    sputnik::OperatorPool<Genome> mutation_operators() const {
        sputnik::OperatorPool<Genome> pool;
        const double step = improve_step;
        pool.operators.push_back({"improve", [step](const Genome& g, sputnik::Rng&) {
                                      Genome out = g;
                                      for (auto& x : out) x -= step;
                                      return out;
                                  }});
        for (std::size_t k = 0; k < n_worsening; ++k) {
            pool.operators.push_back({"worsen" + std::to_string(k), [](const Genome& g, sputnik::Rng& rng) {
                                          Genome out = g;
                                          std::uniform_real_distribution<double> u(0.0, 0.5);
                                          for (auto& x : out) x += u(rng);
                                          return out;
                                      }});
        }
        return pool;
    }
    std::vector<std::string> objective_names() const {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < dims; ++i) names.push_back("f" + std::to_string(i));
        return names;
    }
};

static_assert(sputnik::Problem<Problem>);

} // namespace toy

#pragma once

#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "sputnik/errors.hpp"
#include "sputnik/population.hpp"

namespace sputnik {

/// Evaluates every genome, optionally across worker threads. Evaluation has no
/// access to random streams, so the thread count never changes the result.
/// Any failure (exception or non-finite objective) aborts with the offending index.
template <Problem P>
std::vector<ObjectiveVector> evaluate_all(const P& problem,
                                          const std::vector<const typename P::Genome*>& genomes,
                                          std::size_t threads = 1) {
    std::vector<ObjectiveVector> out(genomes.size());
    std::vector<std::exception_ptr> errors(genomes.size());

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                out[i] = problem.evaluate(*genomes[i]);
                for (double v : out[i]) {
                    if (!std::isfinite(v)) throw RuntimeFailure("non-finite objective value");
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (threads <= 1 || genomes.size() < 2) {
        work(0, genomes.size());
    } else {
        const std::size_t n_workers = std::min(threads, genomes.size());
        const std::size_t chunk = (genomes.size() + n_workers - 1) / n_workers;
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < n_workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(genomes.size(), begin + chunk);
            if (begin < end) workers.emplace_back(work, begin, end);
        }
    }

    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i]) continue;
        std::string what = "unknown error";
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        throw RuntimeFailure("evaluation of offspring " + std::to_string(i) + " failed: " + what);
    }
    return out;
}

} // namespace sputnik

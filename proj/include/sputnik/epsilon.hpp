#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sputnik/objectives.hpp"

namespace sputnik {

using EpsilonBox = std::vector<std::int64_t>;

/// Box index floor(f / eps) per objective.
EpsilonBox epsilon_box(std::span<const double> f, std::span<const double> eps);

/// Distance from f to the utopia (lower) corner of its box, measured in units of eps.
double distance_to_box_corner(std::span<const double> f, std::span<const double> eps);

/// Throws ConfigError unless every eps is a finite positive number.
void validate_epsilon(std::span<const double> eps);

struct ArchiveUpdate {
    bool accepted = false;
    /// Archive indices to remove when the candidate is accepted (ascending).
    std::vector<std::size_t> evicted;
};

/// Epsilon-dominance archive acceptance. The candidate is rejected if some member's
/// box dominates its box, or a member in the same box dominates it or is at least
/// as close to the box corner. Accepted candidates evict members whose box it
/// dominates and the same-box member it beats.
ArchiveUpdate epsilon_archive_update(std::span<const ObjectiveVector> archive, std::span<const double> candidate,
                                     std::span<const double> eps);

} // namespace sputnik

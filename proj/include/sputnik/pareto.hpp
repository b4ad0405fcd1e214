#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sputnik/objectives.hpp"

namespace sputnik {

using Front = std::vector<std::size_t>;

/// Deb's fast non-dominated sort. Front 0 holds the members dominated by
/// nobody; each front lists member indices in ascending order.
std::vector<Front> fast_nondominated_sort(std::span<const ObjectiveVector> points);

/// Crowding distance of each point within one front. Boundary points of every
/// objective get +infinity; objectives with zero range contribute nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Rank (front index) and crowding distance for every member.
struct RankAndCrowding {
    std::vector<std::size_t> rank;
    std::vector<double> crowding;
    std::vector<Front> fronts;
};

RankAndCrowding rank_and_crowd(std::span<const ObjectiveVector> points);

/// Indices of the non-dominated subset, ascending.
Front nondominated_indices(std::span<const ObjectiveVector> points);

} // namespace sputnik

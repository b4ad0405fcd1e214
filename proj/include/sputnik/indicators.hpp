#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sputnik/objectives.hpp"

namespace sputnik {

/// Reference point used in normalized objective space.
inline constexpr double kNormalizedReference = 1.1;

/// Exact hypervolume of a two-objective front with respect to `ref`. Dominated
/// members contribute nothing. Throws UsageError for non-2-D input or a point
/// that does not dominate `ref`.
double hypervolume_2d(std::span<const ObjectiveVector> front, std::span<const double> ref);

struct NormalizedFront {
    std::vector<ObjectiveVector> points;
    /// Number of coordinates that fell outside the bounds and were clamped.
    std::size_t clamped = 0;
};

/// Per-objective min-max scaling into [0, 1]. Requires upper > lower everywhere.
NormalizedFront normalize_front(std::span<const ObjectiveVector> front, const ObjectiveBounds& bounds);

/// Hypervolume of `front` after normalization against `bounds`, reference 1.1 per axis.
double normalized_hypervolume(std::span<const ObjectiveVector> front, const ObjectiveBounds& bounds);

/// Index of the first entry >= threshold, or nullopt if none reaches it.
std::optional<std::size_t> generations_to_threshold(std::span<const double> hypervolumes, double threshold);

} // namespace sputnik

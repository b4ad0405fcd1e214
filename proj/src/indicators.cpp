#include "sputnik/indicators.hpp"

#include <algorithm>
#include <sstream>

#include "sputnik/errors.hpp"

namespace sputnik {

namespace {

std::string describe(std::span<const double> p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

} // namespace

double hypervolume_2d(std::span<const ObjectiveVector> front, std::span<const double> ref) {
    if (ref.size() != 2) {
        throw UsageError("hypervolume_2d: only two objectives are supported, got " + std::to_string(ref.size()));
    }
    std::vector<std::pair<double, double>> pts;
    pts.reserve(front.size());
    for (const auto& p : front) {
        if (p.size() != 2) throw UsageError("hypervolume_2d: point " + describe(p) + " is not two-dimensional");
        if (!dominates(p, ref)) {
            throw UsageError("hypervolume_2d: point " + describe(p) + " does not dominate the reference point " +
                             describe(ref));
        }
        pts.emplace_back(p[0], p[1]);
    }
    std::sort(pts.begin(), pts.end());

    // Sweep along f1; only points improving the best f2 so far are non-dominated.
    double volume = 0.0;
    double best_f2 = ref[1];
    std::vector<std::pair<double, double>> staircase;
    for (const auto& [f1, f2] : pts) {
        if (f2 < best_f2) {
            staircase.emplace_back(f1, f2);
            best_f2 = f2;
        }
    }
    for (std::size_t i = 0; i < staircase.size(); ++i) {
        const double next_f1 = i + 1 < staircase.size() ? staircase[i + 1].first : ref[0];
        volume += (next_f1 - staircase[i].first) * (ref[1] - staircase[i].second);
    }
    return volume;
}

NormalizedFront normalize_front(std::span<const ObjectiveVector> front, const ObjectiveBounds& bounds) {
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!(bounds.upper[i] > bounds.lower[i])) {
            throw UsageError("normalize_front: bounds of objective " + std::to_string(i) + " have zero width");
        }
    }
    NormalizedFront out;
    out.points.reserve(front.size());
    for (const auto& p : front) {
        if (p.size() != bounds.size()) throw UsageError("normalize_front: point/bounds dimension mismatch");
        ObjectiveVector q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double v = (p[i] - bounds.lower[i]) / (bounds.upper[i] - bounds.lower[i]);
            if (v < 0.0 || v > 1.0) ++out.clamped;
            q[i] = std::clamp(v, 0.0, 1.0);
        }
        out.points.push_back(std::move(q));
    }
    return out;
}

double normalized_hypervolume(std::span<const ObjectiveVector> front, const ObjectiveBounds& bounds) {
    const auto normalized = normalize_front(front, bounds);
    const std::vector<double> ref(bounds.size(), kNormalizedReference);
    return hypervolume_2d(normalized.points, ref);
}

std::optional<std::size_t> generations_to_threshold(std::span<const double> hypervolumes, double threshold) {
    for (std::size_t g = 0; g < hypervolumes.size(); ++g) {
        if (hypervolumes[g] >= threshold) return g;
    }
    return std::nullopt;
}

} // namespace sputnik

#include "sputnik/epsilon.hpp"

#include <cmath>

#include "sputnik/errors.hpp"

namespace sputnik {

namespace {

bool box_dominates(const EpsilonBox& a, const EpsilonBox& b) {
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly = true;
    }
    return strictly;
}

} // namespace

void validate_epsilon(std::span<const double> eps) {
    if (eps.empty()) throw ConfigError("epsilon vector is empty");
    for (double e : eps) {
        if (!(std::isfinite(e) && e > 0.0)) throw ConfigError("epsilon values must be positive");
    }
}

EpsilonBox epsilon_box(std::span<const double> f, std::span<const double> eps) {
    if (f.size() != eps.size()) throw UsageError("epsilon_box: epsilon length does not match objectives");
    EpsilonBox box(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) box[i] = static_cast<std::int64_t>(std::floor(f[i] / eps[i]));
    return box;
}

double distance_to_box_corner(std::span<const double> f, std::span<const double> eps) {
    const auto box = epsilon_box(f, eps);
    double sq = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = (f[i] - static_cast<double>(box[i]) * eps[i]) / eps[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

ArchiveUpdate epsilon_archive_update(std::span<const ObjectiveVector> archive, std::span<const double> candidate,
                                     std::span<const double> eps) {
    ArchiveUpdate update;
    const auto cbox = epsilon_box(candidate, eps);
    for (std::size_t i = 0; i < archive.size(); ++i) {
        const auto abox = epsilon_box(archive[i], eps);
        if (abox == cbox) {
            if (dominates(candidate, archive[i])) {
                update.evicted.push_back(i);
            } else if (dominates(archive[i], candidate)) {
                return {};
            } else if (distance_to_box_corner(candidate, eps) < distance_to_box_corner(archive[i], eps)) {
                update.evicted.push_back(i);
            } else {
                return {};
            }
        } else if (box_dominates(abox, cbox)) {
            return {};
        } else if (box_dominates(cbox, abox)) {
            update.evicted.push_back(i);
        }
    }
    update.accepted = true;
    return update;
}

} // namespace sputnik

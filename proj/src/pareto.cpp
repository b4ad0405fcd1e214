#include "sputnik/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sputnik/errors.hpp"

namespace sputnik {

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw UsageError("dominates: objective vectors of length " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

void RunningBounds::observe(std::span<const double> values) {
    if (bounds_.empty()) {
        bounds_.lower.assign(values.begin(), values.end());
        bounds_.upper.assign(values.begin(), values.end());
        return;
    }
    if (values.size() != bounds_.size()) {
        throw UsageError("RunningBounds: objective count changed mid-run");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        bounds_.lower[i] = std::min(bounds_.lower[i], values[i]);
        bounds_.upper[i] = std::max(bounds_.upper[i], values[i]);
    }
}

std::vector<Front> fast_nondominated_sort(std::span<const ObjectiveVector> points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<Front> fronts;
    if (n == 0) return fronts;

    Front current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(points[q], points[p])) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        Front next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated_by_me[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    const std::size_t m = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][obj] < front[b][obj];
        });
        const double lo = front[order.front()][obj];
        const double hi = front[order.back()][obj];
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        const double range = hi - lo;
        if (!(range > 0.0)) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / range;
        }
    }
    return distance;
}

RankAndCrowding rank_and_crowd(std::span<const ObjectiveVector> points) {
    RankAndCrowding out;
    out.fronts = fast_nondominated_sort(points);
    out.rank.assign(points.size(), 0);
    out.crowding.assign(points.size(), 0.0);
    std::vector<ObjectiveVector> members;
    for (std::size_t r = 0; r < out.fronts.size(); ++r) {
        const Front& f = out.fronts[r];
        members.clear();
        for (std::size_t idx : f) {
            out.rank[idx] = r;
            members.push_back(points[idx]);
        }
        const auto cd = crowding_distance(members);
        for (std::size_t k = 0; k < f.size(); ++k) out.crowding[f[k]] = cd[k];
    }
    return out;
}

Front nondominated_indices(std::span<const ObjectiveVector> points) {
    Front out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

} // namespace sputnik

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sputnik {

/// Objective values f1..fn of one solution. Minimization everywhere.
using ObjectiveVector = std::vector<double>;

/// Pareto dominance under minimization: a <= b componentwise and a < b somewhere.
/// Throws UsageError on length mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Per-objective closed interval [lower, upper].
struct ObjectiveBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
    bool empty() const { return lower.empty(); }
};

/// Running min/max bounds that only ever widen.
class RunningBounds {
public:
    void observe(std::span<const double> values);
    const ObjectiveBounds& bounds() const { return bounds_; }
    bool empty() const { return bounds_.empty(); }

private:
    ObjectiveBounds bounds_;
};

} // namespace sputnik

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sputnik/objectives.hpp"
#include "sputnik/random.hpp"

namespace sputnik {

enum class Strategy { Random, Elitist, Caste };

std::string_view to_string(Strategy s);
/// Accepts "random", "elitist" or "caste"; throws ConfigError otherwise.
Strategy parse_strategy(std::string_view name);

/// Normalized mean fitness: mean over objectives of (f - lower) / (upper - lower),
/// each term clamped to [0, 1]. Zero-range objectives contribute 0. Lower is better.
double score_of(std::span<const double> objectives, const ObjectiveBounds& bounds);

/// Running credit record of one mutation operator.
struct OperatorCredit {
    std::string operator_id;
    std::size_t applications_this_gen = 0;
    double sum_improvement_this_gen = 0.0;
    /// Mean improvement per application over the last generation the operator was used in.
    std::optional<double> delta_impact;
    bool ever_used = false;
};

/// What happened during the last completed generation.
struct GenerationSnapshot {
    std::vector<std::size_t> selections;
    std::vector<std::optional<double>> delta_impact;
};

/// Source of mutation operators for the generation loops. Operators are addressed
/// by their index in the pool.
class OperatorSelector {
public:
    virtual ~OperatorSelector() = default;

    virtual std::size_t select() = 0;
    /// Scores are normalized mean fitness (see score_of); improvement = parent - offspring.
    virtual void report_outcome(std::size_t op, double parent_score, double offspring_score) = 0;
    virtual void end_generation() = 0;

    virtual std::size_t size() const = 0;
    virtual const GenerationSnapshot& last_generation() const = 0;
};

/// Plain uniform operator choice; the baseline MOEA without a hyper-heuristic.
class UniformSelector final : public OperatorSelector {
public:
    UniformSelector(std::size_t n_operators, std::uint64_t seed);

    std::size_t select() override;
    void report_outcome(std::size_t op, double parent_score, double offspring_score) override;
    void end_generation() override;

    std::size_t size() const override { return n_; }
    const GenerationSnapshot& last_generation() const override { return last_; }

private:
    std::size_t n_;
    Rng rng_;
    std::vector<std::size_t> selections_;
    GenerationSnapshot last_;
};

/// History-driven mutation operator selection.
///
/// Until every operator has been applied and credited once (bootstrap), operators
/// never selected so far are drawn first. Afterwards each draw is uniform with
/// probability `exploration_floor`; otherwise the strategy decides: Elitist takes
/// the operator with the highest positive delta impact, Caste draws proportionally
/// to positive delta impacts. With no positive impact both fall back to uniform.
/// The Random strategy is always a single uniform draw and consumes the random
/// stream exactly like UniformSelector.
class SputnikSelector final : public OperatorSelector {
public:
    SputnikSelector(std::vector<std::string> operator_ids, Strategy strategy,
                    double exploration_floor, std::uint64_t seed);

    std::size_t select() override;
    void report_outcome(std::size_t op, double parent_score, double offspring_score) override;
    void report_outcome(std::string_view operator_id, double parent_score, double offspring_score);
    void end_generation() override;

    std::size_t size() const override { return credits_.size(); }
    const GenerationSnapshot& last_generation() const override { return last_; }

    /// Exact probability of each operator on the next draw.
    std::vector<double> selection_probabilities() const;

    /// Warm start from known delta impacts (one per operator); completes bootstrap.
    void restore_credits(std::span<const double> delta_impacts);

    std::size_t index_of(std::string_view operator_id) const;
    const std::vector<OperatorCredit>& credits() const { return credits_; }
    Strategy strategy() const { return strategy_; }
    double exploration_floor() const { return floor_; }
    bool bootstrap_complete() const { return bootstrap_complete_; }

private:
    std::vector<std::size_t> positive_impact_operators() const;
    std::size_t draw_strategy();

    std::vector<OperatorCredit> credits_;
    Strategy strategy_;
    double floor_;
    Rng rng_;
    bool bootstrap_complete_ = false;
    std::vector<bool> ever_selected_;
    std::vector<std::size_t> selections_;
    GenerationSnapshot last_;
};

} // namespace sputnik

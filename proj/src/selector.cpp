#include "sputnik/selector.hpp"

#include <algorithm>
#include <set>

#include "sputnik/errors.hpp"

namespace sputnik {

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::Random: return "random";
    case Strategy::Elitist: return "elitist";
    case Strategy::Caste: return "caste";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "random") return Strategy::Random;
    if (name == "elitist") return Strategy::Elitist;
    if (name == "caste") return Strategy::Caste;
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected random, elitist or caste)");
}

double score_of(std::span<const double> objectives, const ObjectiveBounds& bounds) {
    if (objectives.size() != bounds.size()) {
        throw UsageError("score_of: bounds do not match objective count");
    }
    if (objectives.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        const double range = bounds.upper[i] - bounds.lower[i];
        if (!(range > 0.0)) continue;
        sum += std::clamp((objectives[i] - bounds.lower[i]) / range, 0.0, 1.0);
    }
    return sum / static_cast<double>(objectives.size());
}

UniformSelector::UniformSelector(std::size_t n_operators, std::uint64_t seed)
    : n_(n_operators), rng_(seed), selections_(n_operators, 0) {
    if (n_ == 0) throw UsageError("UniformSelector: empty operator pool");
    last_.selections.assign(n_, 0);
    last_.delta_impact.assign(n_, std::nullopt);
}

std::size_t UniformSelector::select() {
    const std::size_t op = pick_index(rng_, n_);
    ++selections_[op];
    return op;
}

void UniformSelector::report_outcome(std::size_t op, double, double) {
    if (op >= n_) throw UsageError("UniformSelector: operator index out of range");
}

void UniformSelector::end_generation() {
    last_.selections = selections_;
    std::fill(selections_.begin(), selections_.end(), 0);
}

SputnikSelector::SputnikSelector(std::vector<std::string> operator_ids, Strategy strategy,
                                 double exploration_floor, std::uint64_t seed)
    : strategy_(strategy), floor_(exploration_floor), rng_(seed) {
    if (operator_ids.empty()) throw UsageError("SputnikSelector: empty operator pool");
    if (!(exploration_floor >= 0.0 && exploration_floor <= 1.0)) {
        throw UsageError("SputnikSelector: exploration floor must lie in [0, 1]");
    }
    std::set<std::string> seen;
    for (auto& id : operator_ids) {
        if (!seen.insert(id).second) throw UsageError("SputnikSelector: duplicate operator id '" + id + "'");
        OperatorCredit credit;
        credit.operator_id = std::move(id);
        credits_.push_back(std::move(credit));
    }
    const std::size_t n = credits_.size();
    ever_selected_.assign(n, false);
    selections_.assign(n, 0);
    last_.selections.assign(n, 0);
    last_.delta_impact.assign(n, std::nullopt);
}

std::size_t SputnikSelector::index_of(std::string_view operator_id) const {
    for (std::size_t i = 0; i < credits_.size(); ++i) {
        if (credits_[i].operator_id == operator_id) return i;
    }
    throw UsageError("unknown operator id '" + std::string(operator_id) + "'");
}

std::vector<std::size_t> SputnikSelector::positive_impact_operators() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < credits_.size(); ++i) {
        if (credits_[i].delta_impact && *credits_[i].delta_impact > 0.0) out.push_back(i);
    }
    return out;
}

std::size_t SputnikSelector::draw_strategy() {
    const std::size_t n = credits_.size();
    const auto positive = positive_impact_operators();
    if (positive.empty()) return pick_index(rng_, n);

    if (strategy_ == Strategy::Elitist) {
        double best = 0.0;
        for (std::size_t i : positive) best = std::max(best, *credits_[i].delta_impact);
        std::vector<std::size_t> tied;
        for (std::size_t i : positive) {
            if (*credits_[i].delta_impact == best) tied.push_back(i);
        }
        return tied.size() == 1 ? tied.front() : tied[pick_index(rng_, tied.size())];
    }

    double total = 0.0;
    for (std::size_t i : positive) total += *credits_[i].delta_impact;
    double u = std::uniform_real_distribution<double>{0.0, total}(rng_);
    for (std::size_t i : positive) {
        u -= *credits_[i].delta_impact;
        if (u < 0.0) return i;
    }
    return positive.back();
}

std::size_t SputnikSelector::select() {
    const std::size_t n = credits_.size();
    std::size_t op = 0;
    if (strategy_ == Strategy::Random) {
        op = pick_index(rng_, n);
    } else if (!bootstrap_complete_) {
        std::vector<std::size_t> fresh;
        for (std::size_t i = 0; i < n; ++i) {
            if (!ever_selected_[i]) fresh.push_back(i);
        }
        op = fresh.empty() ? pick_index(rng_, n) : fresh[pick_index(rng_, fresh.size())];
    } else if (coin(rng_, floor_)) {
        op = pick_index(rng_, n);
    } else {
        op = draw_strategy();
    }
    ever_selected_[op] = true;
    ++selections_[op];
    return op;
}

std::vector<double> SputnikSelector::selection_probabilities() const {
    const std::size_t n = credits_.size();
    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> p(n, uniform);
    if (strategy_ == Strategy::Random) return p;

    if (!bootstrap_complete_) {
        const auto fresh = static_cast<std::size_t>(std::count(ever_selected_.begin(), ever_selected_.end(), false));
        if (fresh == 0) return p;
        for (std::size_t i = 0; i < n; ++i) p[i] = ever_selected_[i] ? 0.0 : 1.0 / static_cast<double>(fresh);
        return p;
    }

    const auto positive = positive_impact_operators();
    if (positive.empty()) return p;

    std::vector<double> exploit(n, 0.0);
    if (strategy_ == Strategy::Elitist) {
        double best = 0.0;
        for (std::size_t i : positive) best = std::max(best, *credits_[i].delta_impact);
        std::size_t tied = 0;
        for (std::size_t i : positive) tied += *credits_[i].delta_impact == best ? 1 : 0;
        for (std::size_t i : positive) {
            if (*credits_[i].delta_impact == best) exploit[i] = 1.0 / static_cast<double>(tied);
        }
    } else {
        double total = 0.0;
        for (std::size_t i : positive) total += *credits_[i].delta_impact;
        for (std::size_t i : positive) exploit[i] = *credits_[i].delta_impact / total;
    }
    for (std::size_t i = 0; i < n; ++i) p[i] = floor_ * uniform + (1.0 - floor_) * exploit[i];
    return p;
}

void SputnikSelector::report_outcome(std::size_t op, double parent_score, double offspring_score) {
    if (op >= credits_.size()) throw UsageError("SputnikSelector: operator index out of range");
    auto& c = credits_[op];
    ++c.applications_this_gen;
    c.sum_improvement_this_gen += parent_score - offspring_score;
    c.ever_used = true;
}

void SputnikSelector::report_outcome(std::string_view operator_id, double parent_score, double offspring_score) {
    report_outcome(index_of(operator_id), parent_score, offspring_score);
}

void SputnikSelector::end_generation() {
    bool all_used = true;
    for (auto& c : credits_) {
        if (c.applications_this_gen > 0) {
            c.delta_impact = c.sum_improvement_this_gen / static_cast<double>(c.applications_this_gen);
        }
        c.applications_this_gen = 0;
        c.sum_improvement_this_gen = 0.0;
        all_used = all_used && c.ever_used;
    }
    bootstrap_complete_ = all_used;

    last_.selections = selections_;
    std::fill(selections_.begin(), selections_.end(), 0);
    for (std::size_t i = 0; i < credits_.size(); ++i) last_.delta_impact[i] = credits_[i].delta_impact;
}

void SputnikSelector::restore_credits(std::span<const double> delta_impacts) {
    if (delta_impacts.size() != credits_.size()) {
        throw UsageError("restore_credits: expected one impact per operator");
    }
    for (std::size_t i = 0; i < credits_.size(); ++i) {
        credits_[i].delta_impact = delta_impacts[i];
        credits_[i].ever_used = true;
        ever_selected_[i] = true;
        last_.delta_impact[i] = delta_impacts[i];
    }
    bootstrap_complete_ = true;
}

} // namespace sputnik

#ifndef RANKFORGE_SCORING_HPP
#define RANKFORGE_SCORING_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "rankforge/errors.hpp"
#include "rankforge/rank.hpp"
#include "rankforge/score_function.hpp"
#include "rankforge/standings.hpp"
#include "rankforge/tiebreak.hpp"

namespace rankforge {

// Product of the ranks themselves, kept exact. This is what the combined
// format actually used; sorting by it is equivalent to sorting by the sum of
// log-ranks.
inline Rational product_score(const RankVector& ranks) {
    if (ranks.empty()) throw std::invalid_argument("empty rank vector");
    Rational product{1};
    for (const Rank& r : ranks) product *= r.exact();
    return product;
}

namespace detail {

inline bool half_integer(double w) {
    const double doubled = w * 2.0;
    return doubled == std::floor(doubled) && std::fabs(doubled) < 1e15;
}

} // namespace detail

// Weighted sum of f over the rank vector. Exact when the function is
// exact-capable and every weight is a half-integer; floating otherwise.
inline Score aggregate_score(const RankVector& ranks, const ScoreFunction& f,
                             const WeightVector& weights) {
    if (ranks.size() != weights.size())
        throw std::invalid_argument("rank vector and weight vector lengths differ");
    if (ranks.empty()) throw std::invalid_argument("empty rank vector");
    check_weights(weights);

    const bool exact = f.exact_capable() &&
                       std::all_of(weights.begin(), weights.end(), detail::half_integer);
    if (exact) {
        Rational total{0};
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            const auto w = Rational::of(static_cast<std::int64_t>(weights[i] * 2.0), 2);
            total += w * f.eval_exact(ranks[i]);
        }
        return Score::from_exact(total);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i) total += weights[i] * f(ranks[i]);
    return Score::from_value(total);
}

inline Score eval_score_function(const ScoreFunction& f, Rank r) {
    if (f.exact_capable()) return Score::from_exact(f.eval_exact(r));
    return Score::from_value(f(r));
}

// A complete method: how to turn a rank vector into a score, plus the
// tie-break chain that goes with it.
struct ScoringSystem {
    enum class Aggregation { WeightedSum, Product };

    Aggregation aggregation = Aggregation::WeightedSum;
    ScoreFunction function = ScoreFunction::linear();
    WeightVector weights;  // empty means unit weights
    TieBreakChain chain;   // empty means shared ranks stand
    std::string label = "sum";

    Score score(const RankVector& ranks) const {
        if (aggregation == Aggregation::Product) return Score::from_exact(product_score(ranks));
        return aggregate_score(ranks, function,
                               weights.empty() ? unit_weights(ranks.size()) : weights);
    }

    ScoringSystem with_chain(TieBreakChain c) const {
        ScoringSystem copy = *this;
        copy.chain = std::move(c);
        return copy;
    }
    ScoringSystem with_weights(WeightVector w) const {
        ScoringSystem copy = *this;
        copy.weights = std::move(w);
        return copy;
    }
};

inline ScoringSystem sum_system() { return {}; }
inline ScoringSystem product_system() {
    return {ScoringSystem::Aggregation::Product, ScoreFunction::linear(), {}, {}, "product"};
}
inline ScoringSystem log_system() {
    return {ScoringSystem::Aggregation::WeightedSum, ScoreFunction::logarithmic(), {}, {}, "log"};
}
inline ScoringSystem sqrt_system() {
    return {ScoringSystem::Aggregation::WeightedSum, ScoreFunction::sqrt(), {}, {}, "sqrt"};
}
inline ScoringSystem power_system(double p) {
    return {ScoringSystem::Aggregation::WeightedSum, ScoreFunction::power(p), {}, {},
            ScoreFunction::power(p).describe()};
}
inline ScoringSystem function_system(ScoreFunction f, std::string label) {
    return {ScoringSystem::Aggregation::WeightedSum, std::move(f), {}, {}, std::move(label)};
}

// Score everyone, sort ascending, group ties (exactly for exact scores,
// within tolerance for floating ones), then let the system's chain sort out
// what it can.
inline Standings rank_field(const EventField& field, const ScoringSystem& system) {
    std::set<std::string> seen;
    for (const auto& c : field.competitors) {
        if (c.ranks.size() != field.stage_count())
            throw ValidationError("competitor " + c.name + " has " +
                                  std::to_string(c.ranks.size()) + " ranks for " +
                                  std::to_string(field.stage_count()) + " stages");
        if (!seen.insert(c.name).second)
            throw ValidationError("duplicate competitor name: " + c.name);
    }

    Standings standings;
    standings.entries.reserve(field.size());
    for (const auto& c : field.competitors)
        standings.entries.push_back({c.name, c.ranks, system.score(c.ranks), 0, 0});

    std::stable_sort(standings.entries.begin(), standings.entries.end(),
                     [](const StandingsEntry& a, const StandingsEntry& b) {
                         return score_less(a.score, b.score);
                     });

    int group = 0;
    for (std::size_t i = 0; i < standings.entries.size(); ++i) {
        if (i > 0 && !score_tied(standings.entries[i - 1].score, standings.entries[i].score))
            ++group;
        standings.entries[i].tie_group = group;
    }
    renumber(standings.entries);

    return apply_chain(standings, system.chain, field);
}

struct EquivalenceReport {
    Standings product;
    Standings log_sum;
    bool match = false;
};

// The product order and the log-sum order are the same order; this checks it
// on actual data rather than trusting the algebra, tie groups included.
inline EquivalenceReport verify_log_product_equivalence(const EventField& field) {
    EquivalenceReport report;
    report.product = rank_field(field, product_system());
    report.log_sum = rank_field(field, log_system());
    report.match = tie_structure(report.product) == tie_structure(report.log_sum);
    return report;
}

} // namespace rankforge

#endif

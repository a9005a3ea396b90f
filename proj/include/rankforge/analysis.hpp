#ifndef RANKFORGE_ANALYSIS_HPP
#define RANKFORGE_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rankforge/scoring.hpp"

namespace rankforge {

struct MethodComparison {
    struct Row {
        std::string name;
        int rank_a = 0;
        int rank_b = 0;
        int delta = 0;  // rank_b - rank_a; positive means worse under B
    };

    std::string label_a, label_b;
    std::size_t k = 0;
    std::vector<Row> rows;                  // ordered by rank_a, then name
    std::vector<std::string> top_k_only_a;  // qualify under A but not B, sorted
    std::vector<std::string> top_k_only_b;
    std::int64_t rank_distance = 0;
    bool distance_from_lexicographic_completion = false;
};

struct RankDistanceResult {
    std::int64_t discordant_pairs = 0;
    // True when either input still had shared ranks and the metric was taken
    // on a name-lexicographic completion.
    bool lexicographic_completion = false;
};

namespace detail {

// Total order over the standings: placement order, with members of a
// surviving tie group ordered by name.
inline std::vector<std::string> total_order(const Standings& s, bool& had_ties) {
    std::vector<std::string> order;
    order.reserve(s.entries.size());
    std::size_t i = 0;
    while (i < s.entries.size()) {
        std::size_t j = i;
        while (j < s.entries.size() && s.entries[j].tie_group == s.entries[i].tie_group) ++j;
        if (j - i > 1) had_ties = true;
        std::vector<std::string> block;
        for (std::size_t kk = i; kk < j; ++kk) block.push_back(s.entries[kk].name);
        std::sort(block.begin(), block.end());
        for (auto& n : block) order.push_back(std::move(n));
        i = j;
    }
    return order;
}

// Inversions by merge sort; the pairwise-enumeration count lives in the test
// suite as an independent check.
inline std::int64_t count_inversions(std::vector<std::int32_t>& v) {
    const std::size_t n = v.size();
    if (n < 2) return 0;
    std::vector<std::int32_t> buf(n);
    std::int64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (v[a] <= v[b]) buf[out++] = v[a++];
                else {
                    inversions += static_cast<std::int64_t>(mid - a);
                    buf[out++] = v[b++];
                }
            }
            while (a < mid) buf[out++] = v[a++];
            while (b < hi) buf[out++] = v[b++];
            std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
        }
    }
    return inversions;
}

} // namespace detail

// Kendall tau distance between two standings over the same competitors:
// the number of pairs the two orders disagree on.
inline RankDistanceResult rank_distance(const Standings& a, const Standings& b) {
    bool had_ties = false;
    const auto order_a = detail::total_order(a, had_ties);
    const auto order_b = detail::total_order(b, had_ties);

    std::map<std::string, std::int32_t> position_in_a;
    for (std::size_t i = 0; i < order_a.size(); ++i)
        position_in_a[order_a[i]] = static_cast<std::int32_t>(i);

    if (order_a.size() != order_b.size())
        throw std::invalid_argument("rank distance: competitor sets differ");
    std::vector<std::int32_t> mapped;
    mapped.reserve(order_b.size());
    for (const auto& name : order_b) {
        auto it = position_in_a.find(name);
        if (it == position_in_a.end())
            throw std::invalid_argument("rank distance: competitor sets differ (" + name + ")");
        mapped.push_back(it->second);
    }

    RankDistanceResult result;
    result.lexicographic_completion = had_ties;
    result.discordant_pairs = detail::count_inversions(mapped);
    return result;
}

// Rank both ways, line the two standings up per competitor, and report who
// makes the top-k cut under one method but not the other.
inline MethodComparison compare_methods(const EventField& field, const ScoringSystem& system_a,
                                        const ScoringSystem& system_b, std::size_t k) {
    if (k > field.size()) throw std::invalid_argument("cut size exceeds field size");

    const Standings a = rank_field(field, system_a);
    const Standings b = rank_field(field, system_b);

    MethodComparison cmp;
    cmp.label_a = system_a.label;
    cmp.label_b = system_b.label;
    cmp.k = k;

    for (const auto& ea : a.entries) {
        const StandingsEntry* eb = b.find(ea.name);
        cmp.rows.push_back({ea.name, ea.rank, eb->rank, eb->rank - ea.rank});
    }
    std::sort(cmp.rows.begin(), cmp.rows.end(),
              [](const MethodComparison::Row& x, const MethodComparison::Row& y) {
                  if (x.rank_a != y.rank_a) return x.rank_a < y.rank_a;
                  return x.name < y.name;
              });

    std::set<std::string> top_a, top_b;
    for (std::size_t i = 0; i < k; ++i) {
        top_a.insert(a.entries[i].name);
        top_b.insert(b.entries[i].name);
    }
    for (const auto& name : top_a)
        if (!top_b.count(name)) cmp.top_k_only_a.push_back(name);
    for (const auto& name : top_b)
        if (!top_a.count(name)) cmp.top_k_only_b.push_back(name);

    const RankDistanceResult dist = rank_distance(a, b);
    cmp.rank_distance = dist.discordant_pairs;
    cmp.distance_from_lexicographic_completion = dist.lexicographic_completion;
    return cmp;
}

struct EquivalencePair {
    int a = 0;  // the pair is (a, a+1)
    double residual = 0.0;
};

// Which two adjacent placements add up to a first-plus-last finish under f.
// Product: (4,5) since 4*5 = 1*20. Sum: (10,11). Square root: (7,8), nearly.
inline EquivalencePair equivalence_pair(const ScoreFunction& f, int n) {
    if (n < 3) throw std::invalid_argument("equivalence pair needs n >= 3");
    const double target = f.eval_at(1.0) + f.eval_at(static_cast<double>(n));
    EquivalencePair best{0, 0.0};
    for (int a = 1; a + 1 <= n; ++a) {
        const double residual =
            std::fabs(f.eval_at(static_cast<double>(a)) + f.eval_at(static_cast<double>(a + 1)) - target);
        if (best.a == 0 || residual < best.residual) best = {a, residual};
    }
    return best;
}

} // namespace rankforge

#endif

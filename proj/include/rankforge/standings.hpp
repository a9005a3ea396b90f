#ifndef RANKFORGE_STANDINGS_HPP
#define RANKFORGE_STANDINGS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "rankforge/rank.hpp"
#include "rankforge/rational.hpp"

namespace rankforge {

// Tolerance for treating two floating scores as tied. Exact scores compare
// exactly and never use it.
inline constexpr double kScoreTieTolerance = 1e-9;

struct Score {
    double value = 0.0;
    std::optional<Rational> exact;

    static Score from_exact(const Rational& r) { return Score{r.to_double(), r}; }
    static Score from_value(double v) { return Score{v, std::nullopt}; }
};

inline bool score_less(const Score& a, const Score& b) {
    if (a.exact && b.exact) return *a.exact < *b.exact;
    return a.value < b.value;
}

inline bool score_tied(const Score& a, const Score& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    const double scale = std::max({1.0, std::fabs(a.value), std::fabs(b.value)});
    return std::fabs(a.value - b.value) <= kScoreTieTolerance * scale;
}

// "360", "50.5" for exact scores; three decimals for floating ones.
inline std::string format_score(const Score& s) {
    if (s.exact) return s.exact->to_string();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", s.value);
    return buf;
}

// One line of a tie-break audit trail: which policy looked at which group,
// and whether it separated anyone.
struct TieResolutionRecord {
    std::vector<std::string> group;
    std::string policy;
    bool resolved = false;
    std::vector<std::string> outcome;  // names in resolved order; empty on pass-through
};

struct StandingsEntry {
    std::string name;
    RankVector ranks;
    Score score;
    int rank = 0;       // standard competition number; tied entries share it
    int tie_group = 0;  // contiguous group id, 0-based
};

struct Standings {
    std::vector<StandingsEntry> entries;
    std::vector<TieResolutionRecord> tie_resolutions;

    const StandingsEntry* find(std::string_view name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }

    std::size_t tie_group_size(int group) const {
        std::size_t n = 0;
        for (const auto& e : entries) n += (e.tie_group == group);
        return n;
    }
};

// Rank numbers follow the final placement: every entry's rank is one more
// than the number of entries in strictly earlier tie groups. With no
// tie-breaking applied this is exactly 1 + |{strictly smaller scores}|.
// Callers mark group boundaries with distinct consecutive tie_group values;
// this compacts them to 0,1,2,... and assigns ranks.
inline void renumber(std::vector<StandingsEntry>& entries) {
    if (entries.empty()) return;
    int group = 0;
    std::size_t group_start = 0;
    int previous_raw = entries[0].tie_group;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].tie_group != previous_raw) {
            previous_raw = entries[i].tie_group;
            ++group;
            group_start = i;
        }
        entries[i].tie_group = group;
        entries[i].rank = static_cast<int>(group_start) + 1;
    }
}

// Ordered list of tie groups, each group's names sorted, for structural
// comparison of two standings that may order tied members differently.
inline std::vector<std::vector<std::string>> tie_structure(const Standings& s) {
    std::vector<std::vector<std::string>> groups;
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        if (i == 0 || s.entries[i].tie_group != s.entries[i - 1].tie_group)
            groups.emplace_back();
        groups.back().push_back(s.entries[i].name);
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());
    return groups;
}

inline ReferenceStandings to_reference(const Standings& s) {
    ReferenceStandings ref;
    for (const auto& e : s.entries) ref.rank_by_name[e.name] = e.rank;
    return ref;
}

} // namespace rankforge

#endif

#ifndef RANKFORGE_TIEBREAK_HPP
#define RANKFORGE_TIEBREAK_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankforge/errors.hpp"
#include "rankforge/rank.hpp"
#include "rankforge/standings.hpp"

namespace rankforge {

struct TieBreakPolicy {
    enum class Kind { HeadToHead, CountBack, DesignatedStage, SharedRank };

    Kind kind = Kind::SharedRank;
    std::optional<ReferenceStandings> reference;  // CountBack override
    std::size_t stage = 0;                        // DesignatedStage, 0-based

    static TieBreakPolicy head_to_head() { return {Kind::HeadToHead, std::nullopt, 0}; }
    static TieBreakPolicy count_back() { return {Kind::CountBack, std::nullopt, 0}; }
    static TieBreakPolicy count_back(ReferenceStandings ref) {
        return {Kind::CountBack, std::move(ref), 0};
    }
    static TieBreakPolicy designated_stage(std::size_t stage_index) {
        return {Kind::DesignatedStage, std::nullopt, stage_index};
    }
    static TieBreakPolicy shared_rank() { return {Kind::SharedRank, std::nullopt, 0}; }

    std::string name() const {
        switch (kind) {
        case Kind::HeadToHead: return "head2head";
        case Kind::CountBack: return "countback";
        case Kind::DesignatedStage: return "stage:" + std::to_string(stage + 1);
        case Kind::SharedRank: return "shared";
        }
        return "?";
    }
};

// Applied in order; an implicit shared-rank terminal always follows, so a tie
// no policy separates simply stands.
using TieBreakChain = std::vector<TieBreakPolicy>;

// The stage a weighted event breaks ties on when nothing else is configured:
// the heaviest one (first on equal weights).
inline std::size_t designated_stage_for(const WeightVector& weights) {
    if (weights.empty()) throw std::invalid_argument("empty weight vector");
    return static_cast<std::size_t>(
        std::max_element(weights.begin(), weights.end()) - weights.begin());
}

struct TieBreakResult {
    // Still-tied subsets in final order; a singleton means fully placed.
    std::vector<std::vector<std::string>> ordered_groups;
    std::vector<TieResolutionRecord> records;
};

namespace detail {

inline std::vector<std::string> names_of(const std::vector<Competitor>& group) {
    std::vector<std::string> v;
    v.reserve(group.size());
    for (const auto& c : group) v.push_back(c.name);
    return v;
}

// Head-to-head is defined for pairs only: whoever takes strictly more stages
// than half of them goes first. Anything else passes.
inline std::optional<bool> head_to_head_first_wins(const Competitor& a, const Competitor& b) {
    std::size_t wins_a = 0, wins_b = 0;
    for (std::size_t i = 0; i < a.ranks.size(); ++i) {
        if (a.ranks[i] < b.ranks[i]) ++wins_a;
        else if (b.ranks[i] < a.ranks[i]) ++wins_b;
    }
    const std::size_t stages = a.ranks.size();
    if (2 * wins_a > stages) return true;
    if (2 * wins_b > stages) return false;
    return std::nullopt;
}

// Order the group by a per-member key; members without a key trail as one
// unresolved block, members sharing a key stay together.
template <typename KeyOf>
std::vector<std::vector<Competitor>> partition_by_key(const std::vector<Competitor>& group,
                                                      KeyOf&& key_of) {
    std::map<std::int64_t, std::vector<Competitor>> keyed;
    std::vector<Competitor> keyless;
    for (const auto& c : group) {
        if (auto k = key_of(c)) keyed[*k].push_back(c);
        else keyless.push_back(c);
    }
    std::vector<std::vector<Competitor>> parts;
    for (auto& [k, members] : keyed) parts.push_back(std::move(members));
    if (!keyless.empty()) parts.push_back(std::move(keyless));
    return parts;
}

inline void resolve(const std::vector<Competitor>& group, const TieBreakChain& chain,
                    std::size_t policy_index, const EventField& context, TieBreakResult& out) {
    if (group.size() < 2) {
        out.ordered_groups.push_back(names_of(group));
        return;
    }
    if (policy_index >= chain.size()) {
        out.ordered_groups.push_back(names_of(group));  // implicit shared rank
        return;
    }

    const TieBreakPolicy& policy = chain[policy_index];
    TieResolutionRecord record;
    record.group = names_of(group);
    record.policy = policy.name();

    std::vector<std::vector<Competitor>> parts;
    switch (policy.kind) {
    case TieBreakPolicy::Kind::SharedRank:
        record.resolved = false;
        out.records.push_back(std::move(record));
        out.ordered_groups.push_back(names_of(group));
        return;
    case TieBreakPolicy::Kind::HeadToHead:
        if (group.size() == 2) {
            if (auto first_wins = head_to_head_first_wins(group[0], group[1])) {
                parts = *first_wins
                            ? std::vector<std::vector<Competitor>>{{group[0]}, {group[1]}}
                            : std::vector<std::vector<Competitor>>{{group[1]}, {group[0]}};
            }
        }
        break;
    case TieBreakPolicy::Kind::CountBack: {
        const ReferenceStandings* ref = policy.reference ? &*policy.reference
                                        : context.reference_standings ? &*context.reference_standings
                                                                      : nullptr;
        if (!ref)
            throw ConfigError("count-back requires reference standings and none are available");
        parts = partition_by_key(group, [&](const Competitor& c) -> std::optional<std::int64_t> {
            auto r = ref->rank_of(c.name);
            if (!r) return std::nullopt;
            return static_cast<std::int64_t>(*r);
        });
        break;
    }
    case TieBreakPolicy::Kind::DesignatedStage: {
        if (policy.stage >= context.stage_count())
            throw ConfigError("designated tie-break stage " + std::to_string(policy.stage + 1) +
                              " does not exist");
        parts = partition_by_key(group, [&](const Competitor& c) -> std::optional<std::int64_t> {
            return c.ranks[policy.stage].twice();
        });
        break;
    }
    }

    if (parts.size() <= 1) {
        // Policy could not separate anyone; hand the whole group on.
        record.resolved = false;
        out.records.push_back(std::move(record));
        resolve(group, chain, policy_index + 1, context, out);
        return;
    }

    record.resolved = true;
    for (const auto& part : parts)
        for (const auto& c : part) record.outcome.push_back(c.name);
    out.records.push_back(std::move(record));
    for (const auto& part : parts) resolve(part, chain, policy_index + 1, context, out);
}

} // namespace detail

// Resolve one tie group as far as the chain allows. Members keep their
// scores; only their relative placement changes.
inline TieBreakResult break_tie(const std::vector<Competitor>& group, const TieBreakChain& chain,
                                const EventField& context) {
    if (group.size() < 2) throw std::invalid_argument("a tie group has at least two members");
    TieBreakResult result;
    detail::resolve(group, chain, 0, context, result);
    return result;
}

// Run the chain over every tie group in the standings, reorder entries, and
// renumber. Scores and membership are untouched.
inline Standings apply_chain(const Standings& standings, const TieBreakChain& chain,
                             const EventField& context) {
    Standings result;
    result.tie_resolutions = standings.tie_resolutions;
    result.entries.reserve(standings.entries.size());

    std::size_t i = 0;
    int next_group = 0;
    while (i < standings.entries.size()) {
        std::size_t j = i;
        while (j < standings.entries.size() &&
               standings.entries[j].tie_group == standings.entries[i].tie_group)
            ++j;

        if (j - i < 2) {
            result.entries.push_back(standings.entries[i]);
            result.entries.back().tie_group = next_group++;
        } else {
            std::vector<Competitor> group;
            for (std::size_t k = i; k < j; ++k) {
                const Competitor* c = context.find(standings.entries[k].name);
                group.push_back(c ? *c
                                  : Competitor{standings.entries[k].name,
                                               standings.entries[k].ranks});
            }
            TieBreakResult broken = break_tie(group, chain, context);
            for (auto& rec : broken.records) result.tie_resolutions.push_back(std::move(rec));
            for (const auto& subgroup : broken.ordered_groups) {
                for (const auto& name : subgroup) {
                    auto it = std::find_if(standings.entries.begin() + i,
                                           standings.entries.begin() + j,
                                           [&](const StandingsEntry& e) { return e.name == name; });
                    result.entries.push_back(*it);
                    result.entries.back().tie_group = next_group;
                }
                ++next_group;
            }
        }
        i = j;
    }

    renumber(result.entries);
    return result;
}

} // namespace rankforge

#endif

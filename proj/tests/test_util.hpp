#ifndef RANKFORGE_TEST_UTIL_HPP
#define RANKFORGE_TEST_UTIL_HPP

// Shared test helpers. The oracles here deliberately avoid the library's own
// code paths: square roots come from integer Newton iteration, Kendall
// distances from quadratic pair enumeration.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rankforge/rank.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/standings.hpp"

namespace testutil {

// floor(sqrt(v)) by Newton iteration on unsigned 128-bit integers.
inline unsigned __int128 isqrt(unsigned __int128 v) {
    if (v < 2) return v;
    unsigned __int128 x = v, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + v / x) / 2;
    }
    return x;
}

// sqrt(x) to six decimal places, independent of std::pow/std::sqrt.
inline double oracle_sqrt(double x) {
    const auto scaled = static_cast<unsigned __int128>(x * 1e12 + 0.5);
    return static_cast<double>(static_cast<std::uint64_t>(isqrt(scaled))) / 1e6;
}

// Discordant pairs by direct enumeration.
inline std::int64_t kendall_oracle(const std::vector<std::string>& order_a,
                                   const std::vector<std::string>& order_b) {
    std::map<std::string, std::size_t> pos_b;
    for (std::size_t i = 0; i < order_b.size(); ++i) pos_b[order_b[i]] = i;
    std::int64_t discordant = 0;
    for (std::size_t i = 0; i < order_a.size(); ++i)
        for (std::size_t j = i + 1; j < order_a.size(); ++j)
            if (pos_b.at(order_a[i]) > pos_b.at(order_a[j])) ++discordant;
    return discordant;
}

inline std::vector<std::string> placement_order(const rankforge::Standings& s) {
    std::vector<std::string> names;
    for (const auto& e : s.entries) names.push_back(e.name);
    return names;
}

// A random stage column that exercises shared ranks: consecutive places are
// merged into tie groups and every member carries the group average.
inline std::vector<rankforge::Rank> random_stage_column(std::size_t n, rankforge::SplitMix64& rng,
                                                        bool allow_ties) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(order[i], order[j]);
    }
    std::vector<rankforge::Rank> column(n, rankforge::Rank::of(1));
    std::size_t place = 1, i = 0;
    while (i < n) {
        std::size_t group = 1;
        if (allow_ties && i + 1 < n && rng.below(4) == 0) group = 2 + rng.below(2);
        if (group > n - i) group = n - i;
        // k members at places place..place+k-1 all carry the average.
        const std::int64_t twice = static_cast<std::int64_t>(2 * place + group - 1);
        for (std::size_t g = 0; g < group; ++g)
            column[order[i + g]] = rankforge::Rank::from_twice(twice);
        place += group;
        i += group;
    }
    return column;
}

inline rankforge::EventField random_field(std::size_t n, std::size_t stages,
                                          rankforge::SplitMix64& rng, bool allow_ties) {
    std::vector<rankforge::Competitor> competitors(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::string id = std::to_string(c + 1);
        while (id.size() < 2) id.insert(id.begin(), '0');
        competitors[c].name = "p" + id;
    }
    for (std::size_t s = 0; s < stages; ++s) {
        const auto column = random_stage_column(n, rng, allow_ties);
        for (std::size_t c = 0; c < n; ++c) competitors[c].ranks.push_back(column[c]);
    }
    return rankforge::make_field(stages, std::move(competitors));
}

} // namespace testutil

#endif

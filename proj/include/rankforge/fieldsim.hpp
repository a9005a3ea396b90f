#ifndef RANKFORGE_FIELDSIM_HPP
#define RANKFORGE_FIELDSIM_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rankforge/rank.hpp"
#include "rankforge/rational.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/scoring.hpp"

namespace rankforge {

// The competitor under study ("subject") gets pinned placements in some
// stages and uniform luck in the rest. The B. Mawem shape, for instance,
// forces a win in stage 1 and near-last finishes elsewhere.
struct SpecialistProfile {
    std::map<std::size_t, int> forced_ranks;  // 0-based stage -> integer rank
};

struct SimConfig {
    std::size_t field_size = 20;
    std::size_t stages = 3;
    std::size_t cut = 8;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    std::vector<ScoringSystem> methods;
};

struct MethodEstimate {
    std::string method;
    double estimate = 0.0;   // P(subject finishes in the top cut)
    double std_error = 0.0;  // sqrt(p(1-p)/trials)
};

struct SimResult {
    std::vector<MethodEstimate> per_method;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

inline const std::string kSimSubjectName = "subject";

namespace detail {

inline void check_profile(const SpecialistProfile& profile, std::size_t n, std::size_t s) {
    for (const auto& [stage, rank] : profile.forced_ranks) {
        if (stage >= s)
            throw std::invalid_argument("forced rank names stage " + std::to_string(stage + 1) +
                                        " of " + std::to_string(s));
        if (rank < 1 || static_cast<std::size_t>(rank) > n)
            throw std::invalid_argument("forced rank " + std::to_string(rank) +
                                        " outside 1.." + std::to_string(n));
    }
}

} // namespace detail

// One synthetic event: every stage an independent uniform permutation, then
// the subject (competitor 0) swaps into any forced placement, the displaced
// competitor taking the subject's draw. No shared ranks are produced.
inline EventField generate_field(std::size_t n, std::size_t s, const SpecialistProfile& profile,
                                 SplitMix64& rng) {
    if (n == 0 || s == 0) throw std::invalid_argument("field needs n >= 1 and s >= 1");
    detail::check_profile(profile, n, s);

    EventField field;
    field.stage_names.reserve(s);
    for (std::size_t i = 1; i <= s; ++i) field.stage_names.push_back("stage_" + std::to_string(i));
    field.competitors.resize(n);
    field.competitors[0].name = kSimSubjectName;
    for (std::size_t c = 1; c < n; ++c) {
        std::string id = std::to_string(c + 1);
        if (id.size() < 2) id.insert(id.begin(), '0');
        field.competitors[c].name = "c" + id;
    }

    std::vector<int> placement(n);
    for (std::size_t stage = 0; stage < s; ++stage) {
        for (std::size_t i = 0; i < n; ++i) placement[i] = static_cast<int>(i + 1);
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
            std::swap(placement[i], placement[j]);
        }
        if (auto it = profile.forced_ranks.find(stage); it != profile.forced_ranks.end()) {
            const int forced = it->second;
            for (std::size_t i = 0; i < n; ++i) {
                if (placement[i] == forced) {
                    std::swap(placement[0], placement[i]);
                    break;
                }
            }
        }
        for (std::size_t c = 0; c < n; ++c)
            field.competitors[c].ranks.push_back(Rank::of(placement[c]));
    }
    return field;
}

// Monte Carlo estimate of the subject's qualification probability under each
// method, on a shared stream of fields so methods see identical luck.
//
// Per trial the subject earns 1 if safely inside the cut, 0 if outside, and
// a fair fraction of the remaining slots if a tie straddles the cut. Credits
// accumulate as exact rationals, so the result is independent of trial order
// and of how trials might be spread across threads.
inline SimResult simulate_qualification(const SimConfig& config,
                                        const SpecialistProfile& profile) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (config.cut > config.field_size) throw std::invalid_argument("cut exceeds field size");
    if (config.methods.empty()) throw std::invalid_argument("no scoring methods configured");
    detail::check_profile(profile, config.field_size, config.stages);

    std::vector<Rational> credit(config.methods.size(), Rational{0});
    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        SplitMix64 rng = SplitMix64::for_trial(config.seed, trial);
        const EventField field =
            generate_field(config.field_size, config.stages, profile, rng);
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            const Standings standings = rank_field(field, config.methods[m]);
            const StandingsEntry* subject = standings.find(kSimSubjectName);
            const auto ahead = static_cast<std::int64_t>(subject->rank - 1);
            const auto group = static_cast<std::int64_t>(standings.tie_group_size(subject->tie_group));
            const auto cut = static_cast<std::int64_t>(config.cut);
            if (ahead + group <= cut) credit[m] += Rational{1};
            else if (ahead < cut) credit[m] += Rational::of(cut - ahead, group);
        }
    }

    SimResult result;
    result.trials = config.trials;
    result.seed = config.seed;
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        const double p =
            (credit[m] * Rational::of(1, static_cast<std::int64_t>(config.trials))).to_double();
        result.per_method.push_back(
            {config.methods[m].label, p,
             std::sqrt(p * (1.0 - p) / static_cast<double>(config.trials))});
    }
    return result;
}

} // namespace rankforge

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankforge/dataset.hpp"
#include "rankforge/scoring.hpp"
#include "rankforge/tiebreak.hpp"
#include "test_util.hpp"

using namespace rankforge;

namespace {

RankVector ranks(std::initializer_list<double> values) {
    RankVector rv;
    for (double v : values) rv.push_back(Rank::of(v));
    return rv;
}

TieBreakChain h2h_chain() {
    return {TieBreakPolicy::head_to_head(), TieBreakPolicy::shared_rank()};
}

} // namespace

TEST_CASE("head-to-head resolves pairs by stage majority") {
    const EventField finals = embedded_dataset("women-finals");

    // Noguchi (4,4,4) beats Miroslaw (1,8,8) in two stages of three.
    const std::vector<Competitor> pair = {{"Miroslaw", ranks({1, 8, 8})},
                                          {"Noguchi", ranks({4, 4, 4})}};
    const TieBreakResult result = break_tie(pair, h2h_chain(), finals);
    REQUIRE(result.ordered_groups.size() == 2);
    CHECK(result.ordered_groups[0] == std::vector<std::string>{"Noguchi"});
    CHECK(result.ordered_groups[1] == std::vector<std::string>{"Miroslaw"});
    REQUIRE(!result.records.empty());
    CHECK(result.records[0].policy == "head2head");
    CHECK(result.records[0].resolved);

    const std::vector<Competitor> pair2 = {{"Jaubert", ranks({2, 6, 7})},
                                           {"Raboutou", ranks({7, 2, 6})}};
    const TieBreakResult result2 = break_tie(pair2, h2h_chain(), finals);
    CHECK(result2.ordered_groups[0] == std::vector<std::string>{"Raboutou"});

    // identical vectors: symmetry forces a pass, both keep the shared rank
    const std::vector<Competitor> same = {{"a", ranks({2, 3})}, {"b", ranks({2, 3})}};
    const TieBreakResult unresolved = break_tie(same, h2h_chain(), make_field(2, {}));
    REQUIRE(unresolved.ordered_groups.size() == 1);
    CHECK(unresolved.ordered_groups[0].size() == 2);
}

TEST_CASE("head-to-head is antisymmetric") {
    SplitMix64 rng(11);
    const EventField context = make_field(3, {});
    for (int round = 0; round < 300; ++round) {
        RankVector a, b;
        for (int s = 0; s < 3; ++s) {
            a.push_back(Rank::from_twice(2 + static_cast<std::int64_t>(rng.below(20))));
            b.push_back(Rank::from_twice(2 + static_cast<std::int64_t>(rng.below(20))));
        }
        TieBreakResult ab = break_tie({{"A", a}, {"B", b}}, h2h_chain(), context);
        TieBreakResult ba = break_tie({{"B", b}, {"A", a}}, h2h_chain(), context);
        REQUIRE(ab.ordered_groups.size() == ba.ordered_groups.size());
        // members of an unresolved group stay unordered
        for (auto& g : ab.ordered_groups) std::sort(g.begin(), g.end());
        for (auto& g : ba.ordered_groups) std::sort(g.begin(), g.end());
        CHECK(ab.ordered_groups == ba.ordered_groups);

        // with three distinct stage ranks a pair always resolves
        bool any_shared_stage = false;
        for (int s = 0; s < 3; ++s) any_shared_stage |= (a[s] == b[s]);
        if (!any_shared_stage) CHECK(ab.ordered_groups.size() == 2);
    }
}

TEST_CASE("apply_chain on the women's finals product tie") {
    const EventField finals = embedded_dataset("women-finals");
    const Standings standings = rank_field(finals, product_system().with_chain(h2h_chain()));

    CHECK(standings.find("Noguchi")->rank == 3);
    CHECK(standings.find("Miroslaw")->rank == 4);
    CHECK(standings.find("Raboutou")->rank == 5);
    CHECK(standings.find("Jaubert")->rank == 6);

    // resolution left scores alone
    CHECK(standings.find("Noguchi")->score.exact == Rational{64});
    CHECK(standings.find("Miroslaw")->score.exact == Rational{64});

    bool recorded = false;
    for (const auto& rec : standings.tie_resolutions)
        recorded |= (rec.policy == "head2head" && rec.resolved);
    CHECK(recorded);
}

TEST_CASE("head-to-head skips groups larger than two") {
    const EventField finals = embedded_dataset("men-finals");
    const Standings standings = rank_field(finals, sum_system().with_chain(h2h_chain()));

    // five climbers tied on 12 stay tied; Schubert's 13 lands at rank 7
    CHECK(standings.find("Narasaki")->rank == 1);
    for (const char* name : {"Ginés López", "Coleman", "M. Mawem", "Ondra", "Duffy"})
        CHECK(standings.find(name)->rank == 2);
    CHECK(standings.find("Schubert")->rank == 7);
}

TEST_CASE("count-back orders by reference standings") {
    const EventField prelims = embedded_dataset("men-prelims");
    REQUIRE(prelims.reference_standings.has_value());

    const TieBreakChain chain = {TieBreakPolicy::count_back()};
    const Standings standings = rank_field(prelims, sum_system().with_chain(chain));

    // sum ties: Megos/Chon at 31 (qualified 9th/10th), Rubtsov/Pan/Cosser at
    // 35 (13th/14th/16th)
    CHECK(standings.find("Megos")->rank == 9);
    CHECK(standings.find("Chon")->rank == 10);
    CHECK(standings.find("Rubtsov")->rank == 13);
    CHECK(standings.find("Pan")->rank == 14);
    CHECK(standings.find("Cosser")->rank == 15);

    // count-back without any reference is a configuration error
    const EventField wfinals = embedded_dataset("women-finals");
    CHECK_THROWS_AS(rank_field(wfinals, sum_system().with_chain(chain)), ConfigError);

    // members absent from the reference pass through unresolved
    ReferenceStandings partial;
    partial.rank_by_name["b"] = 1;
    const std::vector<Competitor> group = {{"a", ranks({1, 2})},
                                           {"b", ranks({2, 1})},
                                           {"c", ranks({3, 3})}};
    const TieBreakResult result =
        break_tie(group, {TieBreakPolicy::count_back(partial)}, make_field(2, {}));
    REQUIRE(result.ordered_groups.size() == 2);
    CHECK(result.ordered_groups[0] == std::vector<std::string>{"b"});
    CHECK(result.ordered_groups[1].size() == 2);
}

TEST_CASE("designated stage settles weighted ties") {
    // figure-skating shape: linear score, long program (stage 2) doubled,
    // ties broken by the long program
    CHECK(designated_stage_for({1.0, 2.0}) == 1);

    EventField field = make_field(2, {{"silver", ranks({1, 2})}, {"gold", ranks({3, 1})}});
    ScoringSystem system = sum_system().with_weights({1.0, 2.0});
    system.chain = {TieBreakPolicy::designated_stage(designated_stage_for({1.0, 2.0}))};

    const Standings standings = rank_field(field, system);
    CHECK(standings.find("gold")->score.exact == Rational{5});
    CHECK(standings.find("silver")->score.exact == Rational{5});
    CHECK(standings.find("gold")->rank == 1);
    CHECK(standings.find("silver")->rank == 2);

    CHECK_THROWS_AS(rank_field(field, system.with_chain({TieBreakPolicy::designated_stage(5)})),
                    ConfigError);
}

TEST_CASE("chains change placement only") {
    const EventField prelims = embedded_dataset("men-prelims");
    const Standings raw = rank_field(prelims, sum_system());
    const Standings broken = rank_field(
        prelims, sum_system().with_chain({TieBreakPolicy::head_to_head(),
                                          TieBreakPolicy::count_back(),
                                          TieBreakPolicy::shared_rank()}));
    REQUIRE(raw.entries.size() == broken.entries.size());
    for (const auto& e : raw.entries) {
        const StandingsEntry* after = broken.find(e.name);
        REQUIRE(after != nullptr);
        CHECK(after->score.exact == e.score.exact);
    }

    // no ties, no change
    const EventField mfinals = embedded_dataset("men-finals");
    const Standings a = rank_field(mfinals, product_system());
    const Standings b = rank_field(mfinals, product_system().with_chain(h2h_chain()));
    CHECK(testutil::placement_order(a) == testutil::placement_order(b));
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        CHECK(a.entries[i].rank == b.entries[i].rank);
}

TEST_CASE("numbering stays consistent after resolution") {
    // resolved pairs take consecutive numbers; surviving groups share the
    // first position of the group
    const EventField finals = embedded_dataset("women-finals");
    for (const auto& system : {sum_system(), product_system(), sqrt_system()}) {
        const Standings standings = rank_field(finals, system.with_chain(h2h_chain()));
        std::size_t position = 0;
        std::size_t group_start = 0;
        for (std::size_t i = 0; i < standings.entries.size(); ++i) {
            if (standings.entries[i].tie_group != standings.entries[group_start].tie_group)
                group_start = i;
            CHECK(standings.entries[i].rank == static_cast<int>(group_start) + 1);
            ++position;
        }
        (void)position;
    }
}

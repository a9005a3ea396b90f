#ifndef RANKFORGE_RANK_HPP
#define RANKFORGE_RANK_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rankforge/rational.hpp"

namespace rankforge {

// A placement within one discipline. Shared placements carry the average of
// the positions they occupy, so ranks are half-integers; we store twice the
// value to keep them exact (19.5 -> 39).
class Rank {
  public:
    static Rank of(double value) {
        const double doubled = value * 2.0;
        if (!(value >= 1.0) || doubled != std::floor(doubled) || doubled > 1e15)
            throw std::domain_error("rank must be a half-integer >= 1, got " + std::to_string(value));
        return Rank(static_cast<std::int64_t>(doubled));
    }
    static Rank from_twice(std::int64_t twice_value) {
        if (twice_value < 2)
            throw std::domain_error("rank must be >= 1");
        return Rank(twice_value);
    }

    double value() const { return static_cast<double>(twice_) / 2.0; }
    std::int64_t twice() const { return twice_; }
    bool is_integer() const { return twice_ % 2 == 0; }
    Rational exact() const { return Rational::of(twice_, 2); }

    // "13" or "19.5"
    std::string to_string() const {
        std::string s = std::to_string(twice_ / 2);
        if (twice_ % 2 != 0) s += ".5";
        return s;
    }

    friend auto operator<=>(const Rank&, const Rank&) = default;

  private:
    explicit Rank(std::int64_t twice_value) : twice_(twice_value) {}
    std::int64_t twice_;
};

// One rank per stage, in stage order.
using RankVector = std::vector<Rank>;

// Per-stage multipliers; all positive, all 1 for the unweighted case.
using WeightVector = std::vector<double>;

inline WeightVector unit_weights(std::size_t stages) { return WeightVector(stages, 1.0); }

inline void check_weights(const WeightVector& w) {
    for (double x : w)
        if (!(x > 0.0)) throw std::invalid_argument("weights must be positive");
}

struct Competitor {
    std::string name;
    RankVector ranks;
};

// Name -> rank in some earlier round; the lookup table count-back needs.
struct ReferenceStandings {
    std::map<std::string, int> rank_by_name;

    std::optional<int> rank_of(std::string_view name) const {
        auto it = rank_by_name.find(std::string(name));
        if (it == rank_by_name.end()) return std::nullopt;
        return it->second;
    }
};

struct EventField {
    std::vector<std::string> stage_names;
    std::vector<Competitor> competitors;
    std::optional<ReferenceStandings> reference_standings;

    std::size_t stage_count() const { return stage_names.size(); }
    std::size_t size() const { return competitors.size(); }

    const Competitor* find(std::string_view name) const {
        for (const auto& c : competitors)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Field with auto-named stages, for programmatic construction.
inline EventField make_field(std::size_t stages, std::vector<Competitor> competitors) {
    EventField field;
    field.stage_names.reserve(stages);
    for (std::size_t i = 1; i <= stages; ++i)
        field.stage_names.push_back("stage_" + std::to_string(i));
    field.competitors = std::move(competitors);
    return field;
}

} // namespace rankforge

#endif

#ifndef RANKFORGE_SCORE_FUNCTION_HPP
#define RANKFORGE_SCORE_FUNCTION_HPP

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankforge/rank.hpp"
#include "rankforge/rational.hpp"

namespace rankforge {

// A monotone increasing map from rank to points. Lower is better throughout,
// so monotonicity is what makes a worse placement cost more.
//
// Linear and tables whose entries are all half-integers can also be evaluated
// exactly; everything else is double-only.
class ScoreFunction {
  public:
    enum class Kind { Linear, Power, Logarithmic, Table, Affine };

    static ScoreFunction linear() { return ScoreFunction(std::make_shared<Node>(Node{Kind::Linear})); }

    // f(j) = j^p with 0 < p <= 1; p = 1 behaves like linear.
    static ScoreFunction power(double exponent) {
        if (!(exponent > 0.0) || !(exponent <= 1.0))
            throw std::invalid_argument("power exponent must be in (0, 1]");
        Node n{Kind::Power};
        n.exponent = exponent;
        return ScoreFunction(std::make_shared<Node>(std::move(n)));
    }

    static ScoreFunction sqrt() { return power(0.5); }

    static ScoreFunction logarithmic() { return ScoreFunction(std::make_shared<Node>(Node{Kind::Logarithmic})); }

    // Explicit rank -> points table. Entries must be strictly increasing in
    // rank; evaluation outside the listed ranks is a domain error.
    static ScoreFunction table(const std::vector<std::pair<Rank, double>>& entries) {
        if (entries.empty()) throw std::invalid_argument("score table needs at least one entry");
        Node n{Kind::Table};
        n.exact_table = true;
        for (const auto& [rank, points] : entries) {
            if (!n.table.emplace(rank.twice(), points).second)
                throw std::invalid_argument("duplicate table entry for rank " + rank.to_string());
            if (points * 2.0 != std::floor(points * 2.0)) n.exact_table = false;
        }
        const double* prev = nullptr;
        for (const auto& [twice, points] : n.table) {
            if (prev && !(*prev < points))
                throw std::invalid_argument("score table is not strictly increasing at rank " +
                                            Rank::from_twice(twice).to_string());
            prev = &points;
        }
        return ScoreFunction(std::make_shared<Node>(std::move(n)));
    }

    // offset + scale * base(j); scale must be positive so rankings survive.
    static ScoreFunction affine(ScoreFunction base, double offset, double scale) {
        if (!(scale > 0.0)) throw std::invalid_argument("affine scale must be positive");
        Node n{Kind::Affine};
        n.offset = offset;
        n.scale = scale;
        n.base = base.node_;
        return ScoreFunction(std::make_shared<Node>(std::move(n)));
    }

    Kind kind() const { return node_->kind; }

    double operator()(Rank r) const { return eval_twice(r.twice()); }

    // Evaluation at an arbitrary real point >= 1. Tables only hold
    // half-integer keys, so they reject anything else.
    double eval_at(double x) const {
        if (!(x >= 1.0)) throw std::domain_error("score functions are defined for ranks >= 1");
        const Node& n = *node_;
        switch (n.kind) {
        case Kind::Linear: return x;
        case Kind::Power: return std::pow(x, n.exponent);
        case Kind::Logarithmic: return std::log(x);
        case Kind::Affine: return n.offset + n.scale * ScoreFunction(n.base).eval_at(x);
        case Kind::Table: {
            const double doubled = x * 2.0;
            if (doubled != std::floor(doubled))
                throw std::domain_error("score table has no entry at " + std::to_string(x));
            return eval_twice(static_cast<std::int64_t>(doubled));
        }
        }
        throw std::logic_error("unreachable");
    }

    // True when eval_exact is available for every rank in the domain.
    bool exact_capable() const {
        switch (node_->kind) {
        case Kind::Linear: return true;
        case Kind::Table: return node_->exact_table;
        default: return false;
        }
    }

    Rational eval_exact(Rank r) const {
        const Node& n = *node_;
        if (n.kind == Kind::Linear) return r.exact();
        if (n.kind == Kind::Table && n.exact_table) {
            auto it = n.table.find(r.twice());
            if (it == n.table.end())
                throw std::domain_error("score table has no entry for rank " + r.to_string());
            return Rational::of(static_cast<std::int64_t>(it->second * 2.0), 2);
        }
        throw std::logic_error("eval_exact on a non-exact score function");
    }

    std::string describe() const {
        const Node& n = *node_;
        switch (n.kind) {
        case Kind::Linear: return "linear";
        case Kind::Power: {
            if (n.exponent == 0.5) return "sqrt";
            std::string p = std::to_string(n.exponent);
            while (p.size() > 1 && p.back() == '0') p.pop_back();
            if (p.back() == '.') p.pop_back();
            return "power(" + p + ")";
        }
        case Kind::Logarithmic: return "log";
        case Kind::Table: return "table[" + std::to_string(n.table.size()) + "]";
        case Kind::Affine: return "affine(" + ScoreFunction(n.base).describe() + ")";
        }
        return "?";
    }

  private:
    struct Node {
        Kind kind;
        double exponent = 1.0;                 // Power
        double offset = 0.0, scale = 1.0;      // Affine
        std::map<std::int64_t, double> table;  // Table, keyed by 2*rank
        bool exact_table = false;
        std::shared_ptr<const Node> base;      // Affine
    };

    explicit ScoreFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    double eval_twice(std::int64_t twice) const {
        const Node& n = *node_;
        switch (n.kind) {
        case Kind::Linear: return static_cast<double>(twice) / 2.0;
        case Kind::Power: return std::pow(static_cast<double>(twice) / 2.0, n.exponent);
        case Kind::Logarithmic: return std::log(static_cast<double>(twice) / 2.0);
        case Kind::Affine: return n.offset + n.scale * ScoreFunction(n.base).eval_twice(twice);
        case Kind::Table: {
            auto it = n.table.find(twice);
            if (it == n.table.end())
                throw std::domain_error("score table has no entry for rank " +
                                        Rank::from_twice(twice).to_string());
            return it->second;
        }
        }
        throw std::logic_error("unreachable");
    }

    std::shared_ptr<const Node> node_;
};

} // namespace rankforge

#endif

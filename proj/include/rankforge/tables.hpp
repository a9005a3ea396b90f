#ifndef RANKFORGE_TABLES_HPP
#define RANKFORGE_TABLES_HPP

#include <cmath>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "rankforge/errors.hpp"
#include "rankforge/score_function.hpp"
#include "rankforge/scoring.hpp"

namespace rankforge {

// Pin a function's endpoints: returns offset + scale * f with g(1) = lo and
// g(n) = hi. Rankings are unaffected because the scale comes out positive.
inline ScoreFunction affine_normalize(const ScoreFunction& f, int n, double lo, double hi) {
    if (n < 2) throw std::invalid_argument("affine normalization needs a field of at least 2");
    if (!(lo < hi)) throw std::invalid_argument("affine normalization needs lo < hi");
    const double f1 = f.eval_at(1.0);
    const double fn = f.eval_at(static_cast<double>(n));
    if (fn == f1) throw std::domain_error("degenerate score function: f(n) == f(1)");
    const double scale = (hi - lo) / (fn - f1);
    const double offset = lo - scale * f1;
    return ScoreFunction::affine(f, offset, scale);
}

// Integer points per rank, standing in for a continuous score function.
struct ScoringTable {
    int n = 0;
    std::vector<std::int64_t> points;  // points[j-1] for rank j, strictly increasing

    // provenance
    std::string base;
    double scale = 1.0;
    double offset = 0.0;
    std::string rounding = "nearest";

    ScoreFunction as_function() const {
        std::vector<std::pair<Rank, double>> entries;
        entries.reserve(points.size());
        for (int j = 1; j <= n; ++j)
            entries.emplace_back(Rank::of(j), static_cast<double>(points[j - 1]));
        return ScoreFunction::table(entries);
    }

    std::string to_csv() const {
        std::string out = "rank,points\n";
        for (int j = 1; j <= n; ++j)
            out += std::to_string(j) + "," + std::to_string(points[j - 1]) + "\n";
        return out;
    }

    static ScoringTable from_csv(std::istream& in) {
        ScoringTable table;
        table.base = "file";
        std::string line;
        if (!std::getline(in, line) || (line != "rank,points" && line != "rank,points\r"))
            throw ParseError("scoring table: expected header 'rank,points'");
        int row = 1;
        while (std::getline(in, line)) {
            ++row;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw ParseError("scoring table row " + std::to_string(row) + ": missing comma");
            int rank = 0;
            std::int64_t pts = 0;
            try {
                std::size_t used = 0;
                rank = std::stoi(line.substr(0, comma), &used);
                if (used != comma) throw std::invalid_argument("");
                const std::string rest = line.substr(comma + 1);
                pts = std::stoll(rest, &used);
                if (used != rest.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("scoring table row " + std::to_string(row) + ": malformed number");
            }
            if (rank != table.n + 1)
                throw ValidationError("scoring table row " + std::to_string(row) +
                                      ": expected rank " + std::to_string(table.n + 1));
            if (table.n > 0 && pts <= table.points.back())
                throw std::domain_error("scoring table not strictly increasing: ranks " +
                                        std::to_string(table.n) + " and " + std::to_string(rank));
            table.points.push_back(pts);
            table.n = rank;
        }
        if (table.n < 1) throw ValidationError("scoring table has no rows");
        return table;
    }
};

// round(scale * f(j) + offset) for j = 1..n, half away from zero. If rounding
// collapses or inverts two adjacent ranks the table is refused: a table that
// does not preserve the function's order is not a stand-in for it.
inline ScoringTable generate_table(const ScoreFunction& f, int n, double scale, double offset) {
    if (n < 2) throw std::invalid_argument("scoring table needs n >= 2");
    if (!(scale > 0.0)) throw std::invalid_argument("scoring table scale must be positive");
    ScoringTable table;
    table.n = n;
    table.base = f.describe();
    table.scale = scale;
    table.offset = offset;
    table.points.reserve(n);
    for (int j = 1; j <= n; ++j) {
        const std::int64_t pts = std::llround(scale * f.eval_at(static_cast<double>(j)) + offset);
        if (j > 1 && pts <= table.points.back())
            throw std::domain_error("scoring table degenerates: ranks " + std::to_string(j - 1) +
                                    " and " + std::to_string(j) + " both round to " +
                                    std::to_string(table.points.back()) + "/" + std::to_string(pts) +
                                    "; increase the scale");
        table.points.push_back(pts);
    }
    return table;
}

struct TableEquivalenceResult {
    std::string field_name;
    bool identical = false;
    std::vector<std::string> mismatches;  // human-readable group differences
};

struct TableEquivalenceReport {
    std::vector<TableEquivalenceResult> per_field;
    bool all_identical = true;
};

// Rounding can merge scores that differed or (for ties that were exact)
// split them, so equivalence with the underlying function is checked per
// field, not assumed.
inline TableEquivalenceReport table_ranking_equivalence(
    const ScoringTable& table, const ScoreFunction& f,
    const std::vector<std::pair<std::string, EventField>>& fields) {
    TableEquivalenceReport report;
    const ScoringSystem via_table = function_system(table.as_function(), "table");
    const ScoringSystem via_function = function_system(f, "base");
    for (const auto& [name, field] : fields) {
        TableEquivalenceResult result;
        result.field_name = name;
        const auto groups_table = tie_structure(rank_field(field, via_table));
        const auto groups_function = tie_structure(rank_field(field, via_function));
        result.identical = groups_table == groups_function;
        if (!result.identical) {
            const std::size_t common = std::min(groups_table.size(), groups_function.size());
            for (std::size_t g = 0; g < common; ++g) {
                if (groups_table[g] == groups_function[g]) continue;
                std::string line = "group " + std::to_string(g + 1) + ": table {";
                for (const auto& m : groups_table[g]) line += m + ",";
                line.back() = '}';
                line += " vs function {";
                for (const auto& m : groups_function[g]) line += m + ",";
                line.back() = '}';
                result.mismatches.push_back(std::move(line));
            }
            if (groups_table.size() != groups_function.size())
                result.mismatches.push_back("tie group counts differ: " +
                                            std::to_string(groups_table.size()) + " vs " +
                                            std::to_string(groups_function.size()));
            report.all_identical = false;
        }
        report.per_field.push_back(std::move(result));
    }
    return report;
}

} // namespace rankforge

#endif

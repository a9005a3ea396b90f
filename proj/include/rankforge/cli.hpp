#ifndef RANKFORGE_CLI_HPP
#define RANKFORGE_CLI_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if !defined(_WIN32)
#include <unistd.h>
#endif

#include <CLI11.hpp>

#include "rankforge/analysis.hpp"
#include "rankforge/dataset.hpp"
#include "rankforge/fieldsim.hpp"
#include "rankforge/scoring.hpp"
#include "rankforge/tables.hpp"

namespace rankforge::cli {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kMethodGrammar =
    "sum | product | log | sqrt | power:<p> | table:<path>";
inline constexpr const char* kPolicyGrammar = "head2head | countback | stage:<i> | shared";

namespace detail {

inline std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) { parts.push_back(current); current.clear(); }
        else current += c;
    }
    parts.push_back(current);
    return parts;
}

// ANSI styling is cosmetic only; it turns itself off when not writing to a
// terminal or when RANKFORGE_NO_COLOR is set.
inline bool want_color(const std::ostream& out) {
    if (std::getenv("RANKFORGE_NO_COLOR") != nullptr) return false;
#if !defined(_WIN32)
    return &out == &std::cout && isatty(fileno(stdout)) != 0;
#else
    (void)out;
    return false;
#endif
}

struct Style {
    bool on = false;
    std::string bold(const std::string& s) const { return on ? "\033[1m" + s + "\033[0m" : s; }
};

// Column widths count codepoints, not bytes, so accented names line up.
inline std::size_t display_width(const std::string& s) {
    std::size_t width = 0;
    for (unsigned char c : s) width += (c & 0xC0) != 0x80;
    return width;
}

struct TextTable {
    std::vector<std::vector<std::string>> rows;
    std::vector<bool> right_align;

    void header(std::vector<std::string> cells) {
        right_align.assign(cells.size(), true);
        right_align[0] = false;
        rows.push_back(std::move(cells));
    }
    void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

    void print(std::ostream& out, const Style& style) const {
        std::vector<std::size_t> width;
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c >= width.size()) width.resize(c + 1, 0);
                width[c] = std::max(width[c], display_width(r[c]));
            }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::string line;
            for (std::size_t c = 0; c < rows[i].size(); ++c) {
                std::string cell = rows[i][c];
                const std::size_t pad = width[c] - display_width(cell);
                if (c + 1 < rows[i].size() || right_align[c]) {
                    if (right_align[c]) cell = std::string(pad, ' ') + cell;
                    else cell += std::string(pad, ' ');
                }
                line += cell;
                if (c + 1 < rows[i].size()) line += "  ";
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << (i == 0 ? style.bold(line) : line) << "\n";
        }
    }
};

inline std::string ranks_text(const RankVector& ranks) {
    std::string out = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i) out += ",";
        out += ranks[i].to_string();
    }
    return out + ")";
}

inline ScoringSystem parse_method(const std::string& spec) {
    if (spec == "sum") return sum_system();
    if (spec == "product") return product_system();
    if (spec == "log") return log_system();
    if (spec == "sqrt") return sqrt_system();
    if (spec.rfind("power:", 0) == 0) {
        double p = 0.0;
        try {
            std::size_t used = 0;
            p = std::stod(spec.substr(6), &used);
            if (used != spec.size() - 6) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError("bad exponent in '" + spec + "'; expected power:<p> with 0 < p <= 1");
        }
        if (!(p > 0.0) || !(p <= 1.0))
            throw UsageError("bad exponent in '" + spec + "'; expected power:<p> with 0 < p <= 1");
        return power_system(p);
    }
    if (spec.rfind("table:", 0) == 0) {
        const std::string path = spec.substr(6);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ValidationError("cannot open scoring table: " + path);
        ScoringTable table = ScoringTable::from_csv(in);
        return function_system(table.as_function(), "table");
    }
    throw UsageError("unknown method '" + spec + "'; valid methods: " + kMethodGrammar);
}

inline TieBreakChain parse_chain(const std::string& spec) {
    TieBreakChain chain;
    for (const auto& name : split(spec, ',')) {
        if (name == "head2head") chain.push_back(TieBreakPolicy::head_to_head());
        else if (name == "countback") chain.push_back(TieBreakPolicy::count_back());
        else if (name == "shared") chain.push_back(TieBreakPolicy::shared_rank());
        else if (name.rfind("stage:", 0) == 0) {
            int stage = 0;
            try {
                std::size_t used = 0;
                stage = std::stoi(name.substr(6), &used);
                if (used != name.size() - 6) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw UsageError("bad stage in '" + name + "'; expected stage:<i> with i >= 1");
            }
            if (stage < 1) throw UsageError("bad stage in '" + name + "'; stages count from 1");
            chain.push_back(TieBreakPolicy::designated_stage(static_cast<std::size_t>(stage - 1)));
        } else {
            throw UsageError("unknown tie-break policy '" + name +
                             "'; valid policies: " + kPolicyGrammar);
        }
    }
    return chain;
}

inline TieBreakChain default_chain(const EventField& field) {
    TieBreakChain chain{TieBreakPolicy::head_to_head()};
    if (field.reference_standings) chain.push_back(TieBreakPolicy::count_back());
    chain.push_back(TieBreakPolicy::shared_rank());
    return chain;
}

inline WeightVector parse_weights(const std::string& spec) {
    WeightVector weights;
    for (const auto& part : split(spec, ',')) {
        try {
            std::size_t used = 0;
            weights.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError("bad weight '" + part + "' in --weights");
        }
        if (!(weights.back() > 0.0)) throw UsageError("weights must be positive");
    }
    return weights;
}

inline SpecialistProfile parse_profile(const std::string& spec) {
    SpecialistProfile profile;
    if (spec.empty()) return profile;
    for (const auto& part : split(spec, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw UsageError("bad --force entry '" + part + "'; expected <stage>:<rank>");
        try {
            std::size_t used = 0;
            const int stage = std::stoi(part.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("");
            const std::string rank_text = part.substr(colon + 1);
            const int rank = std::stoi(rank_text, &used);
            if (used != rank_text.size()) throw std::invalid_argument("");
            if (stage < 1 || rank < 1) throw std::invalid_argument("");
            profile.forced_ranks[static_cast<std::size_t>(stage - 1)] = rank;
        } catch (const std::exception&) {
            throw UsageError("bad --force entry '" + part + "'; expected <stage>:<rank>, both >= 1");
        }
    }
    return profile;
}

struct InputSelection {
    std::string dataset;
    std::string path;

    std::pair<std::string, EventField> load() const {
        if (!dataset.empty() && !path.empty())
            throw UsageError("give either --dataset or --input, not both");
        if (!dataset.empty()) {
            try {
                return {dataset, embedded_dataset(dataset)};
            } catch (const ConfigError& e) {
                throw UsageError(e.what());
            }
        }
        if (!path.empty()) return {path, load_event(path)};
        throw UsageError("an event is required: --dataset <name> or --input <path>");
    }
};

inline std::string dataset_quote(const std::string& name) {
    return rankforge::detail::csv_escape(name);
}

inline void print_tie_resolutions(std::ostream& out, const Standings& standings) {
    bool any = false;
    for (const auto& rec : standings.tie_resolutions) any |= rec.resolved;
    if (!any) return;
    out << "tie-breaks:\n";
    for (const auto& rec : standings.tie_resolutions) {
        if (!rec.resolved) continue;
        out << "  " << rec.policy << ": ";
        for (std::size_t i = 0; i < rec.outcome.size(); ++i) {
            if (i) out << " > ";
            out << rec.outcome[i];
        }
        out << "\n";
    }
}

inline int cmd_score(const InputSelection& input, const std::string& method_spec,
                     const std::string& weights_spec, const std::optional<std::string>& chain_spec,
                     const std::string& format, std::ostream& out) {
    auto [source, field] = input.load();
    ScoringSystem system = parse_method(method_spec);
    if (!weights_spec.empty()) {
        if (system.aggregation == ScoringSystem::Aggregation::Product)
            throw UsageError("--weights does not apply to the product method");
        system = system.with_weights(parse_weights(weights_spec));
    }
    system = system.with_chain(chain_spec ? parse_chain(*chain_spec) : default_chain(field));

    const Standings standings = rank_field(field, system);

    if (format == "csv") {
        out << "rank,name,score\n";
        for (const auto& e : standings.entries)
            out << e.rank << "," << dataset_quote(e.name) << "," << format_score(e.score) << "\n";
        return 0;
    }

    Style style{want_color(out)};
    out << source << ": " << system.label << " method";
    if (!system.weights.empty()) {
        out << ", weights (";
        for (std::size_t i = 0; i < system.weights.size(); ++i) {
            if (i) out << ",";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", system.weights[i]);
            out << buf;
        }
        out << ")";
    }
    out << "\n";
    TextTable table;
    table.header({"rank", "name", "disciplines", "score"});
    table.right_align[1] = false;
    table.right_align[2] = false;
    for (const auto& e : standings.entries) {
        std::string rank_text = std::to_string(e.rank);
        if (standings.tie_group_size(e.tie_group) > 1) rank_text += " (tie)";
        table.row({rank_text, e.name, ranks_text(e.ranks), format_score(e.score)});
    }
    table.print(out, style);
    print_tie_resolutions(out, standings);
    return 0;
}

inline int cmd_compare(const InputSelection& input, const std::vector<std::string>& method_specs,
                       const std::optional<std::string>& chain_spec, std::size_t k,
                       const std::string& format, std::ostream& out) {
    if (method_specs.size() != 2)
        throw UsageError("compare needs exactly two --method options");
    auto [source, field] = input.load();
    const TieBreakChain chain = chain_spec ? parse_chain(*chain_spec) : default_chain(field);
    const ScoringSystem system_a = parse_method(method_specs[0]).with_chain(chain);
    const ScoringSystem system_b = parse_method(method_specs[1]).with_chain(chain);
    if (k == 0) k = std::min<std::size_t>(8, field.size());

    const MethodComparison cmp = compare_methods(field, system_a, system_b, k);

    if (format == "csv") {
        out << "name,rank_a,rank_b,delta\n";
        for (const auto& row : cmp.rows)
            out << dataset_quote(row.name) << "," << row.rank_a << "," << row.rank_b << ","
                << row.delta << "\n";
        return 0;
    }

    Style style{want_color(out)};
    out << source << ": " << cmp.label_a << " vs " << cmp.label_b << " (k=" << k << ")\n";
    TextTable table;
    table.header({"name", cmp.label_a, cmp.label_b, "delta"});
    for (const auto& row : cmp.rows) {
        std::string delta = std::to_string(row.delta);
        if (row.delta > 0) delta = "+" + delta;
        table.row({row.name, std::to_string(row.rank_a), std::to_string(row.rank_b), delta});
    }
    table.print(out, style);
    auto print_set = [&](const char* label, const std::vector<std::string>& names) {
        out << label << " top-" << k << ": ";
        if (names.empty()) out << "(none)";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out << ", ";
            out << names[i];
        }
        out << "\n";
    };
    print_set("leaves", cmp.top_k_only_a);
    print_set("enters", cmp.top_k_only_b);
    out << "kendall tau distance: " << cmp.rank_distance
        << (cmp.distance_from_lexicographic_completion
                ? " (ties completed lexicographically)"
                : "")
        << "\n";
    return 0;
}

inline const ScoreFunction& additive_function_of(const ScoringSystem& system,
                                                 const std::string& spec) {
    if (system.aggregation == ScoringSystem::Aggregation::Product) {
        // The product order is the log-sum order; analyses that need an
        // additive function use the logarithm.
        static const ScoreFunction log_fn = ScoreFunction::logarithmic();
        return log_fn;
    }
    (void)spec;
    return system.function;
}

inline int cmd_table(const std::string& method_spec, int n, double scale, double offset,
                     std::ostream& out) {
    const ScoringSystem system = parse_method(method_spec);
    if (system.aggregation == ScoringSystem::Aggregation::Product)
        throw UsageError("table needs an additive method; use 'log' for product-equivalent points");
    const ScoringTable table = generate_table(system.function, n, scale, offset);
    out << table.to_csv();
    return 0;
}

inline int cmd_equiv(const std::string& method_spec, int n, const std::string& format,
                     std::ostream& out) {
    const ScoringSystem system = parse_method(method_spec);
    const ScoreFunction& f = additive_function_of(system, method_spec);
    const EquivalencePair pair = equivalence_pair(f, n);

    if (format == "csv") {
        out << "a,b,residual\n"
            << pair.a << "," << pair.a + 1 << "," << fixed(pair.residual, 6) << "\n";
        return 0;
    }
    const double ends = f.eval_at(1.0) + f.eval_at(static_cast<double>(n));
    const double mid = f.eval_at(pair.a) + f.eval_at(pair.a + 1.0);
    out << "method: " << system.label << "  n: " << n << "\n";
    out << "f(1) + f(" << n << ")" << " = " << fixed(ends, 3) << "\n";
    out << "f(" << pair.a << ") + f(" << pair.a + 1 << ") = " << fixed(mid, 3) << "\n";
    out << "equivalent adjacent pair: (" << pair.a << ", " << pair.a + 1 << "), residual "
        << fixed(pair.residual, 4) << "\n";
    return 0;
}

inline int cmd_validate(const InputSelection& input, std::ostream& out) {
    auto [source, field] = input.load();
    out << "OK: " << source << ": " << field.size() << " competitors, " << field.stage_count()
        << " stages" << (field.reference_standings ? ", reference standings" : "") << "\n";
    return 0;
}

inline int cmd_simulate(std::size_t n, std::size_t stages, std::size_t k, std::uint64_t trials,
                        std::uint64_t seed, const std::vector<std::string>& method_specs,
                        const std::optional<std::string>& chain_spec, const std::string& force_spec,
                        const std::string& format, std::ostream& out) {
    SimConfig config;
    config.field_size = n;
    config.stages = stages;
    config.cut = k;
    config.trials = trials;
    config.seed = seed;
    TieBreakChain chain{TieBreakPolicy::head_to_head(), TieBreakPolicy::shared_rank()};
    if (chain_spec) chain = parse_chain(*chain_spec);
    std::vector<std::string> specs = method_specs;
    if (specs.empty()) specs = {"product", "sum"};
    for (const auto& spec : specs) config.methods.push_back(parse_method(spec).with_chain(chain));

    const SpecialistProfile profile = parse_profile(force_spec);
    const SimResult result = simulate_qualification(config, profile);

    if (format == "csv") {
        out << "method,estimate,stderr,trials,seed\n";
        for (const auto& m : result.per_method)
            out << m.method << "," << fixed(m.estimate, 6) << "," << fixed(m.std_error, 6) << ","
                << result.trials << "," << result.seed << "\n";
        return 0;
    }

    Style style{want_color(out)};
    out << "n=" << n << " stages=" << stages << " k=" << k << " trials=" << trials
        << " seed=" << seed << "\n";
    if (!profile.forced_ranks.empty()) {
        out << "subject forced:";
        for (const auto& [stage, rank] : profile.forced_ranks)
            out << " stage" << stage + 1 << "->" << rank;
        out << "\n";
    }
    TextTable table;
    table.header({"method", "P(top-" + std::to_string(k) + ")", "stderr"});
    for (const auto& m : result.per_method)
        table.row({m.method, fixed(m.estimate, 6), fixed(m.std_error, 6)});
    table.print(out, style);
    return 0;
}

} // namespace detail

// Parses argv (program name excluded) and runs one subcommand. Exit status:
// 0 on success, 1 when the data or configuration is invalid, 2 on usage
// errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"scoring engine for ranking-based combined events"};
    app.name("rankforge");
    app.require_subcommand(1);

    detail::InputSelection input;
    std::vector<std::string> methods;
    std::string weights_spec;
    std::optional<std::string> chain_spec;
    std::string format = "text";
    std::size_t k = 0;
    int n = 20;
    double scale = 1.0, offset = 0.0;
    std::size_t sim_n = 20, sim_stages = 3, sim_k = 8;
    std::uint64_t trials = 100000, seed = 42;
    std::string force_spec;

    const auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--dataset", input.dataset, "embedded dataset name");
        cmd->add_option("--input", input.path, "event CSV path");
    };
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text | csv")
            ->check(CLI::IsMember({"text", "csv"}));
    };

    CLI::App* score = app.add_subcommand("score", "standings under one method");
    add_input(score);
    score->add_option("--method", methods, "scoring method: " + std::string(kMethodGrammar))
        ->required();
    score->add_option("--weights", weights_spec, "per-stage weights w1,w2,...");
    score->add_option("--tiebreak", chain_spec, "tie-break chain: " + std::string(kPolicyGrammar));
    add_format(score);

    CLI::App* compare = app.add_subcommand("compare", "rank shifts between two methods");
    add_input(compare);
    compare->add_option("--method", methods, "two methods to compare (repeat the flag)");
    compare->add_option("--tiebreak", chain_spec, "tie-break chain for both methods");
    compare->add_option("--k", k, "qualification cut (default: min(8, field size))");
    add_format(compare);

    CLI::App* table = app.add_subcommand("table", "integer scoring table as CSV");
    table->add_option("--method", methods, "additive method to tabulate")->required();
    table->add_option("--n", n, "field size")->required();
    table->add_option("--scale", scale, "multiplier before rounding");
    table->add_option("--offset", offset, "shift before rounding");

    CLI::App* equiv = app.add_subcommand("equiv", "adjacent pair equivalent to first+last");
    equiv->add_option("--method", methods, "method whose score function to analyze")->required();
    equiv->add_option("--n", n, "field size")->required();
    add_format(equiv);

    CLI::App* validate = app.add_subcommand("validate", "check an event file");
    add_input(validate);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo qualification odds");
    simulate->add_option("--n", sim_n, "field size");
    simulate->add_option("--stages", sim_stages, "stage count");
    simulate->add_option("--k", sim_k, "qualification cut");
    simulate->add_option("--trials", trials, "trial count");
    simulate->add_option("--seed", seed, "rng seed");
    simulate->add_option("--method", methods, "methods to estimate (repeatable)");
    simulate->add_option("--tiebreak", chain_spec, "tie-break chain inside each trial");
    simulate->add_option("--force", force_spec, "subject placements, e.g. 1:1,2:18,3:20");
    add_format(simulate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const auto single_method = [&]() -> const std::string& {
        if (methods.size() != 1)
            throw UsageError("this subcommand takes exactly one --method");
        return methods.front();
    };

    try {
        if (score->parsed())
            return detail::cmd_score(input, single_method(), weights_spec, chain_spec, format, out);
        if (compare->parsed())
            return detail::cmd_compare(input, methods, chain_spec, k, format, out);
        if (table->parsed())
            return detail::cmd_table(single_method(), n, scale, offset, out);
        if (equiv->parsed())
            return detail::cmd_equiv(single_method(), n, format, out);
        if (validate->parsed())
            return detail::cmd_validate(input, out);
        if (simulate->parsed())
            return detail::cmd_simulate(sim_n, sim_stages, sim_k, trials, seed, methods,
                                        chain_spec, force_spec, format, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rankforge::cli

#endif

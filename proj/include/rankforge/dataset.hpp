#ifndef RANKFORGE_DATASET_HPP
#define RANKFORGE_DATASET_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rankforge/errors.hpp"
#include "rankforge/rank.hpp"

namespace rankforge {

namespace detail {

// Rank literals are either integers or end in ".5"; nothing else is a valid
// shared placement.
inline std::int64_t parse_rank_twice(const std::string& text, int row, int column) {
    const std::string where =
        " at row " + std::to_string(row) + ", column " + std::to_string(column);
    if (text.empty()) throw ParseError("empty rank" + where);
    std::string integral = text;
    bool half = false;
    if (const auto dot = text.find('.'); dot != std::string::npos) {
        if (text.substr(dot) != ".5")
            throw ParseError("malformed rank '" + text + "'" + where +
                             " (only .5 fractions are allowed)");
        integral = text.substr(0, dot);
        half = true;
    }
    if (integral.empty() || !std::all_of(integral.begin(), integral.end(),
                                         [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError("malformed rank '" + text + "'" + where);
    std::int64_t twice = 0;
    try {
        twice = 2 * std::stoll(integral) + (half ? 1 : 0);
    } catch (const std::exception&) {
        throw ParseError("malformed rank '" + text + "'" + where);
    }
    if (twice < 2)
        throw ValidationError("rank '" + text + "'" + where + " is below 1");
    return twice;
}

// Minimal CSV splitting: fields are plain or double-quoted, quotes escape as "".
inline std::vector<std::string> split_csv_row(const std::string& line, int row) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { current += '"'; ++i; }
                else quoted = false;
            } else current += c;
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else current += c;
    }
    if (quoted) throw ParseError("unterminated quote at row " + std::to_string(row));
    fields.push_back(std::move(current));
    return fields;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

} // namespace detail

// Check that one stage's ranks are a tie-averaged permutation: a group of k
// competitors sharing a rank must carry the average of the k consecutive
// places they jointly occupy.
inline void validate_stage(const std::string& stage_name,
                           const std::vector<std::int64_t>& twices) {
    std::vector<std::int64_t> sorted = twices;
    std::sort(sorted.begin(), sorted.end());
    std::int64_t next_place = 1;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto k = static_cast<std::int64_t>(j - i);
        // k places starting at next_place average to next_place + (k-1)/2.
        const std::int64_t expected_twice = 2 * next_place + (k - 1);
        if (sorted[i] != expected_twice) {
            const std::string got = Rank::from_twice(sorted[i]).to_string();
            const std::string want = Rank::from_twice(expected_twice).to_string();
            throw ValidationError(
                "stage " + stage_name + ": " + std::to_string(k) +
                (k == 1 ? " competitor holds rank " : " competitors share rank ") + got +
                ", but places " + std::to_string(next_place) + ".." +
                std::to_string(next_place + k - 1) + " call for " + want);
        }
        next_place += k;
        i = j;
    }
}

// Full structural check: consistent stage counts, unique names, and a
// tie-averaged permutation in every stage.
inline void validate_field(const EventField& field) {
    if (field.stage_count() == 0) throw ValidationError("event has no stages");
    if (field.competitors.empty()) throw ValidationError("event has no competitors");
    std::set<std::string> names;
    for (const auto& c : field.competitors) {
        if (c.name.empty()) throw ValidationError("empty competitor name");
        if (!names.insert(c.name).second)
            throw ValidationError("duplicate competitor name: " + c.name);
        if (c.ranks.size() != field.stage_count())
            throw ValidationError("competitor " + c.name + " has " +
                                  std::to_string(c.ranks.size()) + " ranks for " +
                                  std::to_string(field.stage_count()) + " stages");
    }
    for (std::size_t s = 0; s < field.stage_count(); ++s) {
        std::vector<std::int64_t> twices;
        twices.reserve(field.size());
        for (const auto& c : field.competitors) twices.push_back(c.ranks[s].twice());
        validate_stage(field.stage_names[s], twices);
    }
}

// Event CSV: header "name,<stage_1>,...,<stage_s>" with an optional trailing
// "qual_rank" column holding reference standings.
inline EventField load_event(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty event file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = detail::split_csv_row(line, 1);
    if (header.size() < 2 || header[0] != "name")
        throw ParseError("event header must be 'name,<stage>,...', got '" + line + "'");

    bool has_reference = header.back() == "qual_rank";
    EventField field;
    field.stage_names.assign(header.begin() + 1, header.end() - (has_reference ? 1 : 0));
    if (field.stage_names.empty())
        throw ParseError("event header names no stages");

    ReferenceStandings reference;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::split_csv_row(line, row);
        if (fields.size() != header.size())
            throw ParseError("row " + std::to_string(row) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        Competitor competitor;
        competitor.name = fields[0];
        for (std::size_t s = 0; s < field.stage_names.size(); ++s)
            competitor.ranks.push_back(
                Rank::from_twice(detail::parse_rank_twice(fields[1 + s], row, int(2 + s))));
        if (has_reference) {
            const std::string& text = fields.back();
            int qual = 0;
            try {
                std::size_t used = 0;
                qual = std::stoi(text, &used);
                if (used != text.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("malformed qual_rank '" + text + "' at row " +
                                 std::to_string(row));
            }
            if (qual < 1)
                throw ValidationError("qual_rank must be positive at row " + std::to_string(row));
            reference.rank_by_name[competitor.name] = qual;
        }
        field.competitors.push_back(std::move(competitor));
    }
    if (has_reference) field.reference_standings = std::move(reference);
    validate_field(field);
    return field;
}

inline EventField load_event(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open event file: " + path);
    return load_event(in);
}

// Canonical form: LF endings, ranks as "13" or "19.5", quoting only when a
// name needs it.
inline std::string save_event(const EventField& field) {
    std::string out = "name";
    for (const auto& s : field.stage_names) out += "," + detail::csv_escape(s);
    if (field.reference_standings) out += ",qual_rank";
    out += "\n";
    for (const auto& c : field.competitors) {
        out += detail::csv_escape(c.name);
        for (const auto& r : c.ranks) out += "," + r.to_string();
        if (field.reference_standings) {
            auto q = field.reference_standings->rank_of(c.name);
            if (!q) throw ValidationError("no qual_rank recorded for " + c.name);
            out += "," + std::to_string(*q);
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tokyo 2020 sport climbing, discipline ranks in speed/bouldering/lead order.
// The preliminaries carry the official (product-method) qualification order
// as reference standings.

struct EmbeddedDataset {
    std::string name;
    std::string note;
    const char* csv;
};

namespace detail {

// B. Mawem qualified 7th but withdrew injured before the final; he was marked
// DNS and still placed 8th overall under IOC rules. The finals field holds
// the seven starters only, so that convention lives here, not in the ranks.
inline const char* kMenPrelims =
    "name,speed,bouldering,lead,qual_rank\n"
    "M. Mawem,3,1,11,1\n"
    "Narasaki,2,2,14,2\n"
    "Duffy,6,5,2,3\n"
    "Schubert,12,7,1,4\n"
    "Ondra,18,3,4,5\n"
    "Ginés López,7,14,3,6\n"
    "B. Mawem,1,18,20,7\n"
    "Coleman,10,11,5,8\n"
    "Megos,19,6,6,9\n"
    "Chon,5,10,16,10\n"
    "Khaibullin,4,17,13,11\n"
    "Hojer,11,9,9,12\n"
    "Rubtsov,16,4,15,13\n"
    "Pan,20,8,7,14\n"
    "Piccolruaz,8,13,12,15\n"
    "Cosser,9,16,10,16\n"
    "McColl,14,15,8,17\n"
    "Harada,15,12,17,18\n"
    "Fossali,13,19.5,18,19\n"
    "O'Halloran,17,19.5,19,20\n";

inline const char* kMenFinals =
    "name,speed,bouldering,lead\n"
    "Ginés López,1,7,4\n"
    "Coleman,6,1,5\n"
    "Schubert,7,5,1\n"
    "Narasaki,2,3,6\n"
    "M. Mawem,3,2,7\n"
    "Ondra,4,6,2\n"
    "Duffy,5,4,3\n";

inline const char* kWomenPrelims =
    "name,speed,bouldering,lead,qual_rank\n"
    "Garnbret,14,1,4,1\n"
    "Seo,17,5,1,2\n"
    "Nonaka,4,8,3,3\n"
    "Noguchi,9,3,6,4\n"
    "Raboutou,12,2,8,5\n"
    "Pilz,11,9,2,6\n"
    "Miroslaw,1,20,19,7\n"
    "Jaubert,2,13,15,8\n"
    "Meshkova,15,6,5,9\n"
    "Coxsey,16,4,13,10\n"
    "Condie,7,11,11,11\n"
    "Song,3,19,18,12\n"
    "Chanourdie,8,15,9,13\n"
    "Yip,6,16,12,14\n"
    "Rogora,19,7,10,15\n"
    "Klingler,10,10,14,16\n"
    "Kaplina,5,18,17,17\n"
    "Krampl,18,14,7,18\n"
    "MacKenzie,13,12,16,19\n"
    "Sterkenburg,20,17,20,20\n";

inline const char* kWomenFinals =
    "name,speed,bouldering,lead\n"
    "Garnbret,5,1,1\n"
    "Nonaka,3,3,5\n"
    "Noguchi,4,4,4\n"
    "Miroslaw,1,8,8\n"
    "Raboutou,7,2,6\n"
    "Jaubert,2,6,7\n"
    "Pilz,6,5,3\n"
    "Seo,8,7,2\n";

} // namespace detail

inline const std::vector<EmbeddedDataset>& embedded_dataset_registry() {
    static const std::vector<EmbeddedDataset> registry = {
        {"men-prelims", "20 climbers; qualification cut 20 -> 8", detail::kMenPrelims},
        {"men-finals", "7 starters; B. Mawem (7th qualifier) was DNS with a torn bicep",
         detail::kMenFinals},
        {"women-prelims", "20 climbers; qualification cut 20 -> 8", detail::kWomenPrelims},
        {"women-finals", "8 finalists", detail::kWomenFinals},
    };
    return registry;
}

inline std::vector<std::string> embedded_dataset_names() {
    std::vector<std::string> names;
    for (const auto& d : embedded_dataset_registry()) names.push_back(d.name);
    return names;
}

// Embedded data goes through the same parser and validator as external
// files.
inline EventField embedded_dataset(std::string_view name) {
    for (const auto& d : embedded_dataset_registry()) {
        if (d.name == name) {
            std::istringstream in{std::string(d.csv)};
            return load_event(in);
        }
    }
    std::string known;
    for (const auto& d : embedded_dataset_registry()) known += " " + d.name;
    throw ConfigError("unknown dataset '" + std::string(name) + "'; available:" + known);
}

inline std::vector<std::pair<std::string, EventField>> embedded_datasets() {
    std::vector<std::pair<std::string, EventField>> out;
    for (const auto& d : embedded_dataset_registry()) out.emplace_back(d.name, embedded_dataset(d.name));
    return out;
}

} // namespace rankforge

#endif

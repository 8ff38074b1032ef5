#include "trajmine/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "trajmine/errors.hpp"

namespace trajmine {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

json parse_line(const std::string& text, std::size_t line) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(line, "not valid JSON");
    if (!j.is_object()) fail(line, "expected a JSON object");
    return j;
}

std::string get_id(const json& j, std::size_t line) {
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
        fail(line, "missing or empty \"id\"");
    return j["id"].get<std::string>();
}

const json& get_terms(const json& j, std::size_t line) {
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        fail(line, "missing or empty \"terms\"");
    return j["terms"];
}

std::vector<Activity> get_activities(const json& term, std::size_t line) {
    if (!term.contains("activities") || !term["activities"].is_array())
        fail(line, "term without \"activities\" array");
    std::vector<Activity> acts;
    for (const auto& a : term["activities"]) {
        if (!a.is_string()) fail(line, "activity is not a string");
        acts.push_back(a.get<std::string>());
    }
    std::sort(acts.begin(), acts.end());
    acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
    return acts;
}

Rational parse_weight(const json& w, std::size_t line) {
    try {
        if (w.is_string()) return Rational::parse(w.get<std::string>());
        if (w.is_number_integer()) return Rational(w.get<std::int64_t>());
        if (w.is_number_float()) return Rational::from_double(w.get<double>());
    } catch (const std::exception& e) {
        fail(line, std::string("bad weight: ") + e.what());
    }
    fail(line, "weight is neither a string nor a number");
}

} // namespace

WlasDatabase read_wlas_jsonl(std::istream& in, std::ostream* warnings, double weight_tolerance) {
    WlasDatabase db;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        json j = parse_line(text, line);
        WlasSequence seq;
        seq.id = get_id(j, line);
        for (const auto& term : get_terms(j, line)) {
            WlasTerm wt;
            if (!term.contains("cells") || !term["cells"].is_array() || term["cells"].empty())
                fail(line, "term without \"cells\" array");
            for (const auto& cell : term["cells"]) {
                if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer())
                    fail(line, "cell entry must be [cell_id, weight]");
                WeightedCell wc{cell[0].get<std::int64_t>(), parse_weight(cell[1], line)};
                if (!(wc.weight > Rational(0))) fail(line, "cell weight must be positive");
                wt.locations.push_back(wc);
            }
            std::sort(wt.locations.begin(), wt.locations.end(),
                      [](const WeightedCell& a, const WeightedCell& b) { return a.cell < b.cell; });
            for (std::size_t i = 1; i < wt.locations.size(); ++i)
                if (wt.locations[i - 1].cell == wt.locations[i].cell)
                    fail(line, "duplicate cell id " + std::to_string(wt.locations[i].cell));
            wt.activities = get_activities(term, line);
            if (warnings) {
                double sum = wt.weight_sum().to_double();
                if (std::abs(sum - 1.0) > weight_tolerance)
                    *warnings << "warning: line " << line << ": term weights sum to " << sum
                              << " in sequence '" << seq.id << "'\n";
            }
            seq.terms.push_back(std::move(wt));
        }
        db.sequences.push_back(std::move(seq));
    }
    try {
        validate(db);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid database: ") + e.what());
    }
    return db;
}

namespace {

std::vector<double> get_numbers(const json& v, std::size_t n, std::size_t line,
                                const char* what) {
    if (!v.is_array() || v.size() != n) fail(line, std::string(what) + " must hold " +
                                                       std::to_string(n) + " numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) fail(line, std::string(what) + " must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

// Coordinates become exact rationals. JSON numbers are taken at their shortest
// round-tripping decimal (the digits as written, for normally written input);
// the double's full binary expansion would drag 2^50-scale denominators into
// every later area product. Strings may carry fractions for full control.
Rational get_coordinate(const json& x, std::size_t line, const char* what) {
    try {
        if (x.is_string()) return Rational::parse(x.get<std::string>());
        if (x.is_number_integer()) return Rational(x.get<std::int64_t>());
        if (x.is_number_float()) {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, x.get<double>(),
                                     std::chars_format::fixed);
            if (res.ec != std::errc()) throw std::invalid_argument("unprintable number");
            return Rational::from_decimal_string(std::string(buf, res.ptr));
        }
    } catch (const std::exception& e) {
        fail(line, std::string("bad ") + what + " coordinate: " + e.what());
    }
    fail(line, std::string(what) + " coordinate is neither a string nor a number");
}

Box get_box(const json& v, std::size_t line, const char* what) {
    if (!v.is_array() || v.size() != 4)
        fail(line, std::string(what) + " must hold 4 coordinates");
    return Box{get_coordinate(v[0], line, what), get_coordinate(v[1], line, what),
               get_coordinate(v[2], line, what), get_coordinate(v[3], line, what)};
}

} // namespace

std::vector<AnonymousTrajectory> read_anon_jsonl(std::istream& in) {
    std::vector<AnonymousTrajectory> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        json j = parse_line(text, line);
        AnonymousTrajectory traj;
        traj.id = get_id(j, line);
        for (const auto& term : get_terms(j, line)) {
            if (!term.contains("mbr")) fail(line, "term without \"mbr\"");
            AnonymousTerm at;
            at.mbr = get_box(term["mbr"], line, "\"mbr\"");
            at.activities = get_activities(term, line);
            if (at.activities.empty()) fail(line, "term without activities");
            traj.terms.push_back(std::move(at));
        }
        out.push_back(std::move(traj));
    }
    return out;
}

std::vector<RawTrajectory> read_raw_jsonl(std::istream& in) {
    std::vector<RawTrajectory> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        json j = parse_line(text, line);
        RawTrajectory traj;
        traj.id = get_id(j, line);
        for (const auto& term : get_terms(j, line)) {
            if (!term.contains("point")) fail(line, "term without \"point\"");
            auto p = get_numbers(term["point"], 2, line, "\"point\"");
            RawTerm rt;
            rt.x = p[0];
            rt.y = p[1];
            rt.activities = get_activities(term, line);
            if (rt.activities.empty()) fail(line, "term without activities");
            traj.terms.push_back(std::move(rt));
        }
        out.push_back(std::move(traj));
    }
    return out;
}

void write_wlas_jsonl(const WlasDatabase& db, std::ostream& out, std::int64_t id_base) {
    for (const auto& seq : db.sequences) {
        ojson j;
        j["id"] = seq.id;
        j["terms"] = ojson::array();
        for (const auto& term : seq.terms) {
            ojson t;
            t["cells"] = ojson::array();
            for (const auto& wc : term.locations)
                t["cells"].push_back({wc.cell + id_base, wc.weight.to_fraction_string()});
            t["activities"] = term.activities;
            j["terms"].push_back(std::move(t));
        }
        out << j.dump() << "\n";
    }
}

void write_anon_jsonl(const std::vector<AnonymousTrajectory>& trajs, std::ostream& out) {
    for (const auto& traj : trajs) {
        ojson j;
        j["id"] = traj.id;
        j["terms"] = ojson::array();
        for (const auto& term : traj.terms) {
            ojson t;
            t["mbr"] = {term.mbr.xmin.to_double(), term.mbr.ymin.to_double(),
                        term.mbr.xmax.to_double(), term.mbr.ymax.to_double()};
            t["activities"] = term.activities;
            j["terms"].push_back(std::move(t));
        }
        out << j.dump() << "\n";
    }
}

nlohmann::ordered_json pattern_to_json(const TrajectoryPattern& p, std::int64_t id_base) {
    ojson j;
    j["terms"] = ojson::array();
    for (const auto& term : p.terms) {
        ojson t;
        t["cells"] = ojson::array();
        for (CellId c : term.cells) t["cells"].push_back(c + id_base);
        t["activities"] = term.activities;
        j["terms"].push_back(std::move(t));
    }
    return j;
}

nlohmann::ordered_json results_to_json(const std::vector<ScoredPattern>& results,
                                       std::int64_t id_base) {
    ojson arr = ojson::array();
    int rank = 0;
    for (const auto& r : results) {
        ojson e;
        e["rank"] = ++rank;
        e["score"] = r.score.to_fraction_string();
        e["score_decimal"] = r.score.to_double();
        e["pattern"] = pattern_to_json(r.pattern, id_base);
        arr.push_back(std::move(e));
    }
    return arr;
}

nlohmann::ordered_json metrics_to_json(const MiningMetrics& m) {
    ojson j;
    j["recursive_calls"] = m.recursive_calls;
    j["candidates_generated"] = m.candidates_generated;
    j["insertions"] = m.insertions;
    j["width_pruned"] = m.width_pruned;
    j["depth_pruned"] = m.depth_pruned;
    j["threshold_trace"] = ojson::array();
    for (const auto& [idx, thr] : m.threshold_trace)
        j["threshold_trace"].push_back({idx, thr.to_fraction_string()});
    return j;
}

} // namespace trajmine

#include "trajmine/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trajmine {

bool WlasTerm::has_cell(CellId c) const {
    auto it = std::lower_bound(locations.begin(), locations.end(), c,
                               [](const WeightedCell& w, CellId id) { return w.cell < id; });
    return it != locations.end() && it->cell == c;
}

Rational WlasTerm::weight_of(CellId c) const {
    auto it = std::lower_bound(locations.begin(), locations.end(), c,
                               [](const WeightedCell& w, CellId id) { return w.cell < id; });
    if (it != locations.end() && it->cell == c) return it->weight;
    return Rational(0);
}

bool WlasTerm::has_activity(const Activity& a) const {
    return std::binary_search(activities.begin(), activities.end(), a);
}

Rational WlasTerm::weight_sum() const {
    Rational s(0);
    for (const auto& wc : locations) s += wc.weight;
    return s;
}

void validate(const WlasTerm& term) {
    if (term.locations.empty() && term.activities.empty())
        throw std::invalid_argument("term with no locations and no activities");
    for (std::size_t i = 0; i < term.locations.size(); ++i) {
        if (!(term.locations[i].weight > Rational(0)))
            throw std::invalid_argument("non-positive cell weight");
        if (i > 0 && !(term.locations[i - 1].cell < term.locations[i].cell))
            throw std::invalid_argument("cells not sorted-unique");
    }
    for (std::size_t i = 1; i < term.activities.size(); ++i)
        if (!(term.activities[i - 1] < term.activities[i]))
            throw std::invalid_argument("activities not sorted-unique");
}

void validate(const WlasSequence& seq) {
    if (seq.id.empty()) throw std::invalid_argument("sequence with empty id");
    if (seq.terms.empty()) throw std::invalid_argument("sequence '" + seq.id + "' has no terms");
    for (const auto& t : seq.terms) validate(t);
}

void validate(const WlasDatabase& db) {
    std::set<std::string> ids;
    for (const auto& s : db.sequences) {
        validate(s);
        if (!ids.insert(s.id).second)
            throw std::invalid_argument("duplicate sequence id '" + s.id + "'");
    }
}

bool TrajectoryPattern::emittable() const {
    if (terms.empty()) return false;
    for (const auto& t : terms)
        if (t.cells.empty() || !t.complete()) return false;
    return true;
}

std::string TrajectoryPattern::canonical_string() const {
    std::ostringstream os;
    for (const auto& t : terms) {
        os << "({";
        for (std::size_t i = 0; i < t.cells.size(); ++i) {
            if (i) os << ",";
            os << t.cells[i];
        }
        os << "},{";
        for (std::size_t i = 0; i < t.activities.size(); ++i) {
            if (i) os << ",";
            os << t.activities[i];
        }
        os << "})";
    }
    return os.str();
}

bool canonical_less(const TrajectoryPattern& a, const TrajectoryPattern& b) {
    if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const auto& ta = a.terms[i];
        const auto& tb = b.terms[i];
        if (ta.cells != tb.cells) return ta.cells < tb.cells;
        if (ta.activities != tb.activities) return ta.activities < tb.activities;
    }
    return false;
}

bool contains_term(const PatternTerm& inner, const WlasTerm& outer) {
    for (CellId c : inner.cells)
        if (!outer.has_cell(c)) return false;
    for (const auto& a : inner.activities)
        if (!outer.has_activity(a)) return false;
    return true;
}

namespace {

void collect_matches(const TrajectoryPattern& pattern, const WlasSequence& seq,
                     std::size_t term_idx, std::size_t from, MatchEmbedding& cur,
                     std::vector<MatchEmbedding>& out) {
    if (term_idx == pattern.terms.size()) {
        out.push_back(cur);
        return;
    }
    for (std::size_t j = from; j < seq.terms.size(); ++j) {
        // enough positions must remain for the rest of the pattern
        if (seq.terms.size() - j < pattern.terms.size() - term_idx) break;
        if (contains_term(pattern.terms[term_idx], seq.terms[j])) {
            cur.push_back(j);
            collect_matches(pattern, seq, term_idx + 1, j + 1, cur, out);
            cur.pop_back();
        }
    }
}

} // namespace

std::vector<MatchEmbedding> find_exact_matches(const TrajectoryPattern& pattern,
                                               const WlasSequence& seq) {
    std::vector<MatchEmbedding> out;
    if (pattern.terms.empty()) return out;
    MatchEmbedding cur;
    collect_matches(pattern, seq, 0, 0, cur, out);
    return out;
}

std::optional<PivotMatch> pivot_match(const TrajectoryPattern& pattern, const WlasSequence& seq) {
    auto all = find_exact_matches(pattern, seq);
    if (all.empty()) return std::nullopt;
    std::size_t pivot = seq.terms.size();
    for (const auto& e : all) pivot = std::min(pivot, e.back());
    PivotMatch pm;
    pm.pivot_index = pivot;
    for (auto& e : all)
        if (e.back() == pivot) pm.embeddings.push_back(std::move(e));
    return pm;
}

std::optional<WlasSequence> projected_subsequence(const TrajectoryPattern& pattern,
                                                  const WlasSequence& seq) {
    auto pm = pivot_match(pattern, seq);
    if (!pm) return std::nullopt;

    const PatternTerm& last = pattern.terms.back();
    CellId max_cell = last.cells.back();
    const Activity* max_act = last.activities.empty() ? nullptr : &last.activities.back();

    WlasSequence out;
    out.id = seq.id;

    const WlasTerm& pivot_term = seq.terms[pm->pivot_index];
    WlasTerm stripped;
    for (const auto& wc : pivot_term.locations)
        if (wc.cell > max_cell) stripped.locations.push_back(wc);
    for (const auto& a : pivot_term.activities)
        if (!max_act || a > *max_act) stripped.activities.push_back(a);
    if (!stripped.locations.empty() && !stripped.activities.empty())
        out.terms.push_back(std::move(stripped));

    for (std::size_t j = pm->pivot_index + 1; j < seq.terms.size(); ++j)
        out.terms.push_back(seq.terms[j]);
    return out;
}

TrajectoryPattern r_pattern(const WlasSequence& seq) {
    TrajectoryPattern p;
    p.terms.reserve(seq.terms.size());
    for (const auto& t : seq.terms) {
        PatternTerm pt;
        for (const auto& wc : t.locations) pt.cells.push_back(wc.cell);
        pt.activities = t.activities;
        p.terms.push_back(std::move(pt));
    }
    return p;
}

} // namespace trajmine

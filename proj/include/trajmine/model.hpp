#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trajmine/rational.hpp"

namespace trajmine {

using CellId = std::int64_t;
using Activity = std::string;

struct WeightedCell {
    CellId cell;
    Rational weight;
    bool operator==(const WeightedCell& o) const { return cell == o.cell && weight == o.weight; }
};

// Sorted by cell id, unique, weights > 0.
using WeightedLocationSet = std::vector<WeightedCell>;

struct WlasTerm {
    WeightedLocationSet locations;
    std::vector<Activity> activities; // sorted, unique

    bool has_cell(CellId c) const;
    Rational weight_of(CellId c) const; // 0 when absent
    bool has_activity(const Activity& a) const;
    Rational weight_sum() const;
    bool operator==(const WlasTerm& o) const {
        return locations == o.locations && activities == o.activities;
    }
};

struct WlasSequence {
    std::string id;
    std::vector<WlasTerm> terms;
};

struct WlasDatabase {
    std::vector<WlasSequence> sequences;
};

// Throws std::invalid_argument on broken invariants (unsorted/duplicate cells,
// non-positive weights, unsorted activities, empty terms, duplicate sequence ids).
void validate(const WlasTerm& term);
void validate(const WlasSequence& seq);
void validate(const WlasDatabase& db);

struct PatternTerm {
    std::vector<CellId> cells;        // sorted, unique, non-empty
    std::vector<Activity> activities; // sorted, unique; empty while still being built

    bool complete() const { return !activities.empty(); }
    bool operator==(const PatternTerm& o) const {
        return cells == o.cells && activities == o.activities;
    }
};

struct TrajectoryPattern {
    std::vector<PatternTerm> terms;

    bool empty() const { return terms.empty(); }
    // Emittable patterns are the library's results: every term complete.
    bool emittable() const;
    std::string canonical_string() const;
    bool operator==(const TrajectoryPattern& o) const { return terms == o.terms; }
};

// Order: term count, then per-term cell ids, then per-term activities.
bool canonical_less(const TrajectoryPattern& a, const TrajectoryPattern& b);

// Strictly increasing 0-based indices into the sequence, one per pattern term.
using MatchEmbedding = std::vector<std::size_t>;

// Cell-subset and activity-subset containment; weights play no role here.
bool contains_term(const PatternTerm& inner, const WlasTerm& outer);

// All embeddings, in lexicographic order of the index tuples.
std::vector<MatchEmbedding> find_exact_matches(const TrajectoryPattern& pattern,
                                               const WlasSequence& seq);

struct PivotMatch {
    std::size_t pivot_index;                // position of the pivot term in the sequence
    std::vector<MatchEmbedding> embeddings; // every embedding ending at pivot_index
};

// Embeddings whose last index is minimal. nullopt when the pattern has no match.
std::optional<PivotMatch> pivot_match(const TrajectoryPattern& pattern, const WlasSequence& seq);

// Suffix of seq after the pivot position: the pivot term stripped of cells with
// id <= the last pattern term's max cell and of activities <= its max activity
// (dropped entirely if either side empties out), then the remaining terms
// unchanged. Present-but-empty when the match consumes the whole sequence;
// nullopt when there is no match at all.
std::optional<WlasSequence> projected_subsequence(const TrajectoryPattern& pattern,
                                                  const WlasSequence& seq);

// The pattern carrying every cell and every activity of each term.
TrajectoryPattern r_pattern(const WlasSequence& seq);

} // namespace trajmine

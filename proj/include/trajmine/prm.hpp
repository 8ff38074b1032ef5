#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "trajmine/model.hpp"
#include "trajmine/rational.hpp"

namespace trajmine {

struct PrmEntry {
    Rational match;     // cell weight at that term, 0 when absent
    Rational remaining; // relevance strictly after the item in (term, cell) order
};

// Per-sequence lookup table behind the miner: cell weights per position plus
// suffix sums, so pivot/rest relevance never rescans the sequence.
class ProjectedRelevanceMatrix {
public:
    static ProjectedRelevanceMatrix build(const WlasSequence& seq);

    PrmEntry at(CellId cell, std::size_t term) const;
    Rational match_relevance(CellId cell, std::size_t term) const;
    // Weight of cells with id > cell inside `term`.
    Rational within_term_after(CellId cell, std::size_t term) const;
    Rational term_weight_sum(std::size_t term) const;
    // Full weight of the terms strictly after `term`.
    Rational tail_sum(std::size_t term) const;
    Rational sequence_weight() const; // == sequence_relevance of the sequence
    std::size_t term_count() const { return terms_.size(); }

private:
    struct TermRow {
        std::vector<CellId> cells;
        std::vector<Rational> weights;
        std::vector<Rational> suffix; // suffix[i] = sum of weights[i..]
        Rational total;
    };
    std::vector<TermRow> terms_;
    std::vector<Rational> tail_; // tail_[t] = sum of totals of terms after t
};

ProjectedRelevanceMatrix build_prm(const WlasSequence& seq);

struct PrmSet {
    std::vector<ProjectedRelevanceMatrix> matrices; // parallel to db.sequences
};

PrmSet build_prm(const WlasDatabase& db);

// (activity, term index) -> indices of the sequences carrying that activity at
// that position.
class ActivityIndex {
public:
    static ActivityIndex build(const WlasDatabase& db);

    const std::vector<std::size_t>& sequences_with(const Activity& a, std::size_t term) const;
    bool contains(const Activity& a, std::size_t term) const;
    std::vector<Activity> alphabet() const; // sorted, unique
    const std::map<std::pair<Activity, std::size_t>, std::vector<std::size_t>>& entries() const {
        return idx_;
    }

private:
    std::map<std::pair<Activity, std::size_t>, std::vector<std::size_t>> idx_;
};

ActivityIndex build_act(const WlasDatabase& db);

} // namespace trajmine

#pragma once

#include <map>
#include <string>
#include <vector>

#include "trajmine/model.hpp"
#include "trajmine/rational.hpp"

namespace trajmine {

struct ScoredPattern {
    TrajectoryPattern pattern;
    Rational score;
};

// Result buffer for the search. The threshold is the k-th highest score seen
// so far (0 while fewer than k entries are held). Inserts below the threshold
// are rejected; ties with it are kept, so the final outcome cannot depend on
// the order patterns were discovered in. results() applies the deterministic
// tie order (score desc, then canonical form asc) and cuts back to k.
class TopKList {
public:
    explicit TopKList(int k);

    // True when the pattern entered the list. Re-inserting a pattern already
    // present is a no-op returning false.
    bool insert(const TrajectoryPattern& pattern, const Rational& score);

    Rational threshold() const { return threshold_; }
    bool full() const { return entries_.size() >= k_; }
    std::size_t size() const { return entries_.size(); }
    int k() const { return static_cast<int>(k_); }
    bool contains(const TrajectoryPattern& pattern) const;

    std::vector<ScoredPattern> results() const;

private:
    std::size_t k_;
    std::map<std::string, ScoredPattern> entries_; // canonical string -> entry
    Rational threshold_;

    Rational kth_score() const;
    void refresh();
};

} // namespace trajmine

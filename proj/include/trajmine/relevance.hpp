#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trajmine/model.hpp"
#include "trajmine/rational.hpp"

namespace trajmine {

// Sum of the pattern term's cell weights in the wLAS term when the pattern
// term is contained in it, else 0. Activities gate the match but carry no
// weight of their own.
Rational term_relevance(const PatternTerm& term, const WlasTerm& wlas);

// Relevance of one embedding: sum of per-term relevances at its positions.
Rational embedding_relevance(const TrajectoryPattern& pattern, const WlasSequence& seq,
                             const MatchEmbedding& embedding);

// Max embedding relevance; 0 when the pattern has no match in the sequence.
Rational max_relevance(const TrajectoryPattern& pattern, const WlasSequence& seq);

Rational db_relevance(const TrajectoryPattern& pattern, const WlasDatabase& db);

// Relevance of the sequence's own r-pattern: the total weight it can supply.
Rational sequence_relevance(const WlasSequence& seq);

// Sum of sequence_relevance over the sequences the pattern matches.
Rational msr(const TrajectoryPattern& pattern, const WlasDatabase& db);

// Max relevance over pivot embeddings only. nullopt when no match.
std::optional<Rational> pivot_match_relevance(const TrajectoryPattern& pattern,
                                              const WlasSequence& seq);

// sequence_relevance of the projected subsequence. nullopt when no match.
std::optional<Rational> rest_relevance(const TrajectoryPattern& pattern, const WlasSequence& seq);

// R_PM + R_rest, or 0 for a sequence without a match.
Rational ptr_in_sequence(const TrajectoryPattern& pattern, const WlasSequence& seq);

struct PtrBreakdown {
    Rational total;
    std::vector<std::pair<std::string, Rational>> per_sequence; // (sequence id, contribution)
};

PtrBreakdown ptr(const TrajectoryPattern& pattern, const WlasDatabase& db);

} // namespace trajmine

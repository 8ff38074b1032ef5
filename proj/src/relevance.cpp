#include "trajmine/relevance.hpp"

#include <algorithm>

namespace trajmine {

Rational term_relevance(const PatternTerm& term, const WlasTerm& wlas) {
    if (!contains_term(term, wlas)) return Rational(0);
    Rational s(0);
    for (CellId c : term.cells) s += wlas.weight_of(c);
    return s;
}

Rational embedding_relevance(const TrajectoryPattern& pattern, const WlasSequence& seq,
                             const MatchEmbedding& embedding) {
    Rational s(0);
    for (std::size_t i = 0; i < pattern.terms.size(); ++i)
        s += term_relevance(pattern.terms[i], seq.terms[embedding[i]]);
    return s;
}

namespace {

// best[j] = max relevance of an embedding of the first `i` pattern terms that
// ends exactly at position j; rebuilt per pattern term.
std::vector<std::optional<Rational>> match_dp(const TrajectoryPattern& pattern,
                                              const WlasSequence& seq) {
    std::size_t m = seq.terms.size();
    std::vector<std::optional<Rational>> best(m);
    std::vector<std::optional<Rational>> prev(m);
    for (std::size_t i = 0; i < pattern.terms.size(); ++i) {
        std::fill(best.begin(), best.end(), std::nullopt);
        std::optional<Rational> run; // max of prev[0..j-1]
        for (std::size_t j = 0; j < m; ++j) {
            bool prefix_ok = i == 0 ? true : run.has_value();
            if (prefix_ok && contains_term(pattern.terms[i], seq.terms[j])) {
                Rational r = term_relevance(pattern.terms[i], seq.terms[j]);
                if (i > 0) r += *run;
                best[j] = r;
            }
            // update run after use so embeddings stay strictly increasing
            if (prev[j] && (!run || *prev[j] > *run)) run = prev[j];
        }
        std::swap(best, prev);
    }
    return prev;
}

} // namespace

Rational max_relevance(const TrajectoryPattern& pattern, const WlasSequence& seq) {
    if (pattern.terms.empty()) return Rational(0);
    auto ends = match_dp(pattern, seq);
    Rational best(0);
    bool any = false;
    for (const auto& v : ends)
        if (v && (!any || *v > best)) {
            best = *v;
            any = true;
        }
    return any ? best : Rational(0);
}

Rational db_relevance(const TrajectoryPattern& pattern, const WlasDatabase& db) {
    Rational s(0);
    for (const auto& seq : db.sequences) s += max_relevance(pattern, seq);
    return s;
}

Rational sequence_relevance(const WlasSequence& seq) {
    if (seq.terms.empty()) return Rational(0);
    return max_relevance(r_pattern(seq), seq);
}

Rational msr(const TrajectoryPattern& pattern, const WlasDatabase& db) {
    Rational s(0);
    for (const auto& seq : db.sequences)
        if (!find_exact_matches(pattern, seq).empty()) s += sequence_relevance(seq);
    return s;
}

std::optional<Rational> pivot_match_relevance(const TrajectoryPattern& pattern,
                                              const WlasSequence& seq) {
    auto pm = pivot_match(pattern, seq);
    if (!pm) return std::nullopt;
    Rational best(0);
    bool any = false;
    for (const auto& e : pm->embeddings) {
        Rational r = embedding_relevance(pattern, seq, e);
        if (!any || r > best) {
            best = r;
            any = true;
        }
    }
    return best;
}

std::optional<Rational> rest_relevance(const TrajectoryPattern& pattern, const WlasSequence& seq) {
    auto proj = projected_subsequence(pattern, seq);
    if (!proj) return std::nullopt;
    return sequence_relevance(*proj);
}

Rational ptr_in_sequence(const TrajectoryPattern& pattern, const WlasSequence& seq) {
    auto pm = pivot_match_relevance(pattern, seq);
    if (!pm) return Rational(0);
    auto rest = rest_relevance(pattern, seq);
    return *pm + (rest ? *rest : Rational(0));
}

PtrBreakdown ptr(const TrajectoryPattern& pattern, const WlasDatabase& db) {
    PtrBreakdown out;
    out.total = Rational(0);
    for (const auto& seq : db.sequences) {
        Rational c = ptr_in_sequence(pattern, seq);
        out.per_sequence.emplace_back(seq.id, c);
        out.total += c;
    }
    return out;
}

} // namespace trajmine

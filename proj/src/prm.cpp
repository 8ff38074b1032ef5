#include "trajmine/prm.hpp"

#include <algorithm>

namespace trajmine {

ProjectedRelevanceMatrix ProjectedRelevanceMatrix::build(const WlasSequence& seq) {
    ProjectedRelevanceMatrix prm;
    prm.terms_.resize(seq.terms.size());
    for (std::size_t t = 0; t < seq.terms.size(); ++t) {
        TermRow& row = prm.terms_[t];
        const auto& locs = seq.terms[t].locations;
        row.cells.reserve(locs.size());
        row.weights.reserve(locs.size());
        for (const auto& wc : locs) {
            row.cells.push_back(wc.cell);
            row.weights.push_back(wc.weight);
        }
        row.suffix.assign(locs.size() + 1, Rational(0));
        for (std::size_t i = locs.size(); i-- > 0;)
            row.suffix[i] = row.suffix[i + 1] + row.weights[i];
        row.total = row.suffix.empty() ? Rational(0) : row.suffix[0];
    }
    prm.tail_.assign(seq.terms.size() + 1, Rational(0));
    for (std::size_t t = seq.terms.size(); t-- > 0;)
        prm.tail_[t] = prm.tail_[t + 1] + prm.terms_[t].total;
    return prm;
}

Rational ProjectedRelevanceMatrix::match_relevance(CellId cell, std::size_t term) const {
    const TermRow& row = terms_[term];
    auto it = std::lower_bound(row.cells.begin(), row.cells.end(), cell);
    if (it != row.cells.end() && *it == cell) return row.weights[it - row.cells.begin()];
    return Rational(0);
}

Rational ProjectedRelevanceMatrix::within_term_after(CellId cell, std::size_t term) const {
    const TermRow& row = terms_[term];
    auto it = std::upper_bound(row.cells.begin(), row.cells.end(), cell);
    return row.suffix[it - row.cells.begin()];
}

PrmEntry ProjectedRelevanceMatrix::at(CellId cell, std::size_t term) const {
    return PrmEntry{match_relevance(cell, term),
                    within_term_after(cell, term) + tail_sum(term)};
}

Rational ProjectedRelevanceMatrix::term_weight_sum(std::size_t term) const {
    return terms_[term].total;
}

Rational ProjectedRelevanceMatrix::tail_sum(std::size_t term) const {
    return tail_[term + 1];
}

Rational ProjectedRelevanceMatrix::sequence_weight() const {
    return tail_.empty() ? Rational(0) : tail_[0];
}

ProjectedRelevanceMatrix build_prm(const WlasSequence& seq) {
    return ProjectedRelevanceMatrix::build(seq);
}

PrmSet build_prm(const WlasDatabase& db) {
    PrmSet set;
    set.matrices.reserve(db.sequences.size());
    for (const auto& seq : db.sequences) set.matrices.push_back(build_prm(seq));
    return set;
}

ActivityIndex build_act(const WlasDatabase& db) {
    return ActivityIndex::build(db);
}

ActivityIndex ActivityIndex::build(const WlasDatabase& db) {
    ActivityIndex act;
    for (std::size_t s = 0; s < db.sequences.size(); ++s) {
        const auto& seq = db.sequences[s];
        for (std::size_t t = 0; t < seq.terms.size(); ++t)
            for (const auto& a : seq.terms[t].activities)
                act.idx_[{a, t}].push_back(s);
    }
    return act;
}

const std::vector<std::size_t>& ActivityIndex::sequences_with(const Activity& a,
                                                              std::size_t term) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = idx_.find({a, term});
    return it == idx_.end() ? kEmpty : it->second;
}

bool ActivityIndex::contains(const Activity& a, std::size_t term) const {
    return idx_.count({a, term}) > 0;
}

std::vector<Activity> ActivityIndex::alphabet() const {
    std::vector<Activity> out;
    for (const auto& [key, _] : idx_)
        if (out.empty() || out.back() != key.first) out.push_back(key.first);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace trajmine

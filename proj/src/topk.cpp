#include "trajmine/topk.hpp"

#include <algorithm>
#include <stdexcept>

namespace trajmine {

TopKList::TopKList(int k) : k_(static_cast<std::size_t>(k)), threshold_(0) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
}

Rational TopKList::kth_score() const {
    std::vector<Rational> scores;
    scores.reserve(entries_.size());
    for (const auto& [_, e] : entries_) scores.push_back(e.score);
    std::sort(scores.begin(), scores.end(), std::greater<Rational>());
    return scores[k_ - 1];
}

void TopKList::refresh() {
    if (entries_.size() < k_) {
        threshold_ = Rational(0);
        return;
    }
    threshold_ = kth_score();
    // Entries strictly below the k-th score can never re-enter the top k.
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second.score < threshold_)
            it = entries_.erase(it);
        else
            ++it;
    }
}

bool TopKList::insert(const TrajectoryPattern& pattern, const Rational& score) {
    std::string key = pattern.canonical_string();
    if (entries_.count(key)) return false;
    if (entries_.size() >= k_ && score < threshold_) return false;
    entries_.emplace(std::move(key), ScoredPattern{pattern, score});
    refresh();
    return true;
}

bool TopKList::contains(const TrajectoryPattern& pattern) const {
    return entries_.count(pattern.canonical_string()) > 0;
}

std::vector<ScoredPattern> TopKList::results() const {
    std::vector<ScoredPattern> out;
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(e);
    std::sort(out.begin(), out.end(), [](const ScoredPattern& a, const ScoredPattern& b) {
        if (a.score != b.score) return b.score < a.score;
        return canonical_less(a.pattern, b.pattern);
    });
    if (out.size() > k_) out.resize(k_);
    return out;
}

} // namespace trajmine

#include "trajmine/miner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "trajmine/relevance.hpp"

namespace trajmine {

MiningConfig MiningConfig::for_variant(const std::string& name, int k) {
    MiningConfig c;
    c.k = k;
    c.width_prune_enabled = true;
    c.depth_prune_enabled = true;
    if (name == "baseline") {
        c.ti_enabled = false;
        c.tu_enabled = false;
    } else if (name == "baseline+i") {
        c.ti_enabled = true;
        c.tu_enabled = false;
    } else if (name == "baseline+s") {
        c.ti_enabled = false;
        c.tu_enabled = true;
    } else if (name == "full") {
        c.ti_enabled = true;
        c.tu_enabled = true;
    } else {
        throw std::invalid_argument("unknown variant '" + name + "'");
    }
    return c;
}

Rational MiningMetrics::threshold_at(std::uint64_t call_index) const {
    Rational v(0);
    for (const auto& [idx, thr] : threshold_trace) {
        if (idx > call_index) break;
        v = thr;
    }
    return v;
}

SearchNode SearchNode::root(const WlasDatabase& db, const PrmSet& prm) {
    SearchNode n;
    n.db_ = &db;
    n.prm_ = &prm;
    n.ends_.resize(db.sequences.size());
    return n;
}

bool SearchNode::matched_anywhere() const {
    for (const auto& e : ends_)
        if (!e.empty()) return true;
    return false;
}

Rational SearchNode::relevance() const {
    Rational total(0);
    for (const auto& seq_ends : ends_) {
        if (seq_ends.empty()) continue;
        Rational best = seq_ends.front().rel;
        for (const auto& e : seq_ends)
            if (e.rel > best) best = e.rel;
        total += best;
    }
    return total;
}

Rational SearchNode::ptr() const {
    if (pattern_.empty()) return Rational(0);
    const PatternTerm& last = pattern_.terms.back();
    CellId max_cell = last.cells.back();
    const Activity* max_act = last.activities.empty() ? nullptr : &last.activities.back();
    Rational total(0);
    for (std::size_t s = 0; s < ends_.size(); ++s) {
        const auto& seq_ends = ends_[s];
        if (seq_ends.empty()) continue;
        const auto& mat = prm_->matrices[s];
        std::size_t pivot = seq_ends.front().pos;
        Rational r_pm = seq_ends.front().rel;
        // relevance left in the pivot term, counted only if the stripped term
        // survives (both some cell and some activity beyond the matched ones)
        Rational within = mat.within_term_after(max_cell, pivot);
        const auto& acts = db_->sequences[s].terms[pivot].activities;
        bool acts_left = !acts.empty() && (!max_act || acts.back() > *max_act);
        Rational rest = mat.tail_sum(pivot);
        if (acts_left && within > Rational(0)) rest += within;
        total += r_pm + rest;
    }
    return total;
}

SearchNode concat(const SearchNode& node, ConcatOp op, const ConcatItem& item) {
    SearchNode child;
    child.db_ = node.db_;
    child.prm_ = node.prm_;
    child.pattern_ = node.pattern_;
    child.ends_.resize(node.ends_.size());
    const WlasDatabase& db = *node.db_;
    const PrmSet& prm = *node.prm_;

    switch (op) {
    case ConcatOp::L: {
        if (node.pattern_.empty())
            throw std::invalid_argument("l-concatenation on an empty pattern");
        if (!std::holds_alternative<CellId>(item))
            throw std::invalid_argument("l-concatenation takes a cell");
        PatternTerm& last = child.pattern_.terms.back();
        CellId cell = std::get<CellId>(item);
        if (cell <= last.cells.back())
            throw std::invalid_argument("l-concatenation cell must exceed the term's max cell");
        last.cells.push_back(cell);
        for (std::size_t s = 0; s < node.ends_.size(); ++s) {
            const auto& mat = prm.matrices[s];
            for (const auto& e : node.ends_[s]) {
                Rational w = mat.match_relevance(cell, e.pos);
                if (!w.is_zero()) child.ends_[s].push_back({e.pos, e.rel + w});
            }
        }
        break;
    }
    case ConcatOp::A: {
        if (node.pattern_.empty())
            throw std::invalid_argument("a-concatenation on an empty pattern");
        if (!std::holds_alternative<Activity>(item))
            throw std::invalid_argument("a-concatenation takes an activity");
        PatternTerm& last = child.pattern_.terms.back();
        const Activity& act = std::get<Activity>(item);
        if (!last.activities.empty() && !(act > last.activities.back()))
            throw std::invalid_argument("a-concatenation activity must exceed the term's max activity");
        last.activities.push_back(act);
        for (std::size_t s = 0; s < node.ends_.size(); ++s)
            for (const auto& e : node.ends_[s])
                if (db.sequences[s].terms[e.pos].has_activity(act))
                    child.ends_[s].push_back(e);
        break;
    }
    case ConcatOp::S: {
        if (!std::holds_alternative<CellId>(item))
            throw std::invalid_argument("s-concatenation takes a cell");
        if (!node.pattern_.empty() && !node.pattern_.terms.back().complete())
            throw std::invalid_argument("s-concatenation while the last term has no activity");
        CellId cell = std::get<CellId>(item);
        child.pattern_.terms.push_back(PatternTerm{{cell}, {}});
        for (std::size_t s = 0; s < node.ends_.size(); ++s) {
            const auto& mat = prm.matrices[s];
            std::size_t m = db.sequences[s].terms.size();
            if (node.pattern_.empty()) {
                for (std::size_t pos = 0; pos < m; ++pos) {
                    Rational w = mat.match_relevance(cell, pos);
                    if (!w.is_zero()) child.ends_[s].push_back({pos, w});
                }
            } else {
                const auto& ends = node.ends_[s];
                if (ends.empty()) continue;
                std::size_t i = 0;
                bool have_prefix = false;
                Rational best(0);
                for (std::size_t pos = ends.front().pos + 1; pos < m; ++pos) {
                    while (i < ends.size() && ends[i].pos < pos) {
                        if (!have_prefix || ends[i].rel > best) best = ends[i].rel;
                        have_prefix = true;
                        ++i;
                    }
                    Rational w = mat.match_relevance(cell, pos);
                    if (have_prefix && !w.is_zero()) child.ends_[s].push_back({pos, best + w});
                }
            }
        }
        break;
    }
    }
    return child;
}

namespace {

struct Child {
    ConcatItem item;
    SearchNode node;
    Rational bound; // PTR of the extended pattern
};

struct ExpandedChildren {
    std::vector<Child> l, a, s;
};

void add_support(std::map<CellId, Rational>& m, CellId c, const Rational& r) {
    auto [it, fresh] = m.emplace(c, r);
    if (!fresh) it->second += r;
}

struct CandidateScan {
    std::map<CellId, Rational> l_support; // candidate -> msr over supporting sequences
    std::map<CellId, Rational> s_support;
    std::set<Activity> a_items;
};

CandidateScan scan_candidates(const SearchNode& node) {
    CandidateScan out;
    const WlasDatabase& db = node.db();
    const PrmSet& prm = node.prm();
    bool is_root = node.pattern().empty();
    bool last_incomplete = !is_root && !node.pattern().terms.back().complete();
    CellId max_cell = is_root ? 0 : node.pattern().terms.back().cells.back();
    const Activity* max_act =
        (!is_root && !last_incomplete) ? &node.pattern().terms.back().activities.back() : nullptr;

    for (std::size_t s = 0; s < db.sequences.size(); ++s) {
        const WlasSequence& seq = db.sequences[s];
        Rational seq_rel = prm.matrices[s].sequence_weight();
        if (is_root) {
            std::set<CellId> seen;
            for (const auto& term : seq.terms)
                for (const auto& wc : term.locations) seen.insert(wc.cell);
            for (CellId c : seen) add_support(out.s_support, c, seq_rel);
            continue;
        }
        const auto& ends = node.ends(s);
        if (ends.empty()) continue;
        if (last_incomplete) {
            std::set<CellId> lseen;
            for (const auto& e : ends) {
                const WlasTerm& term = seq.terms[e.pos];
                for (const auto& wc : term.locations)
                    if (wc.cell > max_cell) lseen.insert(wc.cell);
                out.a_items.insert(term.activities.begin(), term.activities.end());
            }
            for (CellId c : lseen) add_support(out.l_support, c, seq_rel);
        } else {
            std::set<CellId> sseen;
            for (const auto& e : ends) {
                const WlasTerm& term = seq.terms[e.pos];
                for (const auto& a : term.activities)
                    if (a > *max_act) out.a_items.insert(a);
            }
            for (std::size_t pos = ends.front().pos + 1; pos < seq.terms.size(); ++pos)
                for (const auto& wc : seq.terms[pos].locations) sseen.insert(wc.cell);
            for (CellId c : sseen) add_support(out.s_support, c, seq_rel);
        }
    }
    return out;
}

ExpandedChildren expand_children(const SearchNode& node, const Rational& threshold,
                                 const MiningConfig& config, MiningMetrics* metrics,
                                 const NodeHook& hook) {
    CandidateScan scan = scan_candidates(node);
    ExpandedChildren out;

    auto make_child = [&](ConcatOp op, const ConcatItem& item, std::vector<Child>& dst) {
        Child c{item, concat(node, op, item), Rational(0)};
        c.bound = c.node.ptr();
        if (metrics) ++metrics->candidates_generated;
        if (hook) hook(c.node.pattern());
        dst.push_back(std::move(c));
    };
    auto cell_list = [&](const std::map<CellId, Rational>& support, ConcatOp op,
                         std::vector<Child>& dst) {
        for (const auto& [cell, item_msr] : support) {
            if (config.width_prune_enabled && item_msr < threshold) {
                if (metrics) ++metrics->width_pruned;
                continue;
            }
            make_child(op, ConcatItem(cell), dst);
        }
    };

    cell_list(scan.l_support, ConcatOp::L, out.l);
    for (const auto& a : scan.a_items) make_child(ConcatOp::A, ConcatItem(a), out.a);
    cell_list(scan.s_support, ConcatOp::S, out.s);

    if (config.tu_enabled) {
        auto by_bound = [](const Child& x, const Child& y) {
            if (x.bound != y.bound) return y.bound < x.bound;
            return x.item < y.item; // variant order: ties to the smaller item
        };
        std::sort(out.l.begin(), out.l.end(), by_bound);
        std::sort(out.a.begin(), out.a.end(), by_bound);
        std::sort(out.s.begin(), out.s.end(), by_bound);
    }
    return out;
}

} // namespace

ExtensionLists extension_lists(const SearchNode& node, const PrmSet& prm, const ActivityIndex& act,
                               const Rational& threshold, const MiningConfig& config) {
    (void)prm;
    (void)act; // the node carries both; the signature mirrors the mining routine
    ExpandedChildren children = expand_children(node, threshold, config, nullptr, {});
    ExtensionLists lists;
    for (const auto& c : children.l) lists.l_list.push_back(std::get<CellId>(c.item));
    for (const auto& c : children.a) lists.a_list.push_back(std::get<Activity>(c.item));
    for (const auto& c : children.s) lists.s_list.push_back(std::get<CellId>(c.item));
    return lists;
}

std::size_t preinsert(const WlasDatabase& db, TopKList& list) {
    std::map<std::string, TrajectoryPattern> seeds;
    auto add = [&](TrajectoryPattern&& p) {
        std::string key = p.canonical_string();
        seeds.emplace(std::move(key), std::move(p));
    };

    // 1-patterns through the (activity, term) index
    ActivityIndex act = ActivityIndex::build(db);
    for (const auto& [key, seq_ids] : act.entries()) {
        const auto& [activity, term_idx] = key;
        for (std::size_t s : seq_ids)
            for (const auto& wc : db.sequences[s].terms[term_idx].locations)
                add(TrajectoryPattern{{PatternTerm{{wc.cell}, {activity}}}});
    }

    for (const auto& seq : db.sequences) {
        for (std::size_t t = 0; t < seq.terms.size(); ++t) {
            const WlasTerm& term = seq.terms[t];
            for (const auto& wc : term.locations) {
                for (const auto& a : term.activities) {
                    // one l-step and one a-step past the 1-pattern
                    for (const auto& wc2 : term.locations)
                        if (wc2.cell > wc.cell)
                            add(TrajectoryPattern{{PatternTerm{{wc.cell, wc2.cell}, {a}}}});
                    for (const auto& a2 : term.activities)
                        if (a2 > a) add(TrajectoryPattern{{PatternTerm{{wc.cell}, {a, a2}}}});
                    // one s-step plus the completing a-step
                    for (std::size_t t2 = t + 1; t2 < seq.terms.size(); ++t2)
                        for (const auto& wc2 : seq.terms[t2].locations)
                            for (const auto& a2 : seq.terms[t2].activities)
                                add(TrajectoryPattern{{PatternTerm{{wc.cell}, {a}},
                                                       PatternTerm{{wc2.cell}, {a2}}}});
                }
            }
        }
        add(r_pattern(seq));
    }

    std::size_t accepted = 0;
    for (const auto& [_, p] : seeds)
        if (list.insert(p, db_relevance(p, db))) ++accepted;
    return accepted;
}

MineResult mine_topk(const WlasDatabase& db, const MiningConfig& config, const NodeHook& hook) {
    if (config.k < 1) throw std::invalid_argument("k must be at least 1");
    validate(db);

    PrmSet prm = build_prm(db);
    TopKList list(config.k);
    MiningMetrics metrics;

    auto note_threshold = [&]() {
        Rational t = list.threshold();
        if (metrics.threshold_trace.empty() || metrics.threshold_trace.back().second != t)
            metrics.threshold_trace.emplace_back(metrics.recursive_calls, t);
    };

    if (config.ti_enabled) {
        metrics.insertions += preinsert(db, list);
        note_threshold();
    }

    std::function<void(const SearchNode&)> expand = [&](const SearchNode& node) {
        ++metrics.recursive_calls;
        ExpandedChildren children =
            expand_children(node, list.threshold(), config, &metrics, hook);
        auto visit = [&](Child& c, bool emit) {
            if (emit && list.insert(c.node.pattern(), c.node.relevance())) {
                ++metrics.insertions;
                note_threshold();
            }
            if (!config.depth_prune_enabled || c.bound >= list.threshold())
                expand(c.node);
            else
                ++metrics.depth_pruned;
        };
        for (auto& c : children.l) visit(c, false);
        for (auto& c : children.a) visit(c, true);
        for (auto& c : children.s) visit(c, false);
    };
    expand(SearchNode::root(db, prm));

    MineResult out;
    out.results = list.results();
    out.metrics = std::move(metrics);
    return out;
}

} // namespace trajmine

#include "trajmine/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "trajmine/errors.hpp"

namespace trajmine {

namespace {

// Everything below reimplements containment, matching and scoring from the
// definitions, on purpose; the miner must be checkable against code that does
// not share its shortcuts.

bool oracle_contains(const PatternTerm& inner, const WlasTerm& outer) {
    for (CellId c : inner.cells) {
        bool found = false;
        for (const auto& wc : outer.locations)
            if (wc.cell == c) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    for (const auto& a : inner.activities) {
        bool found = false;
        for (const auto& oa : outer.activities)
            if (oa == a) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

Rational oracle_term_weight(const PatternTerm& inner, const WlasTerm& outer) {
    Rational s(0);
    for (CellId c : inner.cells)
        for (const auto& wc : outer.locations)
            if (wc.cell == c) s += wc.weight;
    return s;
}

// max embedding relevance, memoized on (pattern term, first usable position)
class SeqScorer {
public:
    SeqScorer(const TrajectoryPattern& p, const WlasSequence& s) : p_(p), s_(s) {
        memo_.assign((p.terms.size() + 1) * (s.terms.size() + 1), {});
    }
    std::optional<Rational> best() { return best_from(0, 0); }

private:
    const TrajectoryPattern& p_;
    const WlasSequence& s_;
    // outer optional: slot computed yet; inner: match found
    std::vector<std::optional<std::optional<Rational>>> memo_;

    std::optional<Rational> best_from(std::size_t i, std::size_t from) {
        if (i == p_.terms.size()) return Rational(0);
        auto& cell = memo_[i * (s_.terms.size() + 1) + from];
        if (cell) return *cell;
        std::optional<Rational> best;
        for (std::size_t j = from; j < s_.terms.size(); ++j) {
            if (!oracle_contains(p_.terms[i], s_.terms[j])) continue;
            auto sub = best_from(i + 1, j + 1);
            if (!sub) continue;
            Rational cand = oracle_term_weight(p_.terms[i], s_.terms[j]) + *sub;
            if (!best || cand > *best) best = cand;
        }
        cell = best;
        return best;
    }
};

Rational oracle_db_score(const TrajectoryPattern& p, const WlasDatabase& db) {
    Rational total(0);
    for (const auto& seq : db.sequences) {
        auto b = SeqScorer(p, seq).best();
        if (b) total += *b;
    }
    return total;
}

void check_budget(const WlasDatabase& db, std::uint64_t cap) {
    long double total = 0;
    for (const auto& seq : db.sequences) {
        long double prod = 1;
        for (const auto& term : seq.terms) {
            prod *= std::pow(2.0L, (long double)term.locations.size()) *
                    std::pow(2.0L, (long double)term.activities.size());
            if (prod > 4e18L) break;
        }
        total += prod;
        if (total > 4e18L) break;
    }
    if (total > (long double)cap)
        throw SizeLimitError("oracle enumeration budget exceeded: per-sequence term powerset "
                             "product is about " +
                             std::to_string((double)total) + ", cap is " + std::to_string(cap));
}

// Exhaustive walk over sequences of universe terms. Visits every pattern with
// at least one match exactly once (the universe is deduplicated, so distinct
// id sequences are distinct patterns). Match state is one relevance slot per
// wLAS term position: the best embedding of the current prefix ending there.
struct Enumerator {
    using Emit = std::function<void(const std::vector<std::size_t>&, const Rational&)>;

    const WlasDatabase& db;
    std::uint64_t cap = 0;
    std::uint64_t work = 0;

    std::vector<PatternTerm> universe;
    struct Occurrence {
        std::size_t seq;
        std::size_t pos;    // term index within the sequence
        std::size_t gpos;   // global position index
        Rational weight;
    };
    std::vector<std::vector<Occurrence>> occ;        // by universe id
    std::vector<std::vector<std::size_t>> ids_at;    // by gpos: contained universe ids
    std::vector<std::size_t> seq_off;                // gpos of each sequence's first term
    std::vector<std::size_t> seq_len;
    std::size_t total_pos = 0;

    struct State {
        std::vector<Rational> rel;  // by gpos, valid where mask bit is set
        std::uint64_t mask = 0;
        // per-sequence running max of rel up to each position, by gpos
        std::vector<Rational> pm;
        std::uint64_t pm_mask = 0;
    };
    std::vector<State> stack;                 // by prefix depth
    std::vector<std::uint32_t> stamp;
    std::uint32_t stamp_gen = 0;
    std::vector<std::size_t> prefix;

    explicit Enumerator(const WlasDatabase& d, std::uint64_t c) : db(d), cap(c) {}

    void charge(std::uint64_t amount) {
        work += amount;
        if (work > cap)
            throw SizeLimitError("oracle enumeration budget exceeded: more than " +
                                 std::to_string(cap) + " candidate checks");
    }

    void build_universe() {
        std::map<std::string, PatternTerm> dedup;
        for (const auto& seq : db.sequences) {
            for (const auto& term : seq.terms) {
                std::size_t nc = term.locations.size();
                std::size_t na = term.activities.size();
                if (nc == 0 || na == 0) continue;
                if (nc > 62 || na > 62)
                    throw SizeLimitError("oracle enumeration budget exceeded: term too wide");
                charge((1ull << nc) * (1ull << na));
                for (std::uint64_t cm = 1; cm < (1ull << nc); ++cm) {
                    PatternTerm base;
                    for (std::size_t i = 0; i < nc; ++i)
                        if (cm & (1ull << i)) base.cells.push_back(term.locations[i].cell);
                    for (std::uint64_t am = 1; am < (1ull << na); ++am) {
                        PatternTerm pt = base;
                        for (std::size_t i = 0; i < na; ++i)
                            if (am & (1ull << i)) pt.activities.push_back(term.activities[i]);
                        TrajectoryPattern key{{pt}};
                        dedup.emplace(key.canonical_string(), std::move(pt));
                    }
                }
            }
        }
        universe.reserve(dedup.size());
        for (auto& [_, pt] : dedup) universe.push_back(std::move(pt));
    }

    void build_index() {
        for (const auto& seq : db.sequences) {
            seq_off.push_back(total_pos);
            seq_len.push_back(seq.terms.size());
            total_pos += seq.terms.size();
        }
        if (total_pos > 64)
            throw SizeLimitError(
                "oracle enumeration budget exceeded: more than 64 wLAS terms overall");
        ids_at.assign(total_pos, {});
        occ.assign(universe.size(), {});
        charge(universe.size() * std::max<std::size_t>(total_pos, 1));
        for (std::size_t id = 0; id < universe.size(); ++id) {
            for (std::size_t s = 0; s < db.sequences.size(); ++s) {
                const auto& seq = db.sequences[s];
                for (std::size_t p = 0; p < seq.terms.size(); ++p) {
                    if (!oracle_contains(universe[id], seq.terms[p])) continue;
                    std::size_t g = seq_off[s] + p;
                    occ[id].push_back({s, p, g, oracle_term_weight(universe[id], seq.terms[p])});
                    ids_at[g].push_back(id);
                }
            }
        }
        stack.assign(total_pos + 1,
                     State{std::vector<Rational>(total_pos), 0,
                           std::vector<Rational>(total_pos), 0});
        stamp.assign(universe.size(), 0);
    }

    Rational score(const State& st) const {
        Rational total(0);
        for (std::size_t s = 0; s < db.sequences.size(); ++s) {
            bool any = false;
            Rational best(0);
            for (std::size_t p = 0; p < seq_len[s]; ++p) {
                std::size_t g = seq_off[s] + p;
                if (!(st.mask & (1ull << g))) continue;
                if (!any || best < st.rel[g]) best = st.rel[g];
                any = true;
            }
            if (any) total += best;
        }
        return total;
    }

    void dfs(std::size_t depth, const Emit& emit) {
        State& cur = stack[depth];
        if (depth > 0) {
            charge(1);
            emit(prefix, score(cur));
        }
        // Running per-sequence max of cur.rel up to each position, used as the
        // "best embedding strictly before p" base when extending. Lives in the
        // depth's own slot; recursion below must not clobber it.
        cur.pm_mask = 0;
        for (std::size_t s = 0; s < db.sequences.size(); ++s) {
            bool any = false;
            Rational run(0);
            for (std::size_t p = 0; p < seq_len[s]; ++p) {
                std::size_t g = seq_off[s] + p;
                if (cur.mask & (1ull << g)) {
                    if (!any || run < cur.rel[g]) run = cur.rel[g];
                    any = true;
                }
                if (any) {
                    cur.pm[g] = run;
                    cur.pm_mask |= 1ull << g;
                }
            }
        }
        // Candidate ids: anything contained at a position a new term could
        // occupy (after the earliest current end; anywhere at the root).
        ++stamp_gen;
        std::vector<std::size_t> cands;
        for (std::size_t s = 0; s < db.sequences.size(); ++s) {
            std::size_t first = 0;
            if (depth > 0) {
                std::uint64_t bits = cur.mask >> seq_off[s];
                bits &= (seq_len[s] == 64) ? ~0ull : ((1ull << seq_len[s]) - 1);
                if (bits == 0) continue;  // prefix does not match this sequence
                first = (std::size_t)__builtin_ctzll(bits) + 1;
            }
            for (std::size_t p = first; p < seq_len[s]; ++p)
                for (std::size_t id : ids_at[seq_off[s] + p])
                    if (stamp[id] != stamp_gen) {
                        stamp[id] = stamp_gen;
                        cands.push_back(id);
                    }
        }
        std::sort(cands.begin(), cands.end());
        for (std::size_t id : cands) {
            State& child = stack[depth + 1];
            child.mask = 0;
            for (const auto& o : occ[id]) {
                Rational base(0);
                if (depth > 0) {
                    if (o.pos == 0) continue;
                    std::size_t prev = o.gpos - 1;
                    if (!(cur.pm_mask & (1ull << prev))) continue;
                    base = cur.pm[prev];
                }
                child.rel[o.gpos] = base + o.weight;
                child.mask |= 1ull << o.gpos;
            }
            if (child.mask == 0) continue;
            prefix.push_back(id);
            dfs(depth + 1, emit);
            prefix.pop_back();
        }
    }

    TrajectoryPattern materialize(const std::vector<std::size_t>& ids) const {
        TrajectoryPattern p;
        p.terms.reserve(ids.size());
        for (std::size_t id : ids) p.terms.push_back(universe[id]);
        return p;
    }

    void run(const Emit& emit) {
        build_universe();
        build_index();
        dfs(0, emit);
    }
};

} // namespace

std::vector<ScoredPattern> enumerate_patterns(const WlasDatabase& db, const OracleConfig& config) {
    check_budget(db, config.work_cap);
    Enumerator e(db, config.work_cap);
    std::vector<ScoredPattern> out;
    // Rescore from scratch per pattern; the walk's incremental relevance is
    // cross-checked against the memoized direct recursion this way.
    e.run([&](const std::vector<std::size_t>& ids, const Rational& incremental) {
        ScoredPattern sp{e.materialize(ids), oracle_db_score(e.materialize(ids), db)};
        if (sp.score != incremental)
            throw std::logic_error("oracle self-check failed: incremental score mismatch");
        out.push_back(std::move(sp));
    });
    std::sort(out.begin(), out.end(), [](const ScoredPattern& a, const ScoredPattern& b) {
        return canonical_less(a.pattern, b.pattern);
    });
    return out;
}

std::vector<ScoredPattern> brute_topk(const WlasDatabase& db, int k, const OracleConfig& config) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    check_budget(db, config.work_cap);
    Enumerator e(db, config.work_cap);

    struct Entry {
        Rational score;
        TrajectoryPattern pat;
    };
    // Worst entry first: lowest score, then canonically largest.
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score < b.score;
        return canonical_less(b.pat, a.pat);
    };
    std::set<Entry, decltype(worse)> best(worse);

    e.run([&](const std::vector<std::size_t>& ids, const Rational& score) {
        if (best.size() == static_cast<std::size_t>(k)) {
            const Entry& worst = *best.begin();
            if (score < worst.score) return;
            if (score == worst.score) {
                TrajectoryPattern pat = e.materialize(ids);
                if (canonical_less(worst.pat, pat)) return;
                best.erase(best.begin());
                best.insert({score, std::move(pat)});
                return;
            }
            best.erase(best.begin());
        }
        best.insert({score, e.materialize(ids)});
    });

    std::vector<ScoredPattern> out;
    out.reserve(best.size());
    for (auto it = best.rbegin(); it != best.rend(); ++it)
        out.push_back({it->pat, it->score});
    return out;
}

} // namespace trajmine

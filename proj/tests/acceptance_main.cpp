// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
//
//   A1  worked relevance values on the reference database, under a second
//   A2  worked prospective-relevance bounds on the reference database
//   A3  exact grid weights for the worked encoding example
//   A4  full miner equals brute force on a 200-database random corpus
//   A5  all four strategy variants return identical results on that corpus
//   A6  relevance of matching sequences is anti-monotone under extension
//   A7  the prospective bound dominates every one-step child's relevance
//   A8  the strategies pay off: call-count medians and threshold dominance
//   A9  no pattern is generated twice within any single mining run

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "testutil.hpp"
#include "trajmine/grid.hpp"
#include "trajmine/miner.hpp"
#include "trajmine/oracle.hpp"
#include "trajmine/prm.hpp"
#include "trajmine/relevance.hpp"

using namespace trajmine;
using testutil::dec;
using testutil::pat;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << id << " - " << detail << std::endl;
    if (!pass) ++failures;
}

using Outcome = std::pair<bool, std::string>;

void run(const std::string& id, const std::function<Outcome()>& fn) {
    try {
        auto [ok, msg] = fn();
        report(id, ok, msg);
    } catch (const std::exception& e) {
        report(id, false, std::string("unexpected exception: ") + e.what());
    }
}

struct Check {
    bool ok = true;
    std::string first;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first = what;
        }
    }
    Outcome done(const std::string& msg) const {
        return {ok, ok ? msg : msg + "; first failure: " + first};
    }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

TrajectoryPattern worked_pattern() { return pat({{{1, 2}, {"a", "b"}}, {{5}, {"g"}}}); }

Outcome a1() {
    auto t0 = std::chrono::steady_clock::now();
    WlasDatabase db = testutil::reference_db();
    TrajectoryPattern T = worked_pattern();
    const WlasSequence& s1 = db.sequences[0];
    const WlasSequence& s2 = db.sequences[1];
    const WlasSequence& s3 = db.sequences[2];

    Check c;
    c.expect(term_relevance(T.terms[0], s1.terms[0]) == dec("0.5"), "first term value");
    c.expect(term_relevance(T.terms[0], s1.terms[1]) == dec("0.4"), "second term value");
    c.expect(term_relevance(T.terms[1], s3.terms[1]) == dec("0.2"), "third term value");
    c.expect(term_relevance(T.terms[1], s1.terms[2]) == dec("0.1"), "fourth term value");
    c.expect(embedding_relevance(T, s1, {0, 1}) == dec("0.9"), "embedding (1,2)");
    c.expect(embedding_relevance(T, s1, {0, 2}) == dec("0.6"), "embedding (1,3)");
    c.expect(embedding_relevance(T, s1, {1, 2}) == dec("0.5"), "embedding (2,3)");
    c.expect(max_relevance(T, s1) == dec("0.9"), "max in the first sequence");
    c.expect(max_relevance(T, s2) == Rational(0), "no match in the second sequence");
    c.expect(max_relevance(T, s3) == dec("0.8"), "max in the third sequence");
    c.expect(db_relevance(T, db) == dec("1.7"), "database relevance");
    double ms = ms_since(t0);
    c.expect(ms < 1000.0, "runtime above one second");

    std::ostringstream msg;
    msg << "worked relevance values reproduced exactly in " << ms << " ms";
    return c.done(msg.str());
}

Outcome a2() {
    WlasDatabase db = testutil::reference_db();
    TrajectoryPattern T = worked_pattern();

    Check c;
    c.expect(ptr_in_sequence(T, db.sequences[0]) == dec("2.1"), "first sequence bound");
    c.expect(ptr_in_sequence(T, db.sequences[1]) == Rational(0), "second sequence bound");
    c.expect(ptr_in_sequence(T, db.sequences[2]) == dec("1.6"), "third sequence bound");
    PtrBreakdown b = ptr(T, db);
    c.expect(b.total == dec("3.7"), "total bound");
    c.expect(b.per_sequence.size() == 3, "per-sequence entry count");
    return c.done("worked prospective-relevance bounds reproduced exactly");
}

Outcome a3() {
    CellGrid grid = build_grid(Box::from_doubles(0, 0, 8, 16), Rational(2), Rational(2));
    auto cells = encode_region(Box::from_doubles(1, 1, 2.5, 4), grid);

    Check c;
    c.expect(cells.size() == 4, "cell count");
    if (cells.size() == 4) {
        c.expect(cells[0].cell == 0 && cells[0].weight == Rational(2, 9), "cell 0 weight 2/9");
        c.expect(cells[1].cell == 1 && cells[1].weight == Rational(1, 9), "cell 1 weight 1/9");
        c.expect(cells[2].cell == 4 && cells[2].weight == Rational(4, 9), "cell 4 weight 4/9");
        c.expect(cells[3].cell == 5 && cells[3].weight == Rational(2, 9), "cell 5 weight 2/9");
    }
    Rational sum(0);
    for (const auto& wc : cells) sum += wc.weight;
    c.expect(sum == Rational(1), "weights sum to 1");
    return c.done("grid overlap weights {2/9, 1/9, 4/9, 2/9} are exact");
}

// A4, A5 and A9 share one corpus so the equality claims cover the same runs.
struct CorpusOutcome {
    Outcome a4{false, "corpus did not run"};
    Outcome a5{false, "corpus did not run"};
    Outcome a9{false, "corpus did not run"};
};

CorpusOutcome corpus_criteria() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240801);
    const int n_dbs = 200;
    const std::vector<int> ks = {1, 3, 5};
    const std::vector<std::string> variants = {"baseline", "baseline+i", "baseline+s", "full"};
    OracleConfig oc;
    oc.work_cap = 200'000'000; // generous headroom for the densest draws

    Check a4c, a5c, a9c;
    std::uint64_t runs = 0, duplicate_free_runs = 0;

    for (int d = 0; d < n_dbs; ++d) {
        WlasDatabase db = testutil::random_db(rng);
        for (int k : ks) {
            auto brute = brute_topk(db, k, oc);
            std::vector<MineResult> per_variant;
            for (const auto& v : variants) {
                std::set<std::string> seen;
                bool dup = false;
                MineResult r = mine_topk(db, MiningConfig::for_variant(v, k),
                                         [&](const TrajectoryPattern& p) {
                                             dup |= !seen.insert(p.canonical_string()).second;
                                         });
                ++runs;
                if (!dup) ++duplicate_free_runs;
                a9c.expect(!dup, "duplicate node in db " + std::to_string(d) + " variant " + v);
                per_variant.push_back(std::move(r));
            }
            const auto& full = per_variant.back().results;
            std::ostringstream at;
            at << "db " << d << " k " << k;
            a4c.expect(full.size() == brute.size(), at.str() + ": result count");
            for (std::size_t i = 0; i < std::min(full.size(), brute.size()); ++i) {
                a4c.expect(full[i].pattern == brute[i].pattern, at.str() + ": pattern rank " +
                                                                    std::to_string(i + 1));
                a4c.expect(full[i].score == brute[i].score,
                           at.str() + ": score rank " + std::to_string(i + 1));
            }
            for (std::size_t v = 0; v + 1 < per_variant.size(); ++v) {
                const auto& res = per_variant[v].results;
                a5c.expect(res.size() == full.size(), at.str() + ": count for " + variants[v]);
                for (std::size_t i = 0; i < std::min(res.size(), full.size()); ++i)
                    a5c.expect(res[i].pattern == full[i].pattern && res[i].score == full[i].score,
                               at.str() + ": " + variants[v] + " rank " + std::to_string(i + 1));
            }
        }
    }
    double secs = ms_since(t0) / 1000.0;
    a4c.expect(secs < 60.0, "corpus exceeded the 60 s budget");

    CorpusOutcome out;
    {
        std::ostringstream m;
        m << n_dbs << " random databases x k in {1,3,5}: full miner equals brute force in "
          << secs << " s";
        out.a4 = a4c.done(m.str());
    }
    out.a5 = a5c.done("baseline, baseline+i, baseline+s and full agree on every corpus run");
    {
        std::ostringstream m;
        m << duplicate_free_runs << "/" << runs << " mining runs generated every pattern once";
        out.a9 = a9c.done(m.str());
    }
    return out;
}

Outcome a6() {
    std::mt19937_64 rng(424242);
    Check c;
    int pairs = 0;
    while (pairs < 1200) {
        WlasDatabase db = testutil::random_db(rng);
        for (int i = 0; i < 6; ++i, ++pairs) {
            TrajectoryPattern big = testutil::random_matching_pattern(rng, db);
            TrajectoryPattern small = testutil::random_subpattern(rng, big);
            c.expect(msr(big, db) <= msr(small, db),
                     "pair " + std::to_string(pairs) + ": " + small.canonical_string() +
                         " vs " + big.canonical_string());
        }
    }
    return c.done(std::to_string(pairs) + " subpattern pairs: matching-sequence relevance never "
                                          "grows under extension");
}

Outcome a7() {
    std::mt19937_64 rng(515151);
    Check c;
    MiningConfig open;
    open.k = 1;
    open.ti_enabled = false;
    open.tu_enabled = false;
    open.width_prune_enabled = false;
    open.depth_prune_enabled = false;

    int pairs = 0;
    while (pairs < 1100) {
        WlasDatabase db = testutil::random_db(rng);
        PrmSet prm = build_prm(db);
        ActivityIndex act = build_act(db);
        SearchNode node = SearchNode::root(db, prm);
        for (int depth = 0; depth < 8; ++depth) {
            ExtensionLists lists = extension_lists(node, prm, act, Rational(0), open);
            std::vector<std::pair<ConcatOp, ConcatItem>> cands;
            for (CellId x : lists.l_list) cands.emplace_back(ConcatOp::L, ConcatItem(x));
            for (const Activity& x : lists.a_list) cands.emplace_back(ConcatOp::A, ConcatItem(x));
            for (CellId x : lists.s_list) cands.emplace_back(ConcatOp::S, ConcatItem(x));
            if (cands.empty()) break;

            bool at_root = node.pattern().empty();
            Rational bound = at_root ? Rational(0) : node.ptr();
            for (const auto& [op, item] : cands) {
                SearchNode child = concat(node, op, item);
                if (!at_root) {
                    ++pairs;
                    c.expect(child.relevance() <= bound,
                             "child " + child.pattern().canonical_string() + " beats its parent");
                }
            }
            std::size_t pick =
                std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng);
            node = concat(node, cands[pick].first, cands[pick].second);
        }
    }
    return c.done(std::to_string(pairs) +
                  " parent/child pairs: the prospective bound dominates every one-step child");
}

Outcome a8() {
    std::mt19937_64 rng(616161);
    const int instances = 60;
    std::vector<std::uint64_t> full_calls, base_calls;
    Check c;

    int dominance_checked = 0;
    for (int i = 0; i < instances; ++i) {
        WlasDatabase db = testutil::random_db(rng);
        full_calls.push_back(
            mine_topk(db, MiningConfig::for_variant("full", 10)).metrics.recursive_calls);
        base_calls.push_back(
            mine_topk(db, MiningConfig::for_variant("baseline", 10)).metrics.recursive_calls);

        // threshold-initialization dominance, everything else switched off
        MiningConfig with_ti;
        with_ti.k = 10;
        with_ti.ti_enabled = true;
        with_ti.tu_enabled = false;
        with_ti.width_prune_enabled = false;
        with_ti.depth_prune_enabled = false;
        MiningConfig no_ti = with_ti;
        no_ti.ti_enabled = false;
        MiningMetrics mt = mine_topk(db, with_ti).metrics;
        MiningMetrics mn = mine_topk(db, no_ti).metrics;

        std::set<std::uint64_t> indices{0};
        for (const auto& [idx, _] : mt.threshold_trace) indices.insert(idx);
        for (const auto& [idx, _] : mn.threshold_trace) indices.insert(idx);
        for (std::uint64_t idx : indices)
            c.expect(mt.threshold_at(idx) >= mn.threshold_at(idx),
                     "threshold drops below the uninitialized run at call " +
                         std::to_string(idx) + " in instance " + std::to_string(i));
        ++dominance_checked;
    }

    auto median2x = [](std::vector<std::uint64_t> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2] + v[(v.size() - 1) / 2]; // twice the median
    };
    std::uint64_t mf = median2x(full_calls), mb = median2x(base_calls);
    c.expect(mf <= mb, "median call count " + std::to_string(mf / 2.0) + " exceeds baseline " +
                           std::to_string(mb / 2.0));

    std::ostringstream m;
    m << instances << " paired runs at k=10: median calls full " << mf / 2.0 << " vs baseline "
      << mb / 2.0 << "; threshold dominance held on " << dominance_checked << " instances";
    return c.done(m.str());
}

} // namespace

int main() {
    run("A1", a1);
    run("A2", a2);
    run("A3", a3);
    CorpusOutcome corpus{};
    try {
        corpus = corpus_criteria();
    } catch (const std::exception& e) {
        std::string why = std::string("unexpected exception: ") + e.what();
        corpus.a4 = {false, why};
        corpus.a5 = {false, why};
        corpus.a9 = {false, why};
    }
    report("A4", corpus.a4.first, corpus.a4.second);
    report("A5", corpus.a5.first, corpus.a5.second);
    run("A6", a6);
    run("A7", a7);
    run("A8", a8);
    report("A9", corpus.a9.first, corpus.a9.second);

    if (failures > 0) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}

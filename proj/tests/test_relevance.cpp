#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "testutil.hpp"
#include "trajmine/io.hpp"
#include "trajmine/oracle.hpp"
#include "trajmine/relevance.hpp"

using namespace trajmine;
using testutil::dec;
using testutil::pat;

namespace {
// T = <({1,2},{a,b}), ({5},{g})> over the three-trajectory reference database
TrajectoryPattern ref_T() { return pat({{{1, 2}, {"a", "b"}}, {{5}, {"g"}}}); }
} // namespace

TEST_CASE("term relevance: weight sum gated by activities") {
    WlasDatabase db = testutil::reference_db();
    const WlasSequence& a1 = db.sequences[0];
    const WlasSequence& a3 = db.sequences[2];

    PatternTerm eta1{{1, 2}, {"a", "b"}};
    PatternTerm eta2{{5}, {"g"}};
    CHECK(term_relevance(eta1, a1.terms[0]) == dec("0.5"));
    CHECK(term_relevance(eta1, a1.terms[1]) == dec("0.4"));
    CHECK(term_relevance(eta2, a3.terms[1]) == dec("0.2"));
    CHECK(term_relevance(eta2, a1.terms[2]) == dec("0.1"));
    // activity missing: relevance collapses to 0 despite cell overlap
    CHECK(term_relevance(PatternTerm{{1}, {"z"}}, a1.terms[0]) == Rational(0));
    CHECK(term_relevance(eta2, a1.terms[0]) == Rational(0));
}

TEST_CASE("max relevance over all embeddings") {
    WlasDatabase db = testutil::reference_db();
    TrajectoryPattern T = ref_T();
    CHECK(max_relevance(T, db.sequences[0]) == dec("0.9")); // max{0.9, 0.6, 0.5}
    CHECK(max_relevance(T, db.sequences[1]) == Rational(0));
    CHECK(max_relevance(T, db.sequences[2]) == dec("0.8")); // 0.6 + 0.2

    // per-embedding values behind the maximum
    auto ms = find_exact_matches(T, db.sequences[0]);
    REQUIRE(ms.size() == 3);
    CHECK(embedding_relevance(T, db.sequences[0], ms[0]) == dec("0.9"));
    CHECK(embedding_relevance(T, db.sequences[0], ms[1]) == dec("0.6"));
    CHECK(embedding_relevance(T, db.sequences[0], ms[2]) == dec("0.5"));
}

TEST_CASE("db relevance sums per-sequence maxima") {
    WlasDatabase db = testutil::reference_db();
    CHECK(db_relevance(ref_T(), db) == dec("1.7"));
    CHECK(db_relevance(pat({{{1}, {"z"}}}), db) == Rational(0));
    WlasDatabase empty;
    CHECK(db_relevance(ref_T(), empty) == Rational(0));
}

TEST_CASE("sequence relevance is the full weight") {
    WlasDatabase db = testutil::reference_db();
    CHECK(sequence_relevance(db.sequences[0]) == Rational(3));
    CHECK(sequence_relevance(db.sequences[2]) == Rational(2));
    CHECK(sequence_relevance(WlasSequence{}) == Rational(0));
}

TEST_CASE("msr sums matching sequences' relevance") {
    WlasDatabase db = testutil::reference_db();
    CHECK(msr(ref_T(), db) == Rational(5)); // alpha1 and alpha3 match: 3 + 2
    CHECK(msr(pat({{{5}, {"g"}}}), db) == Rational(5));
    CHECK(msr(pat({{{1}, {"z"}}}), db) == Rational(0));
}

TEST_CASE("pivot match relevance") {
    WlasDatabase db = testutil::reference_db();
    auto r1 = pivot_match_relevance(ref_T(), db.sequences[0]);
    REQUIRE(r1);
    CHECK(*r1 == dec("0.9"));

    // two pivot embeddings, the max wins: max{0.3+0.24, 0.2+0.24} = 0.54
    TrajectoryPattern Tp = pat({{{7}, {"e"}}, {{9}, {"d"}}});
    auto r2 = pivot_match_relevance(Tp, db.sequences[1]);
    REQUIRE(r2);
    CHECK(*r2 == dec("0.54"));

    CHECK(!pivot_match_relevance(ref_T(), db.sequences[1]));
}

TEST_CASE("rest relevance of the projected subsequence") {
    WlasDatabase db = testutil::reference_db();
    // projected: <({7:0.2},{j}), ({3:0.2,5:0.1,7:0.25,11:0.45},{a,c,d,g})> -> 1.2
    auto r1 = rest_relevance(ref_T(), db.sequences[0]);
    REQUIRE(r1);
    CHECK(*r1 == dec("1.2"));
    auto r3 = rest_relevance(ref_T(), db.sequences[2]);
    REQUIRE(r3);
    CHECK(*r3 == dec("0.8"));
    CHECK(!rest_relevance(ref_T(), db.sequences[1]));

    // pivot is the last term and nothing remains after it
    WlasDatabase one;
    one.sequences.push_back(testutil::gamma_seq());
    auto r4 = rest_relevance(pat({{{3}, {"b"}}, {{6}, {"c"}}}), one.sequences[0]);
    REQUIRE(r4);
    CHECK(*r4 == Rational(0));
}

TEST_CASE("ptr per sequence and total") {
    WlasDatabase db = testutil::reference_db();
    TrajectoryPattern T = ref_T();
    CHECK(ptr_in_sequence(T, db.sequences[0]) == dec("2.1"));
    CHECK(ptr_in_sequence(T, db.sequences[1]) == Rational(0));
    CHECK(ptr_in_sequence(T, db.sequences[2]) == dec("1.6"));

    PtrBreakdown b = ptr(T, db);
    CHECK(b.total == dec("3.7"));
    REQUIRE(b.per_sequence.size() == 3);
    CHECK(b.per_sequence[0].first == "a1");
    CHECK(b.per_sequence[0].second == dec("2.1"));
    CHECK(b.per_sequence[1].second == Rational(0));
    CHECK(b.per_sequence[2].second == dec("1.6"));
}

TEST_CASE("single-sequence relevance example from the encoded walk") {
    // <({2,6},{a}), ({26},{c})> on the encoded 4-term walk (1-based ids 2,6,26
    // are cells 1,5,25 here): 1/3 + max{1/3, 1/2} = 5/6
    std::ifstream in(std::string(TRAJMINE_DATA_DIR) + "/anon_walk_encoded.jsonl");
    REQUIRE(in.good());
    WlasDatabase db = read_wlas_jsonl(in, nullptr);
    REQUIRE(db.sequences.size() == 1);
    TrajectoryPattern t1 = pat({{{1, 5}, {"a"}}});
    CHECK(max_relevance(t1, db.sequences[0]) == Rational(1, 3));
    TrajectoryPattern t = pat({{{1, 5}, {"a"}}, {{25}, {"c"}}});
    CHECK(max_relevance(t, db.sequences[0]) == Rational(5, 6));
}

TEST_CASE("msr is anti-monotone under super-patterns (sampled)") {
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 300) {
        WlasDatabase db = testutil::random_db(rng);
        for (int i = 0; i < 5; ++i, ++checked) {
            TrajectoryPattern t2 = testutil::random_matching_pattern(rng, db);
            TrajectoryPattern t1 = testutil::random_subpattern(rng, t2);
            CHECK(msr(t2, db) <= msr(t1, db));
        }
    }
}

TEST_CASE("db relevance of any child stays within the parent's ptr (sampled)") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 200) {
        WlasDatabase db = testutil::random_db(rng);
        TrajectoryPattern parent = testutil::random_matching_pattern(rng, db);
        // grow by one full term copied from some matching spot; any emittable
        // descendant's relevance is bounded by the parent's PTR
        for (const auto& seq : db.sequences) {
            auto pm = pivot_match(parent, seq);
            if (!pm) continue;
            for (std::size_t j = pm->pivot_index + 1; j < seq.terms.size(); ++j) {
                TrajectoryPattern child = parent;
                PatternTerm extra;
                for (const auto& wc : seq.terms[j].locations) extra.cells.push_back(wc.cell);
                extra.activities = seq.terms[j].activities;
                child.terms.push_back(extra);
                CHECK(db_relevance(child, db) <= ptr(parent, db).total);
                ++checked;
            }
        }
    }
}

TEST_CASE("db relevance agrees with the oracle scorer on random patterns") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 40; ++i) {
        WlasDatabase db = testutil::random_db(rng);
        for (const auto& sp : enumerate_patterns(db)) {
            CHECK(db_relevance(sp.pattern, db) == sp.score);
        }
    }
}

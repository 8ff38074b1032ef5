#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "testutil.hpp"
#include "trajmine/anonymize.hpp"
#include "trajmine/errors.hpp"
#include "trajmine/io.hpp"

using namespace trajmine;

namespace {

std::vector<RawTrajectory> fixture_raw() {
    std::ifstream in(std::string(TRAJMINE_DATA_DIR) + "/raw_points.jsonl");
    REQUIRE(in.good());
    return read_raw_jsonl(in);
}

std::string dump(const std::vector<AnonymousTrajectory>& a) {
    std::ostringstream out;
    write_anon_jsonl(a, out);
    return out.str();
}

} // namespace

TEST_CASE("k=1 with no inflation keeps each point to itself") {
    auto raw = fixture_raw();
    REQUIRE(raw.size() == 4);
    AnonymizeConfig cfg;
    cfg.inflate = 0.0;
    auto anon = toy_anonymize(raw, cfg);
    REQUIRE(anon.size() == raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        CHECK(anon[i].id == raw[i].id);
        REQUIRE(anon[i].terms.size() == raw[i].terms.size());
        for (std::size_t t = 0; t < raw[i].terms.size(); ++t) {
            const auto& box = anon[i].terms[t].mbr;
            CHECK(box.xmin == box.xmax);
            CHECK(box.xmin == Rational::from_double(raw[i].terms[t].x));
            CHECK(box.ymin == Rational::from_double(raw[i].terms[t].y));
            CHECK(anon[i].terms[t].activities == raw[i].terms[t].activities);
        }
    }
    validate_anonymization(raw, anon, 1, 1);
}

TEST_CASE("k=2 boxes cover a neighbor and keep the owner inside") {
    auto raw = fixture_raw();
    AnonymizeConfig cfg;
    cfg.k_anon = 2;
    cfg.inflate = 0.0;
    auto anon = toy_anonymize(raw, cfg);
    validate_anonymization(raw, anon, 2, 1);
    // a 2-group of distinct points cannot be a single point
    for (const auto& traj : anon)
        for (const auto& term : traj.terms)
            CHECK((term.mbr.xmin < term.mbr.xmax || term.mbr.ymin < term.mbr.ymax));
}

TEST_CASE("activity padding fills from the per-term pool in sorted order") {
    auto raw = fixture_raw();
    AnonymizeConfig cfg;
    cfg.l_div = 3;
    cfg.inflate = 0.0;
    auto anon = toy_anonymize(raw, cfg);
    validate_anonymization(raw, anon, 1, 3);
    // term index 0 pools {a,b,h}: u1's own {a} pads to the full pool
    CHECK(anon[0].terms[0].activities == std::vector<Activity>{"a", "b", "h"});
    // u4 already holds {a,h}: one pad suffices
    CHECK(anon[3].terms[0].activities == std::vector<Activity>{"a", "b", "h"});
    // term index 1 pools {a,c,f,g}: u2's own {f} pads with the two smallest
    CHECK(anon[1].terms[1].activities == std::vector<Activity>{"a", "c", "f"});
}

TEST_CASE("minimum box extent") {
    auto raw = fixture_raw();
    AnonymizeConfig cfg; // inflate defaults to 1.0
    auto anon = toy_anonymize(raw, cfg);
    validate_anonymization(raw, anon, 1, 1);
    for (const auto& traj : anon)
        for (const auto& term : traj.terms) {
            CHECK(term.mbr.xmax - term.mbr.xmin >= Rational(1));
            CHECK(term.mbr.ymax - term.mbr.ymin >= Rational(1));
        }
}

TEST_CASE("deterministic for a fixed seed") {
    auto raw = fixture_raw();
    AnonymizeConfig cfg;
    cfg.k_anon = 3;
    cfg.l_div = 2;
    cfg.seed = 12345;
    std::string first = dump(toy_anonymize(raw, cfg));
    std::string second = dump(toy_anonymize(raw, cfg));
    CHECK(first == second);
    validate_anonymization(raw, toy_anonymize(raw, cfg), 3, 2);

    AnonymizeConfig other = cfg;
    other.seed = 54321;
    validate_anonymization(raw, toy_anonymize(raw, other), 3, 2);
}

TEST_CASE("infeasible demands are reported") {
    auto raw = fixture_raw();
    AnonymizeConfig too_many;
    too_many.k_anon = 5; // only four trajectories exist
    CHECK_THROWS_AS(toy_anonymize(raw, too_many), InfeasibleError);

    AnonymizeConfig too_diverse;
    too_diverse.l_div = 10; // alphabet holds seven activities
    CHECK_THROWS_AS(toy_anonymize(raw, too_diverse), InfeasibleError);
    try {
        toy_anonymize(raw, too_diverse);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("cannot reach l=10") != std::string::npos);
    }

    AnonymizeConfig bad;
    bad.k_anon = 0;
    CHECK_THROWS_AS(toy_anonymize(raw, bad), std::invalid_argument);
}

TEST_CASE("input validation") {
    std::vector<RawTrajectory> raw{{"", {{1, 1, {"a"}}}}};
    CHECK_THROWS_AS(toy_anonymize(raw, {}), std::invalid_argument);
    raw = {{"x", {}}};
    CHECK_THROWS_AS(toy_anonymize(raw, {}), std::invalid_argument);
    raw = {{"x", {{1, 1, {}}}}};
    CHECK_THROWS_AS(toy_anonymize(raw, {}), std::invalid_argument);
}

TEST_CASE("validate_anonymization flags violations") {
    auto raw = fixture_raw();
    AnonymizeConfig cfg;
    cfg.k_anon = 2;
    auto anon = toy_anonymize(raw, cfg);
    validate_anonymization(raw, anon, 2, 1);

    auto shrunk = anon;
    shrunk.pop_back();
    CHECK_THROWS_AS(validate_anonymization(raw, shrunk, 2, 1), InfeasibleError);

    auto swapped = anon;
    std::swap(swapped[0].id, swapped[1].id);
    CHECK_THROWS_AS(validate_anonymization(raw, swapped, 2, 1), InfeasibleError);

    auto moved = anon;
    moved[0].terms[0].mbr = Box::from_doubles(100, 100, 101, 101);
    CHECK_THROWS_AS(validate_anonymization(raw, moved, 2, 1), InfeasibleError);

    auto stripped = anon;
    stripped[0].terms[0].activities = {"zz"};
    CHECK_THROWS_AS(validate_anonymization(raw, stripped, 2, 1), InfeasibleError);

    CHECK_THROWS_AS(validate_anonymization(raw, anon, 3, 1), InfeasibleError);
    CHECK_THROWS_AS(validate_anonymization(raw, anon, 2, 8), InfeasibleError);
}


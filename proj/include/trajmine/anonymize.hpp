#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trajmine/grid.hpp"
#include "trajmine/model.hpp"

namespace trajmine {

struct RawTerm {
    double x = 0, y = 0;
    std::vector<Activity> activities; // sorted, unique, non-empty
};

struct RawTrajectory {
    std::string id;
    std::vector<RawTerm> terms;
};

struct AnonymizeConfig {
    int k_anon = 1;      // distinct locations each MBR must cover
    int l_div = 1;       // distinct activities each term must carry
    std::uint64_t seed = 0;
    double inflate = 1.0; // minimum MBR extent per axis (degenerate boxes grow to this)
};

// Test-data generator, not a privacy tool. Groups the t-th points of all
// trajectories by nearest neighbor around each member (seeded RNG breaks
// distance ties), takes the group's bounding box and activity union, and pads
// activities from the term-index pool (then the global alphabet) until l_div
// distinct ones. Deterministic for a given seed. Throws InfeasibleError when
// k_anon or l_div cannot be met, naming the trajectory and term.
std::vector<AnonymousTrajectory> toy_anonymize(const std::vector<RawTrajectory>& raw,
                                               const AnonymizeConfig& config);

// Post-hoc check of the anonymization constraints: own point inside the MBR,
// MBR covers >= k_anon distinct raw locations of that term index, own
// activities kept, >= l_div distinct activities. Throws InfeasibleError with a
// description of the first violation.
void validate_anonymization(const std::vector<RawTrajectory>& raw,
                            const std::vector<AnonymousTrajectory>& anon, int k_anon, int l_div);

} // namespace trajmine

#pragma once

#include <cstdint>
#include <vector>

#include "trajmine/model.hpp"
#include "trajmine/topk.hpp"

namespace trajmine {

struct OracleConfig {
    // Enumeration budget: sum over sequences of the product over terms of
    // 2^cells * 2^activities must stay below this, and so must the number of
    // candidate checks actually performed.
    std::uint64_t work_cap = 10'000'000;
};

// Every distinct emittable pattern with at least one match (hence positive
// relevance), exactly once, in canonical order, scored by direct embedding
// enumeration. Deliberately shares nothing with the miner or the relevance
// module beyond the data types. Throws SizeLimitError over the cap.
std::vector<ScoredPattern> enumerate_patterns(const WlasDatabase& db,
                                              const OracleConfig& config = {});

// Universe sorted by score descending with canonical tie order, first k.
std::vector<ScoredPattern> brute_topk(const WlasDatabase& db, int k,
                                      const OracleConfig& config = {});

} // namespace trajmine

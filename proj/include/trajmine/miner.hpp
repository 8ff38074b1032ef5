#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "trajmine/model.hpp"
#include "trajmine/prm.hpp"
#include "trajmine/rational.hpp"
#include "trajmine/topk.hpp"

namespace trajmine {

struct MiningConfig {
    int k = 1;
    bool ti_enabled = true;          // preinsert short patterns to start the threshold high
    bool tu_enabled = true;          // explore extension lists in PTR order
    bool width_prune_enabled = true; // drop unpromising cells from l/s lists
    bool depth_prune_enabled = true; // backtrack when the node's PTR falls below threshold

    // "baseline" (no ti, no tu), "baseline+i" (ti), "baseline+s" (tu), "full".
    // Width and depth pruning stay on in every variant; disable them via the
    // flags (the CLI exposes --no-prune for exhaustive runs).
    static MiningConfig for_variant(const std::string& name, int k);
};

struct MiningMetrics {
    std::uint64_t recursive_calls = 0;      // node expansions, root included
    std::uint64_t candidates_generated = 0; // children materialized by concatenation
    std::uint64_t insertions = 0;           // accepted TopKList inserts
    std::uint64_t width_pruned = 0;         // items dropped from l/s lists
    std::uint64_t depth_pruned = 0;         // children whose subtree was skipped
    // (recursive_calls at the moment of change, new threshold)
    std::vector<std::pair<std::uint64_t, Rational>> threshold_trace;

    Rational threshold_at(std::uint64_t call_index) const;
};

enum class ConcatOp { L, A, S };

using ConcatItem = std::variant<CellId, Activity>;

// A pattern under construction plus its match state: for every sequence, the
// positions where an embedding of the pattern can end and the best embedding
// relevance ending there. Everything the guards need (relevance, PTR) reads
// off this state and the PRM without rescanning the database.
class SearchNode {
public:
    struct End {
        std::size_t pos;
        Rational rel;
    };

    static SearchNode root(const WlasDatabase& db, const PrmSet& prm);

    const TrajectoryPattern& pattern() const { return pattern_; }
    const std::vector<End>& ends(std::size_t seq_index) const { return ends_[seq_index]; }
    bool matched_anywhere() const;

    Rational relevance() const; // db_relevance of the pattern
    Rational ptr() const;       // upper bound on the relevance of all descendants

    const WlasDatabase& db() const { return *db_; }
    const PrmSet& prm() const { return *prm_; }

    friend SearchNode concat(const SearchNode& node, ConcatOp op, const ConcatItem& item);

private:
    SearchNode() = default;
    const WlasDatabase* db_ = nullptr;
    const PrmSet* prm_ = nullptr;
    TrajectoryPattern pattern_;
    std::vector<std::vector<End>> ends_;
};

// Applies one concatenation step as a pattern edit with item-order guards:
//   L: cell > the last term's max cell
//   A: activity > the last term's max activity (any activity on a fresh term)
//   S: previous term complete (or empty pattern), opens a new single-cell term
// Violations throw std::invalid_argument. The search itself additionally never
// l-extends a term that already carries activities; that discipline lives in
// the candidate scan, not here, so arbitrary patterns can be assembled.
SearchNode concat(const SearchNode& node, ConcatOp op, const ConcatItem& item);

struct ExtensionLists {
    std::vector<CellId> l_list;
    std::vector<Activity> a_list;
    std::vector<CellId> s_list;
};

// Candidate items for the node under the given threshold and config: width
// pruning filters l/s lists, TU sorts each list by descending PTR of the
// extended pattern (ties to the smaller item), otherwise item order.
ExtensionLists extension_lists(const SearchNode& node, const PrmSet& prm, const ActivityIndex& act,
                               const Rational& threshold, const MiningConfig& config);

// Threshold initialization: seeds the list with every 1-pattern, every
// one-step extension of a 1-pattern, and every sequence's r-pattern, all at
// their exact db_relevance. Returns the number of accepted inserts.
std::size_t preinsert(const WlasDatabase& db, TopKList& list);

struct MineResult {
    std::vector<ScoredPattern> results;
    MiningMetrics metrics;
};

using NodeHook = std::function<void(const TrajectoryPattern&)>;

// Top-k highest-relevance patterns of the database under the config. The
// result multiset is identical for every strategy combination; only the
// metrics change. node_hook, when set, sees every materialized search node.
MineResult mine_topk(const WlasDatabase& db, const MiningConfig& config,
                     const NodeHook& node_hook = {});

} // namespace trajmine

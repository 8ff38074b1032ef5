#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "trajmine/anonymize.hpp"
#include "trajmine/grid.hpp"
#include "trajmine/miner.hpp"
#include "trajmine/model.hpp"

namespace trajmine {

// One JSON object per line:
//   wlas-jsonl: {"id":"s1","terms":[{"cells":[[0,"2/9"],...],"activities":["a",...]}]}
//   anon-jsonl: {"id":"t1","terms":[{"mbr":[x1,y1,x2,y2],"activities":["a",...]}]}
//   raw-jsonl:  {"id":"t1","terms":[{"point":[x,y],"activities":["a",...]}]}
// Weights may be "num/den" fractions, decimal strings (parsed digit-exactly)
// or plain JSON numbers (taken at their double value). MBR coordinates may
// also be strings or numbers; numeric ones are read at their shortest
// round-tripping decimal so the written digits carry through exactly.
// Malformed lines raise ParseError with the line number.

WlasDatabase read_wlas_jsonl(std::istream& in, std::ostream* warnings = nullptr,
                             double weight_tolerance = 1e-9);
std::vector<AnonymousTrajectory> read_anon_jsonl(std::istream& in);
std::vector<RawTrajectory> read_raw_jsonl(std::istream& in);

// Canonical writer: fraction weights, sorted cells/activities, fixed key
// order. A file written by it reads back and rewrites byte-identically.
void write_wlas_jsonl(const WlasDatabase& db, std::ostream& out, std::int64_t id_base = 0);
void write_anon_jsonl(const std::vector<AnonymousTrajectory>& trajs, std::ostream& out);

nlohmann::ordered_json pattern_to_json(const TrajectoryPattern& p, std::int64_t id_base = 0);
nlohmann::ordered_json results_to_json(const std::vector<ScoredPattern>& results,
                                       std::int64_t id_base = 0);
nlohmann::ordered_json metrics_to_json(const MiningMetrics& metrics);

} // namespace trajmine

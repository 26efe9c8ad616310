#pragma once

#include "roig/oig.hpp"

#include <cstdint>
#include <optional>

namespace roig {

// Total assignment of each edge record to one of its endpoints (the vertex
// the edge is directed towards).
struct Orientation {
    std::vector<int> toward;  // toward[e] is edges[e].a or edges[e].b
};

struct OrientationStats {
    std::vector<int> outdeg;  // adversarial out-degree per vertex
    int max_outdeg = 0;
};

struct OrientationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

OrientationReport validate_orientation(const GlobalOIG& g, const Orientation& o);

// |{(x,y) in v : some edge ({v,u},z) with (x,y) in vDu is directed to u}|.
int adv_outdegree(const GlobalOIG& g, const Orientation& o, int v);

OrientationStats orientation_stats(const GlobalOIG& g, const Orientation& o);

struct OrientConfig {
    uint64_t node_budget = 200000000;  // feasibility-search nodes before giving up
};

struct OptimalOrientationResult {
    Orientation orientation;
    OrientationStats stats;
    bool optimal = true;  // false when the search budget ran out (best-found)
};

// Exact minimizer of the maximum adversarial out-degree: binary search on the
// target k with a propagating DFS over per-element open/closed decisions.
// `keep`, when given, restricts to the vertex-induced subgraph.
OptimalOrientationResult optimal_orientation(const GlobalOIG& g, const OrientConfig& cfg = {},
                                             const std::vector<char>* keep = nullptr);

// Decision variant: is there an orientation with max adversarial out-degree
// <= k? Used directly by dimension certificates.
bool orientation_feasible(const GlobalOIG& g, int k, const OrientConfig& cfg = {},
                          const std::vector<char>* keep = nullptr);

// Classical min-max out-degree orientation (standard edge-count degree) via
// path reversal; returns toward[] over ClassicalOIG edges.
std::vector<int> orient_classical_min_outdeg(const ClassicalOIG& g);

std::string serialize_orientation(const GlobalOIG& g, const Orientation& o);

}  // namespace roig

#pragma once

#include "roig/instance.hpp"

#include <cstdint>
#include <set>
#include <unordered_map>

namespace roig {

// Edge record of the global one-inclusion graph: endpoints a < b (vertex
// indices), the differing elements on each side, and the witness
// perturbation. The same vertex pair appears once per valid witness.
struct OigEdge {
    int a = 0, b = 0;
    LabeledExample a_element;  // in a, absent from b
    LabeledExample b_element;  // in b, absent from a
    int witness = 0;           // z in U(a_element.point) cap U(b_element.point)
};

class GlobalOIG {
public:
    int n = 0;
    std::vector<LabeledMultiset> vertices;  // canonical order
    std::vector<OigEdge> edges;             // canonical order

    int vertex_index(const LabeledMultiset& v) const;  // -1 if absent
    const std::vector<int>& incident_edges(int v) const;
    // Distinct elements of v that witness at least one incident edge.
    const std::set<LabeledExample>& witness_elements(int v) const;
    // Edge index for ({u,v}, z), or -1.
    int find_edge(int u, int v, int z) const;

    void build_indices();  // fills the lookup structures below

private:
    std::unordered_map<LabeledMultiset, int, MultisetHash> vertex_lookup_;
    std::vector<std::vector<int>> incidence_;
    std::vector<std::set<LabeledExample>> witness_elements_;
    std::unordered_map<uint64_t, int> edge_lookup_;
};

struct OigConfig {
    size_t vertex_cap = 1000000;
};

GlobalOIG build_global_oig(const ProblemInstance& instance, int n, const OigConfig& cfg = {});

// Number of distinct elements of v witnessing an incident edge.
int adv_degree(const GlobalOIG& g, int v);

// Adversarial degree of v within the vertex-induced subgraph given by `keep`.
int adv_degree_in_subgraph(const GlobalOIG& g, const std::vector<char>& keep, int v);

// Classical one-inclusion graph on an explicit point list.
struct ClassicalOIG {
    std::vector<int> points;
    std::vector<std::vector<int8_t>> vertices;  // realizable label vectors
    std::vector<std::pair<int, int>> edges;     // Hamming-distance-1 pairs
    std::vector<int> edge_coordinate;           // differing coordinate per edge
};

ClassicalOIG build_classical_oig(const ProblemInstance& instance, const std::vector<int>& points);

std::string serialize_oig(const ProblemInstance& instance, const GlobalOIG& g);

}  // namespace roig

#pragma once

#include "roig/oig.hpp"
#include "roig/orient.hpp"
#include "roig/risk.hpp"

#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace roigtest {

using namespace roig;

// Exhaustive minimum of the maximum adversarial out-degree over all 2^|E|
// orientations. The independent oracle for the Eq.-(7) solver.
inline int brute_min_max_outdeg(const GlobalOIG& g) {
    int ne = static_cast<int>(g.edges.size());
    if (ne > 20) throw std::runtime_error("brute force oracle: too many edges");
    if (ne == 0) return 0;

    // slot = (vertex, element); outgoing slots are what the degree counts.
    std::map<std::pair<int, LabeledExample>, int> slot_of;
    std::vector<int> slot_vertex;
    auto slot = [&](int v, const LabeledExample& ex) {
        auto [it, fresh] = slot_of.try_emplace({v, ex}, static_cast<int>(slot_vertex.size()));
        if (fresh) slot_vertex.push_back(v);
        return it->second;
    };
    std::vector<std::pair<int, int>> edge_slots;
    for (const auto& e : g.edges)
        edge_slots.emplace_back(slot(e.a, e.a_element), slot(e.b, e.b_element));

    int ns = static_cast<int>(slot_vertex.size());
    int nv = static_cast<int>(g.vertices.size());
    std::vector<uint32_t> slot_stamp(ns, 0), vertex_stamp(nv, 0);
    std::vector<int> outdeg(nv, 0);
    int best = ns + 1;
    for (uint32_t mask = 0; mask < (uint32_t{1} << ne); ++mask) {
        uint32_t cur = mask + 1;
        int worst = 0;
        for (int e = 0; e < ne; ++e) {
            // bit set: edge points toward b, so a's slot is outgoing.
            int out = (mask >> e) & 1 ? edge_slots[e].first : edge_slots[e].second;
            if (slot_stamp[out] == cur) continue;
            slot_stamp[out] = cur;
            int v = slot_vertex[out];
            if (vertex_stamp[v] != cur) {
                vertex_stamp[v] = cur;
                outdeg[v] = 0;
            }
            worst = std::max(worst, ++outdeg[v]);
        }
        best = std::min(best, worst);
        if (best == 0) break;
    }
    return best;
}

inline Orientation random_orientation(const GlobalOIG& g, std::mt19937_64& rng) {
    Orientation o;
    for (const auto& e : g.edges) o.toward.push_back(rng() & 1 ? e.a : e.b);
    return o;
}

// All robustly realizable size-n multisets by unstructured enumeration over
// every (point, label) pool — the vertex-set oracle.
inline std::set<LabeledMultiset> brute_vertices(const ProblemInstance& instance, int n) {
    std::vector<LabeledExample> pool;
    for (int x = 0; x < instance.num_points(); ++x)
        for (int y : {+1, -1}) pool.push_back({x, y});
    std::set<LabeledMultiset> out;
    std::vector<LabeledExample> scratch;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (static_cast<int>(scratch.size()) == n) {
            LabeledMultiset m(scratch);
            if (realizable_witness(instance, m)) out.insert(m);
            return;
        }
        for (size_t i = from; i < pool.size(); ++i) {
            scratch.push_back(pool[i]);
            self(self, i);
            scratch.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Edge-record oracle: every unordered vertex pair, every witness, from the
// definition directly.
inline std::set<std::tuple<int, int, int>> brute_edges(const ProblemInstance& instance,
                                                       const GlobalOIG& g) {
    std::set<std::tuple<int, int, int>> out;
    int nv = static_cast<int>(g.vertices.size());
    for (int a = 0; a < nv; ++a) {
        for (int b = a + 1; b < nv; ++b) {
            for (const auto& [ea, ma] : g.vertices[a].entries()) {
                for (const auto& [eb, mb] : g.vertices[b].entries()) {
                    if (ea.label == eb.label) continue;
                    if (!(g.vertices[a].minus_one(ea) == g.vertices[b].minus_one(eb))) continue;
                    for (int z : instance.perturbations[ea.point])
                        if (instance.in_perturbation(eb.point, z)) out.insert({a, b, z});
                }
            }
        }
    }
    return out;
}

}  // namespace roigtest

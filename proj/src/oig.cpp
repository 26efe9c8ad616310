#include "roig/oig.hpp"

#include "roig/errors.hpp"
#include "roig/risk.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace roig {

int GlobalOIG::vertex_index(const LabeledMultiset& v) const {
    auto it = vertex_lookup_.find(v);
    return it == vertex_lookup_.end() ? -1 : it->second;
}

const std::vector<int>& GlobalOIG::incident_edges(int v) const { return incidence_.at(v); }

const std::set<LabeledExample>& GlobalOIG::witness_elements(int v) const {
    return witness_elements_.at(v);
}

int GlobalOIG::find_edge(int u, int v, int z) const {
    if (u > v) std::swap(u, v);
    uint64_t key = (static_cast<uint64_t>(u) << 42) | (static_cast<uint64_t>(v) << 21) |
                   static_cast<uint64_t>(z);
    auto it = edge_lookup_.find(key);
    return it == edge_lookup_.end() ? -1 : it->second;
}

void GlobalOIG::build_indices() {
    vertex_lookup_.clear();
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) vertex_lookup_[vertices[i]] = i;
    incidence_.assign(vertices.size(), {});
    witness_elements_.assign(vertices.size(), {});
    edge_lookup_.clear();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& edge = edges[e];
        incidence_[edge.a].push_back(e);
        incidence_[edge.b].push_back(e);
        witness_elements_[edge.a].insert(edge.a_element);
        witness_elements_[edge.b].insert(edge.b_element);
        uint64_t key = (static_cast<uint64_t>(edge.a) << 42) |
                       (static_cast<uint64_t>(edge.b) << 21) |
                       static_cast<uint64_t>(edge.witness);
        edge_lookup_.emplace(key, e);
    }
}

namespace {

// Enumerates size-n multisets over `pool` (sorted), invoking sink on each.
void enumerate_multisets(const std::vector<LabeledExample>& pool, int n,
                         std::vector<LabeledExample>& scratch,
                         const std::function<void(const std::vector<LabeledExample>&)>& sink,
                         size_t from = 0) {
    if (static_cast<int>(scratch.size()) == n) {
        sink(scratch);
        return;
    }
    for (size_t i = from; i < pool.size(); ++i) {
        scratch.push_back(pool[i]);
        enumerate_multisets(pool, n, scratch, sink, i);
        scratch.pop_back();
    }
}

}  // namespace

GlobalOIG build_global_oig(const ProblemInstance& instance, int n, const OigConfig& cfg) {
    if (n < 1) throw DomainError("build_global_oig: n must be >= 1");
    GlobalOIG g;
    g.n = n;

    // V_n as the union over h of size-n multisets drawn from the robustly
    // consistent set of h; this is the only exact strategy that does not
    // enumerate all (2|X|)^n multisets.
    std::set<LabeledMultiset> vertex_set;
    for (const auto& h : instance.hypotheses) {
        auto pool = robustly_consistent_set(instance, h);
        std::vector<LabeledExample> scratch;
        enumerate_multisets(pool, n, scratch, [&](const std::vector<LabeledExample>& examples) {
            vertex_set.insert(LabeledMultiset(examples));
            if (vertex_set.size() > cfg.vertex_cap)
                throw BudgetExceeded("instance too large: vertex cap " +
                                     std::to_string(cfg.vertex_cap) + " exceeded at n=" +
                                     std::to_string(n));
        });
    }
    g.vertices.assign(vertex_set.begin(), vertex_set.end());

    // Edges via grouping by the shared size-(n-1) sub-multiset: u = w + (x,y),
    // v = w + (x~,y~) with opposite labels and intersecting perturbation sets.
    // The multiset intersection w is unique per pair, so no duplicates arise.
    std::map<LabeledMultiset, std::vector<std::pair<int, LabeledExample>>> groups;
    for (int vi = 0; vi < static_cast<int>(g.vertices.size()); ++vi) {
        for (const auto& [ex, _] : g.vertices[vi].entries())
            groups[g.vertices[vi].minus_one(ex)].emplace_back(vi, ex);
    }
    for (const auto& [w, members] : groups) {
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                const auto& [vi, ei] = members[i];
                const auto& [vj, ej] = members[j];
                if (ei.label == ej.label) continue;
                const auto& ui = instance.perturbations[ei.point];
                const auto& uj = instance.perturbations[ej.point];
                std::vector<int> common;
                std::set_intersection(ui.begin(), ui.end(), uj.begin(), uj.end(),
                                      std::back_inserter(common));
                for (int z : common) {
                    OigEdge edge;
                    edge.a = std::min(vi, vj);
                    edge.b = std::max(vi, vj);
                    edge.a_element = (edge.a == vi) ? ei : ej;
                    edge.b_element = (edge.b == vj) ? ej : ei;
                    edge.witness = z;
                    g.edges.push_back(edge);
                }
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const OigEdge& l, const OigEdge& r) {
        return std::tie(l.a, l.b, l.witness, l.a_element, l.b_element) <
               std::tie(r.a, r.b, r.witness, r.a_element, r.b_element);
    });
    g.build_indices();
    return g;
}

int adv_degree(const GlobalOIG& g, int v) {
    if (v < 0 || v >= static_cast<int>(g.vertices.size()))
        throw DomainError("adv_degree: unknown vertex");
    return static_cast<int>(g.witness_elements(v).size());
}

int adv_degree_in_subgraph(const GlobalOIG& g, const std::vector<char>& keep, int v) {
    if (!keep.at(v)) return 0;
    std::set<LabeledExample> elems;
    for (int e : g.incident_edges(v)) {
        const auto& edge = g.edges[e];
        if (!keep[edge.a] || !keep[edge.b]) continue;
        elems.insert(edge.a == v ? edge.a_element : edge.b_element);
    }
    return static_cast<int>(elems.size());
}

ClassicalOIG build_classical_oig(const ProblemInstance& instance, const std::vector<int>& points) {
    if (points.empty()) throw DomainError("build_classical_oig: empty point list");
    for (int x : points) instance.check_point(x);
    ClassicalOIG g;
    g.points = points;
    std::set<std::vector<int8_t>> seen;
    for (const auto& h : instance.hypotheses) {
        std::vector<int8_t> vec;
        vec.reserve(points.size());
        for (int x : points) vec.push_back(h.labels[x]);
        seen.insert(std::move(vec));
    }
    g.vertices.assign(seen.begin(), seen.end());
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        for (size_t j = i + 1; j < g.vertices.size(); ++j) {
            int diff = -1;
            int count = 0;
            for (size_t k = 0; k < points.size() && count < 2; ++k) {
                if (g.vertices[i][k] != g.vertices[j][k]) {
                    diff = static_cast<int>(k);
                    ++count;
                }
            }
            if (count == 1) {
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
                g.edge_coordinate.push_back(diff);
            }
        }
    }
    return g;
}

std::string serialize_oig(const ProblemInstance& instance, const GlobalOIG& g) {
    nlohmann::json doc;
    doc["n"] = g.n;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : g.vertices) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [ex, mult] : v.entries())
            entries.push_back({{"point", instance.points[ex.point]},
                               {"label", ex.label},
                               {"multiplicity", mult}});
        verts.push_back(std::move(entries));
    }
    doc["vertices"] = std::move(verts);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"u", e.a}, {"v", e.b}, {"witness", instance.points[e.witness]}});
    doc["edges"] = std::move(edges);
    return doc.dump(2);
}

}  // namespace roig

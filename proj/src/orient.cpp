#include "roig/orient.hpp"

#include "roig/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace roig {

OrientationReport validate_orientation(const GlobalOIG& g, const Orientation& o) {
    OrientationReport report;
    if (o.toward.size() != g.edges.size()) {
        report.ok = false;
        report.violations.push_back("unassigned edge: expected " + std::to_string(g.edges.size()) +
                                    " assignments, got " + std::to_string(o.toward.size()));
        return report;
    }
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (o.toward[e] != g.edges[e].a && o.toward[e] != g.edges[e].b) {
            report.ok = false;
            report.violations.push_back("edge " + std::to_string(e) +
                                        " assigned to non-endpoint vertex " +
                                        std::to_string(o.toward[e]));
        }
    }
    return report;
}

int adv_outdegree(const GlobalOIG& g, const Orientation& o, int v) {
    if (v < 0 || v >= static_cast<int>(g.vertices.size()))
        throw DomainError("adv_outdegree: unknown vertex");
    std::set<LabeledExample> outgoing;
    for (int e : g.incident_edges(v)) {
        const auto& edge = g.edges[e];
        if (o.toward[e] != v) outgoing.insert(edge.a == v ? edge.a_element : edge.b_element);
    }
    return static_cast<int>(outgoing.size());
}

OrientationStats orientation_stats(const GlobalOIG& g, const Orientation& o) {
    OrientationStats stats;
    stats.outdeg.resize(g.vertices.size());
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        stats.outdeg[v] = adv_outdegree(g, o, v);
        stats.max_outdeg = std::max(stats.max_outdeg, stats.outdeg[v]);
    }
    return stats;
}

namespace {

// Feasibility of "max adversarial out-degree <= k" reduces to a closure
// choice: each slot (vertex, witnessing element) is either closed (all its
// edges directed inward) or open; a vertex may have at most k open slots and
// no edge may have both endpoint slots closed. Any such closure yields an
// orientation with max out-degree <= k and vice versa.
class ClosureSolver {
public:
    ClosureSolver(const GlobalOIG& g, const std::vector<char>* keep) : g_(g) {
        std::map<std::pair<int, LabeledExample>, int> slot_of;
        auto slot_for = [&](int v, const LabeledExample& ex) {
            auto [it, fresh] = slot_of.try_emplace({v, ex}, static_cast<int>(slot_vertex_.size()));
            if (fresh) {
                slot_vertex_.push_back(v);
                slot_edges_.emplace_back();
                vertex_slots_.resize(g_.vertices.size());
                vertex_slots_[v].push_back(it->second);
            }
            return it->second;
        };
        vertex_slots_.resize(g_.vertices.size());
        for (int e = 0; e < static_cast<int>(g_.edges.size()); ++e) {
            const auto& edge = g_.edges[e];
            if (keep && (!(*keep)[edge.a] || !(*keep)[edge.b])) continue;
            edge_ids_.push_back(e);
            int sa = slot_for(edge.a, edge.a_element);
            int sb = slot_for(edge.b, edge.b_element);
            int local = static_cast<int>(edge_slot_a_.size());
            edge_slot_a_.push_back(sa);
            edge_slot_b_.push_back(sb);
            slot_edges_[sa].push_back(local);
            slot_edges_[sb].push_back(local);
        }
    }

    int num_slots() const { return static_cast<int>(slot_vertex_.size()); }
    int max_advdeg() const {
        size_t best = 0;
        for (const auto& slots : vertex_slots_) best = std::max(best, slots.size());
        return static_cast<int>(best);
    }

    enum class Result { kSat, kUnsat, kBudget };

    Result solve(int k, uint64_t* budget) {
        k_ = k;
        state_.assign(num_slots(), kUnknown);
        open_count_.assign(g_.vertices.size(), 0);
        failed_.clear();
        return dfs(0, budget);
    }

    // After a kSat solve: orientation over the (possibly restricted) edges.
    // Unrestricted edges of the full graph default to their lower endpoint.
    Orientation extract() const {
        Orientation o;
        o.toward.resize(g_.edges.size());
        for (size_t e = 0; e < g_.edges.size(); ++e) o.toward[e] = g_.edges[e].a;
        for (size_t i = 0; i < edge_ids_.size(); ++i) {
            const auto& edge = g_.edges[edge_ids_[i]];
            if (state_[edge_slot_a_[i]] == kClosed)
                o.toward[edge_ids_[i]] = edge.a;
            else if (state_[edge_slot_b_[i]] == kClosed)
                o.toward[edge_ids_[i]] = edge.b;
            else
                o.toward[edge_ids_[i]] = edge.a;  // both open: canonical endpoint
        }
        return o;
    }

private:
    static constexpr int8_t kUnknown = 0, kOpen = 1, kClosed = 2;

    bool assign(int slot, int8_t value, std::vector<int>& trail) {
        if (state_[slot] != kUnknown) return state_[slot] == value;
        state_[slot] = value;
        trail.push_back(slot);
        int v = slot_vertex_[slot];
        if (value == kOpen) {
            if (++open_count_[v] > k_) return false;
            if (open_count_[v] == k_) {
                for (int s : vertex_slots_[v])
                    if (state_[s] == kUnknown && !assign(s, kClosed, trail)) return false;
            }
        } else {
            for (int e : slot_edges_[slot]) {
                int other = edge_slot_a_[e] == slot ? edge_slot_b_[e] : edge_slot_a_[e];
                if (other == slot) continue;
                if (state_[other] == kClosed) return false;
                if (state_[other] == kUnknown && !assign(other, kOpen, trail)) return false;
            }
        }
        return true;
    }

    void undo(std::vector<int>& trail, size_t mark) {
        while (trail.size() > mark) {
            int slot = trail.back();
            trail.pop_back();
            if (state_[slot] == kOpen) --open_count_[slot_vertex_[slot]];
            state_[slot] = kUnknown;
        }
    }

    uint64_t state_hash() const {
        uint64_t h = 1469598103934665603ull;
        for (int8_t s : state_) h = (h ^ static_cast<uint64_t>(s)) * 1099511628211ull;
        return h;
    }

    Result dfs(int from, uint64_t* budget) {
        if (*budget == 0) return Result::kBudget;
        --*budget;
        int slot = -1;
        for (int s = from; s < num_slots(); ++s) {
            if (state_[s] == kUnknown) {
                slot = s;
                break;
            }
        }
        if (slot < 0) return Result::kSat;
        uint64_t key = state_hash();
        if (failed_.count(key)) return Result::kUnsat;
        std::vector<int> trail;
        for (int8_t value : {kClosed, kOpen}) {
            if (assign(slot, value, trail)) {
                Result r = dfs(slot + 1, budget);
                if (r != Result::kUnsat) return r;
            }
            undo(trail, 0);
        }
        failed_.insert(key);
        return Result::kUnsat;
    }

    const GlobalOIG& g_;
    std::vector<int> slot_vertex_;
    std::vector<std::vector<int>> slot_edges_;   // local edge ids per slot
    std::vector<std::vector<int>> vertex_slots_;
    std::vector<int> edge_ids_;                  // local -> global edge index
    std::vector<int> edge_slot_a_, edge_slot_b_;
    std::vector<int8_t> state_;
    std::vector<int> open_count_;
    std::unordered_set<uint64_t> failed_;
    int k_ = 0;
};

}  // namespace

bool orientation_feasible(const GlobalOIG& g, int k, const OrientConfig& cfg,
                          const std::vector<char>* keep) {
    if (k < 0) return false;
    ClosureSolver solver(g, keep);
    if (k >= solver.max_advdeg()) return true;
    uint64_t budget = cfg.node_budget;
    auto r = solver.solve(k, &budget);
    if (r == ClosureSolver::Result::kBudget)
        throw BudgetExceeded("orientation search budget exceeded at k=" + std::to_string(k));
    return r == ClosureSolver::Result::kSat;
}

OptimalOrientationResult optimal_orientation(const GlobalOIG& g, const OrientConfig& cfg,
                                             const std::vector<char>* keep) {
    ClosureSolver solver(g, keep);
    OptimalOrientationResult result;
    uint64_t budget = cfg.node_budget;
    int lo = 0, hi = solver.max_advdeg();
    int best = hi;
    bool have_solution = false;
    try {
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            uint64_t left = budget;
            auto r = solver.solve(mid, &left);
            budget = left;
            if (r == ClosureSolver::Result::kBudget)
                throw BudgetExceeded("orientation search budget exceeded");
            if (r == ClosureSolver::Result::kSat) {
                best = mid;
                result.orientation = solver.extract();
                have_solution = true;
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if (!have_solution || best != lo) {
            uint64_t left = budget;
            auto r = solver.solve(lo, &left);
            budget = left;
            if (r != ClosureSolver::Result::kSat)
                throw DomainError("internal: max-degree orientation must be feasible");
            best = lo;
            result.orientation = solver.extract();
        }
        result.optimal = true;
    } catch (const BudgetExceeded&) {
        if (!have_solution) {
            // Best-effort fallback: everything toward the lower endpoint.
            result.orientation.toward.resize(g.edges.size());
            for (size_t e = 0; e < g.edges.size(); ++e) result.orientation.toward[e] = g.edges[e].a;
        }
        result.optimal = false;
    }
    result.stats = orientation_stats(g, result.orientation);
    if (keep) {
        // Stats restricted to the subgraph's edges only.
        OrientationStats stats;
        stats.outdeg.assign(g.vertices.size(), 0);
        for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
            if (!(*keep)[v]) continue;
            std::set<LabeledExample> outgoing;
            for (int e : g.incident_edges(v)) {
                const auto& edge = g.edges[e];
                if (!(*keep)[edge.a] || !(*keep)[edge.b]) continue;
                if (result.orientation.toward[e] != v)
                    outgoing.insert(edge.a == v ? edge.a_element : edge.b_element);
            }
            stats.outdeg[v] = static_cast<int>(outgoing.size());
            stats.max_outdeg = std::max(stats.max_outdeg, stats.outdeg[v]);
        }
        result.stats = std::move(stats);
    }
    return result;
}

std::vector<int> orient_classical_min_outdeg(const ClassicalOIG& g) {
    int nv = static_cast<int>(g.vertices.size());
    int ne = static_cast<int>(g.edges.size());
    std::vector<std::vector<int>> incident(nv);
    for (int e = 0; e < ne; ++e) {
        incident[g.edges[e].first].push_back(e);
        incident[g.edges[e].second].push_back(e);
    }
    auto other = [&](int e, int v) {
        return g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
    };

    auto feasible = [&](int k, std::vector<int>& toward) {
        toward.resize(ne);
        std::vector<int> outdeg(nv, 0);
        for (int e = 0; e < ne; ++e) {
            toward[e] = g.edges[e].second;
            outdeg[g.edges[e].first]++;
        }
        // Path reversal: route excess out-degree to under-loaded vertices.
        while (true) {
            int over = -1;
            for (int v = 0; v < nv; ++v)
                if (outdeg[v] > k) {
                    over = v;
                    break;
                }
            if (over < 0) return true;
            std::vector<int> via(nv, -1);
            std::vector<char> seen(nv, 0);
            std::deque<int> queue{over};
            seen[over] = 1;
            int found = -1;
            while (!queue.empty() && found < 0) {
                int v = queue.front();
                queue.pop_front();
                for (int e : incident[v]) {
                    if (toward[e] == v) continue;  // not an out-edge of v
                    int w = other(e, v);
                    if (seen[w]) continue;
                    seen[w] = 1;
                    via[w] = e;
                    if (outdeg[w] < k) {
                        found = w;
                        break;
                    }
                    queue.push_back(w);
                }
            }
            if (found < 0) return false;
            int v = found;
            while (v != over) {
                int e = via[v];
                int u = other(e, v);
                toward[e] = u;  // reverse: now out-edge of v
                v = u;
            }
            outdeg[over]--;
            outdeg[found]++;
        }
    };

    int lo = 0;
    int hi = 0;
    for (int v = 0; v < nv; ++v) hi = std::max(hi, static_cast<int>(incident[v].size()));
    std::vector<int> best;
    feasible(hi, best);
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        std::vector<int> attempt;
        if (feasible(mid, attempt)) {
            best = std::move(attempt);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return best;
}

std::string serialize_orientation(const GlobalOIG& g, const Orientation& o) {
    nlohmann::json doc;
    nlohmann::json assignments = nlohmann::json::array();
    for (size_t e = 0; e < o.toward.size(); ++e)
        assignments.push_back({{"edge", e}, {"toward", o.toward[e]}});
    doc["assignments"] = std::move(assignments);
    auto stats = orientation_stats(g, o);
    doc["outdeg"] = stats.outdeg;
    doc["max_outdeg"] = stats.max_outdeg;
    return doc.dump(2);
}

}  // namespace roig

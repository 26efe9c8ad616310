#include "roig/dims.hpp"

#include "roig/errors.hpp"
#include "roig/risk.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace roig {

namespace {

// All size-k index subsets of 0..n-1, stopping early once `sink` returns true.
bool any_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& sink) {
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (sink(idx)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool shatters(const std::vector<std::vector<int8_t>>& rows, const std::vector<int>& cols) {
    std::set<std::vector<int8_t>> patterns;
    for (const auto& row : rows) {
        std::vector<int8_t> p;
        p.reserve(cols.size());
        for (int c : cols) p.push_back(row[c]);
        patterns.insert(std::move(p));
        if (patterns.size() == (size_t{1} << cols.size())) return true;
    }
    return false;
}

// VC dimension of an explicit table (rows = functions, columns = domain).
int table_vc(const std::vector<std::vector<int8_t>>& rows, int domain,
             std::vector<int>* witness) {
    if (witness) witness->clear();
    if (rows.empty() || domain == 0) return 0;
    size_t distinct = std::set<std::vector<int8_t>>(rows.begin(), rows.end()).size();
    int best = 0;
    for (int k = 1; k <= domain && (size_t{1} << k) <= distinct; ++k) {
        bool found = any_combination(domain, k, [&](const std::vector<int>& cols) {
            if (!shatters(rows, cols)) return false;
            best = k;
            if (witness) *witness = cols;
            return true;
        });
        if (!found) break;
    }
    return best;
}

bool robustly_labels(const ProblemInstance& instance, const Hypothesis& h, int x, int y) {
    for (int z : instance.perturbations[x])
        if (h.labels[z] != y) return false;
    return true;
}

}  // namespace

int vc_dimension(const ProblemInstance& instance, std::vector<int>* witness) {
    std::vector<std::vector<int8_t>> rows;
    for (const auto& h : instance.hypotheses) rows.push_back(h.labels);
    return table_vc(rows, instance.num_points(), witness);
}

int dual_vc_dimension(const ProblemInstance& instance, std::vector<int>* witness) {
    // Dual class: one function per point, evaluated on hypotheses.
    std::vector<std::vector<int8_t>> rows(instance.num_points());
    for (int x = 0; x < instance.num_points(); ++x)
        for (const auto& h : instance.hypotheses) rows[x].push_back(h.labels[x]);
    return table_vc(rows, instance.num_hypotheses(), witness);
}

int loss_class_vc_dimension(const ProblemInstance& instance, std::vector<LabeledExample>* witness) {
    std::vector<LabeledExample> domain;
    for (int x = 0; x < instance.num_points(); ++x)
        for (int y : {+1, -1}) domain.push_back({x, y});
    std::vector<std::vector<int8_t>> rows;
    for (const auto& h : instance.hypotheses) {
        std::vector<int8_t> row;
        for (const auto& ex : domain)
            row.push_back(static_cast<int8_t>(robust_loss(instance, h, ex.point, ex.label)));
        rows.push_back(std::move(row));
    }
    std::vector<int> cols;
    int d = table_vc(rows, static_cast<int>(domain.size()), witness ? &cols : nullptr);
    if (witness) {
        witness->clear();
        for (int c : cols) witness->push_back(domain[c]);
    }
    return d;
}

namespace {

struct AnchoredPair {
    RobustPair pair;
    std::vector<char> plus_hyps;   // robustly +1 on the whole of U(x_plus)
    std::vector<char> minus_hyps;  // robustly -1 on the whole of U(x_minus)
};

bool robustly_shatters(const ProblemInstance& instance, const std::vector<AnchoredPair>& pairs) {
    int k = static_cast<int>(pairs.size());
    int H = instance.num_hypotheses();
    for (uint32_t pattern = 0; pattern < (uint32_t{1} << k); ++pattern) {
        std::vector<char> live(H, 1);
        for (int i = 0; i < k; ++i) {
            const auto& allowed = (pattern >> i) & 1 ? pairs[i].plus_hyps : pairs[i].minus_hyps;
            for (int h = 0; h < H; ++h) live[h] = live[h] && allowed[h];
        }
        if (std::find(live.begin(), live.end(), char{1}) == live.end()) return false;
    }
    return true;
}

}  // namespace

int robust_shattering_dimension(const ProblemInstance& instance,
                                std::vector<RobustPair>* witness) {
    if (witness) witness->clear();
    int H = instance.num_hypotheses();
    std::vector<AnchoredPair> pairs;
    for (int a = 0; a < instance.num_points(); ++a) {
        for (int b = 0; b < instance.num_points(); ++b) {
            std::vector<int> shared;
            std::set_intersection(instance.perturbations[a].begin(),
                                  instance.perturbations[a].end(),
                                  instance.perturbations[b].begin(),
                                  instance.perturbations[b].end(), std::back_inserter(shared));
            if (shared.empty()) continue;
            AnchoredPair p;
            p.pair = {a, b, shared.front()};
            bool any_plus = false, any_minus = false;
            for (const auto& h : instance.hypotheses) {
                bool plus = robustly_labels(instance, h, a, +1);
                bool minus = robustly_labels(instance, h, b, -1);
                p.plus_hyps.push_back(plus);
                p.minus_hyps.push_back(minus);
                any_plus = any_plus || plus;
                any_minus = any_minus || minus;
            }
            if (any_plus && any_minus) pairs.push_back(std::move(p));
        }
    }
    int best = 0;
    int n = static_cast<int>(pairs.size());
    for (int k = 1; k <= n && (size_t{1} << k) <= static_cast<size_t>(H); ++k) {
        bool found = any_combination(n, k, [&](const std::vector<int>& idx) {
            std::vector<AnchoredPair> chosen;
            for (int i : idx) chosen.push_back(pairs[i]);
            if (!robustly_shatters(instance, chosen)) return false;
            best = k;
            if (witness) {
                witness->clear();
                for (const auto& p : chosen) witness->push_back(p.pair);
            }
            return true;
        });
        if (!found) break;
    }
    return best;
}

namespace {

// Iterated removal of vertices of adversarial degree < n; returns the keep
// mask of the (possibly empty) fixpoint.
std::vector<char> peel(const GlobalOIG& g, int n) {
    std::vector<char> keep(g.vertices.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < g.vertices.size(); ++v) {
            if (!keep[v]) continue;
            if (adv_degree_in_subgraph(g, keep, static_cast<int>(v)) < n) {
                keep[v] = 0;
                changed = true;
            }
        }
    }
    return keep;
}

}  // namespace

int full_degree_dimension(const ProblemInstance& instance, const DimsConfig& cfg,
                          std::vector<LabeledMultiset>* core) {
    if (core) core->clear();
    int best = 0;
    for (int n = 1; n <= cfg.n_cap; ++n) {
        GlobalOIG g = build_global_oig(instance, n, {cfg.vertex_cap});
        if (g.vertices.empty()) break;
        auto keep = peel(g, n);
        if (std::find(keep.begin(), keep.end(), char{1}) == keep.end()) continue;
        best = n;
        if (core) {
            core->clear();
            for (size_t v = 0; v < keep.size(); ++v)
                if (keep[v]) core->push_back(g.vertices[v]);
        }
    }
    return best;
}

int d_dimension(const ProblemInstance& instance, const DimsConfig& cfg, int* opt_at) {
    int best = 0;
    if (opt_at) *opt_at = 0;
    for (int n = 1; n <= cfg.n_cap; ++n) {
        GlobalOIG g = build_global_oig(instance, n, {cfg.vertex_cap});
        if (g.vertices.empty()) break;
        auto result = optimal_orientation(g, {cfg.node_budget});
        if (!result.optimal) throw BudgetExceeded("orientation search budget hit at n=" +
                                                  std::to_string(n));
        if (3 * result.stats.max_outdeg >= n) {
            best = n;
            if (opt_at) *opt_at = result.stats.max_outdeg;
        }
    }
    return best;
}

DimensionReport compute_dimensions(const ProblemInstance& instance, const DimsConfig& cfg) {
    DimensionReport r;
    r.vc = vc_dimension(instance, &r.vc_witness);
    r.dual_vc = dual_vc_dimension(instance, &r.dual_vc_witness);
    r.loss_vc = loss_class_vc_dimension(instance, &r.loss_vc_witness);
    r.robust_shattering = robust_shattering_dimension(instance, &r.robust_witness);
    r.full_degree = full_degree_dimension(instance, cfg, &r.full_degree_core);
    r.d_dimension = d_dimension(instance, cfg, &r.d_opt_outdeg);
    return r;
}

bool verify_report(const ProblemInstance& instance, const DimensionReport& report,
                   const DimsConfig& cfg) {
    // VC witness: the point set must be shattered.
    {
        std::vector<std::vector<int8_t>> rows;
        for (const auto& h : instance.hypotheses) rows.push_back(h.labels);
        if (static_cast<int>(report.vc_witness.size()) != report.vc) return false;
        if (report.vc > 0 && !shatters(rows, report.vc_witness)) return false;
    }
    {
        std::vector<std::vector<int8_t>> rows(instance.num_points());
        for (int x = 0; x < instance.num_points(); ++x)
            for (const auto& h : instance.hypotheses) rows[x].push_back(h.labels[x]);
        if (static_cast<int>(report.dual_vc_witness.size()) != report.dual_vc) return false;
        if (report.dual_vc > 0 && !shatters(rows, report.dual_vc_witness)) return false;
    }
    {
        if (static_cast<int>(report.loss_vc_witness.size()) != report.loss_vc) return false;
        if (report.loss_vc > 0) {
            std::vector<std::vector<int8_t>> rows;
            for (const auto& h : instance.hypotheses) {
                std::vector<int8_t> row;
                for (const auto& ex : report.loss_vc_witness)
                    row.push_back(
                        static_cast<int8_t>(robust_loss(instance, h, ex.point, ex.label)));
                rows.push_back(std::move(row));
            }
            std::vector<int> all(report.loss_vc);
            for (int i = 0; i < report.loss_vc; ++i) all[i] = i;
            if (!shatters(rows, all)) return false;
        }
    }
    {
        if (static_cast<int>(report.robust_witness.size()) != report.robust_shattering)
            return false;
        std::vector<AnchoredPair> pairs;
        for (const auto& rp : report.robust_witness) {
            if (!instance.in_perturbation(rp.x_plus, rp.z) ||
                !instance.in_perturbation(rp.x_minus, rp.z))
                return false;
            AnchoredPair p;
            p.pair = rp;
            for (const auto& h : instance.hypotheses) {
                p.plus_hyps.push_back(robustly_labels(instance, h, rp.x_plus, +1));
                p.minus_hyps.push_back(robustly_labels(instance, h, rp.x_minus, -1));
            }
            pairs.push_back(std::move(p));
        }
        if (!pairs.empty() && !robustly_shatters(instance, pairs)) return false;
    }
    if (report.full_degree > 0) {
        GlobalOIG g = build_global_oig(instance, report.full_degree, {cfg.vertex_cap});
        std::vector<char> keep(g.vertices.size(), 0);
        for (const auto& v : report.full_degree_core) {
            int idx = g.vertex_index(v);
            if (idx < 0) return false;
            keep[idx] = 1;
        }
        for (size_t v = 0; v < keep.size(); ++v)
            if (keep[v] &&
                adv_degree_in_subgraph(g, keep, static_cast<int>(v)) < report.full_degree)
                return false;
        if (report.full_degree_core.empty()) return false;
    }
    if (report.d_dimension > 0) {
        GlobalOIG g = build_global_oig(instance, report.d_dimension, {cfg.vertex_cap});
        auto result = optimal_orientation(g, {cfg.node_budget});
        if (!result.optimal) return false;
        if (result.stats.max_outdeg != report.d_opt_outdeg) return false;
        if (3 * result.stats.max_outdeg < report.d_dimension) return false;
    }
    return true;
}

std::string serialize_report(const ProblemInstance& instance, const DimensionReport& report) {
    nlohmann::json j;
    j["vc"] = report.vc;
    j["vc_witness"] = nlohmann::json::array();
    for (int x : report.vc_witness) j["vc_witness"].push_back(instance.points[x]);
    j["dual_vc"] = report.dual_vc;
    j["dual_vc_witness"] = nlohmann::json::array();
    for (int h : report.dual_vc_witness)
        j["dual_vc_witness"].push_back(instance.hypotheses[h].name);
    j["loss_vc"] = report.loss_vc;
    j["loss_vc_witness"] = nlohmann::json::array();
    for (const auto& ex : report.loss_vc_witness)
        j["loss_vc_witness"].push_back({{"point", instance.points[ex.point]},
                                        {"label", ex.label}});
    j["robust_shattering"] = report.robust_shattering;
    j["robust_witness"] = nlohmann::json::array();
    for (const auto& rp : report.robust_witness)
        j["robust_witness"].push_back({{"x_plus", instance.points[rp.x_plus]},
                                       {"x_minus", instance.points[rp.x_minus]},
                                       {"z", instance.points[rp.z]}});
    j["full_degree"] = report.full_degree;
    j["full_degree_core_size"] = report.full_degree_core.size();
    j["d_dimension"] = report.d_dimension;
    j["d_opt_outdeg"] = report.d_opt_outdeg;
    return j.dump(2);
}

}  // namespace roig

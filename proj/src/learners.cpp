#include "roig/learners.hpp"

#include "roig/errors.hpp"
#include "roig/risk.hpp"

#include <algorithm>
#include <set>

namespace roig {

bool PerturbationAccess::contains(int x, int z) const {
    const auto& set = u(x);
    return std::binary_search(set.begin(), set.end(), z);
}

namespace {

class FullAccess : public PerturbationAccess {
public:
    explicit FullAccess(const ProblemInstance& instance) : instance_(&instance) {}
    const std::vector<int>& u(int x) const override {
        instance_->check_point(x);
        return instance_->perturbations[x];
    }
    const std::vector<int>& inverse(int z) const override {
        instance_->check_point(z);
        return instance_->inverse_perturbations[z];
    }

private:
    const ProblemInstance* instance_;
};

class LocalViewAccess : public PerturbationAccess {
public:
    LocalViewAccess(const ProblemInstance& instance, const LabeledMultiset& sample)
        : instance_(&instance) {
        for (const auto& [ex, _] : sample.entries()) allowed_.insert(ex.point);
    }
    const std::vector<int>& u(int x) const override {
        instance_->check_point(x);
        if (!allowed_.count(x))
            throw LocalityViolation("locality violation: U(" + instance_->points[x] +
                                    ") is outside the training view");
        return instance_->perturbations[x];
    }
    const std::vector<int>& inverse(int z) const override {
        throw LocalityViolation("locality violation: U^{-1}(" + instance_->points.at(z) +
                                ") requires global knowledge of U");
    }

private:
    const ProblemInstance* instance_;
    std::set<int> allowed_;
};

int robust_loss_via(const PerturbationAccess& access, const Hypothesis& h, int x, int y) {
    for (int z : access.u(x))
        if (h.labels[z] != y) return 1;
    return 0;
}

}  // namespace

std::shared_ptr<const PerturbationAccess> full_access(const ProblemInstance& instance) {
    return std::make_shared<FullAccess>(instance);
}

std::shared_ptr<const PerturbationAccess> local_view(const ProblemInstance& instance,
                                                     const LabeledMultiset& sample) {
    return std::make_shared<LocalViewAccess>(instance, sample);
}

struct Predictor::State {
    std::function<int(int)> fn;
    std::vector<int8_t> memo;  // 0 = not computed yet
};

Predictor::Predictor(int num_points, std::function<int(int)> fn) : state_(std::make_shared<State>()) {
    state_->fn = std::move(fn);
    state_->memo.assign(num_points, 0);
}

Predictor Predictor::from_table(std::vector<int8_t> table) {
    Predictor p;
    p.state_ = std::make_shared<State>();
    p.state_->memo = std::move(table);
    return p;
}

int Predictor::operator()(int z) const {
    auto& memo = state_->memo;
    if (z < 0 || z >= static_cast<int>(memo.size())) throw DomainError("predictor: unknown point");
    if (memo[z] == 0) {
        int y = state_->fn(z);
        memo[z] = static_cast<int8_t>(y);
    }
    return memo[z];
}

Learner orientation_learner(std::shared_ptr<const GlobalOIG> g,
                            std::shared_ptr<const Orientation> o) {
    auto check = validate_orientation(*g, *o);
    if (!check.ok) throw DomainError("orientation_learner: " + check.violations.front());
    Learner learner;
    learner.name = "orientation";
    learner.train_size = g->n - 1;
    learner.train = [g, o](const ProblemInstance& instance,
                           std::shared_ptr<const PerturbationAccess> access,
                           const std::vector<LabeledExample>& sample) {
        if (static_cast<int>(sample.size()) != g->n - 1)
            throw DomainError("orientation learner expects training size " +
                              std::to_string(g->n - 1) + ", got " +
                              std::to_string(sample.size()));
        LabeledMultiset s = canonical_multiset(instance, sample);
        return Predictor(instance.num_points(), [g, o, access, s](int z) {
            // P_y: vertices extending s with (x,y) where z in U(x).
            std::vector<int> p[2];  // index 0: label +1, index 1: label -1
            for (int x : access->inverse(z)) {
                for (int y : {+1, -1}) {
                    int v = g->vertex_index(s.plus({x, y}));
                    if (v >= 0) p[y == +1 ? 0 : 1].push_back(v);
                }
            }
            const auto& plus = p[0];
            const auto& minus = p[1];
            if (!plus.empty() && !minus.empty()) {
                int winner = 0;
                for (int y : {+1, -1}) {
                    const auto& own = y == +1 ? plus : minus;
                    const auto& opp = y == +1 ? minus : plus;
                    for (int v : own) {
                        bool all_inward = true;
                        for (int u : opp) {
                            int e = g->find_edge(v, u, z);
                            if (e < 0)
                                throw std::logic_error(
                                    "P_+ and P_- must form a complete bipartite graph");
                            if (o->toward[e] != v) {
                                all_inward = false;
                                break;
                            }
                        }
                        if (all_inward) {
                            if (winner != 0 && winner != y)
                                throw std::logic_error("both labels won the orientation vote");
                            winner = y;
                            break;
                        }
                    }
                }
                return winner != 0 ? winner : +1;
            }
            if (!plus.empty()) return +1;
            if (!minus.empty()) return -1;
            return +1;
        });
    };
    return learner;
}

Learner optimal_learner(const ProblemInstance& instance, int n, const OptimalLearnerConfig& cfg) {
    auto g = std::make_shared<GlobalOIG>(build_global_oig(instance, n, cfg.graph));
    auto best = optimal_orientation(*g, cfg.orient);
    if (!best.optimal) throw BudgetExceeded("optimal_learner: orientation search budget exceeded");
    auto o = std::make_shared<Orientation>(std::move(best.orientation));
    Learner learner = orientation_learner(std::move(g), std::move(o));
    learner.name = "optimal";
    return learner;
}

Learner rerm_learner() {
    Learner learner;
    learner.name = "rerm";
    learner.local = true;
    learner.train = [](const ProblemInstance& instance,
                       std::shared_ptr<const PerturbationAccess> access,
                       const std::vector<LabeledExample>& sample) {
        if (instance.hypotheses.empty()) throw DomainError("rerm: empty hypothesis class");
        LabeledMultiset s = canonical_multiset(instance, sample);
        int best = 0;
        long long best_wrong = -1;
        for (int hi = 0; hi < instance.num_hypotheses(); ++hi) {
            long long wrong = 0;
            for (const auto& [ex, mult] : s.entries())
                wrong += mult * robust_loss_via(*access, instance.hypotheses[hi], ex.point, ex.label);
            if (best_wrong < 0 || wrong < best_wrong) {
                best_wrong = wrong;
                best = hi;
                if (wrong == 0) break;
            }
        }
        return Predictor::from_table(instance.hypotheses[best].labels);
    };
    return learner;
}

Learner classical_oig_learner() {
    Learner learner;
    learner.name = "classical-oig";
    learner.local = true;  // never touches U at all
    learner.train = [](const ProblemInstance& instance,
                       std::shared_ptr<const PerturbationAccess>,
                       const std::vector<LabeledExample>& sample) {
        auto s = canonical_multiset(instance, sample).expand();  // canonical order
        return Predictor(instance.num_points(), [inst = &instance, s](int test) {
            const ProblemInstance& instance = *inst;
            std::vector<int> points;
            points.reserve(s.size() + 1);
            for (const auto& ex : s) points.push_back(ex.point);
            points.push_back(test);
            auto g = build_classical_oig(instance, points);
            auto toward = orient_classical_min_outdeg(g);
            std::vector<int> consistent;
            for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
                bool ok = true;
                for (size_t k = 0; k < s.size(); ++k)
                    if (g.vertices[v][k] != s[k].label) {
                        ok = false;
                        break;
                    }
                if (ok) consistent.push_back(v);
            }
            if (consistent.empty()) return +1;
            if (consistent.size() == 1) return int(g.vertices[consistent[0]].back());
            // Two consistent completions differing at the test coordinate:
            // they are joined by an edge and the edge's direction decides.
            int a = consistent[0], b = consistent[1];
            for (size_t e = 0; e < g.edges.size(); ++e) {
                auto [u, v] = g.edges[e];
                if ((u == a && v == b) || (u == b && v == a))
                    return int(g.vertices[toward[e]].back());
            }
            return +1;  // not reachable: distinct completions are adjacent
        });
    };
    return learner;
}

Learner constant_learner(int label) {
    if (label != 1 && label != -1) throw DomainError("constant learner label must be +1 or -1");
    Learner learner;
    learner.name = label == 1 ? "constant:+1" : "constant:-1";
    learner.local = true;
    learner.train = [label](const ProblemInstance& instance,
                            std::shared_ptr<const PerturbationAccess>,
                            const std::vector<LabeledExample>&) {
        return Predictor::from_table(
            std::vector<int8_t>(instance.points.size(), static_cast<int8_t>(label)));
    };
    return learner;
}

Learner learner_by_name(const ProblemInstance& instance, const std::string& name, int optimal_n,
                        const OptimalLearnerConfig& cfg) {
    if (name == "optimal") return optimal_learner(instance, optimal_n, cfg);
    if (name == "rerm") return rerm_learner();
    if (name == "classical-oig") return classical_oig_learner();
    if (name == "constant:+1") return constant_learner(+1);
    if (name == "constant:-1") return constant_learner(-1);
    throw DomainError("unknown learner '" + name + "'");
}

}  // namespace roig

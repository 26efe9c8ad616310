#pragma once

#include "roig/oig.hpp"
#include "roig/orient.hpp"

#include <functional>
#include <memory>

namespace roig {

// Access to the perturbation map. Local learners (Def.-style firewall) get a
// view restricted to their training points; querying outside throws
// LocalityViolation.
class PerturbationAccess {
public:
    virtual ~PerturbationAccess() = default;
    virtual const std::vector<int>& u(int x) const = 0;
    virtual const std::vector<int>& inverse(int z) const = 0;
    bool contains(int x, int z) const;  // z in U(x)
};

std::shared_ptr<const PerturbationAccess> full_access(const ProblemInstance& instance);

// Snapshot of U at the points of S only; U^{-1} queries always violate
// locality (they require global knowledge of the perturbation map).
std::shared_ptr<const PerturbationAccess> local_view(const ProblemInstance& instance,
                                                     const LabeledMultiset& sample);

// Deterministic total map point -> {+1,-1}; lazily memoized, shareable.
class Predictor {
public:
    Predictor() = default;
    Predictor(int num_points, std::function<int(int)> fn);
    static Predictor from_table(std::vector<int8_t> table);
    int operator()(int z) const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

struct Learner {
    std::string name;
    int train_size = -1;       // required sample size; -1 means any
    bool exchangeable = true;  // output depends only on the sample multiset
    bool local = false;        // trainable through a local_view
    std::function<Predictor(const ProblemInstance&, std::shared_ptr<const PerturbationAccess>,
                            const std::vector<LabeledExample>&)>
        train;
};

// Algorithm-1 learner for an oriented global one-inclusion graph at size n;
// trains on samples of size n-1.
Learner orientation_learner(std::shared_ptr<const GlobalOIG> g,
                            std::shared_ptr<const Orientation> o);

struct OptimalLearnerConfig {
    OigConfig graph;
    OrientConfig orient;
};

// The minimax learner: Algorithm 1 over the optimal orientation of G_n.
Learner optimal_learner(const ProblemInstance& instance, int n,
                        const OptimalLearnerConfig& cfg = {});

// Robust-ERM baseline: first hypothesis (document order) minimizing empirical
// robust risk. Local: needs U only at training points.
Learner rerm_learner();

// Classical one-inclusion-graph learner on training points plus the test
// point; the non-robust baseline.
Learner classical_oig_learner();

Learner constant_learner(int label);

// Registry for the CLI: optimal | rerm | classical-oig | constant:+1 | constant:-1.
Learner learner_by_name(const ProblemInstance& instance, const std::string& name, int optimal_n,
                        const OptimalLearnerConfig& cfg = {});

}  // namespace roig

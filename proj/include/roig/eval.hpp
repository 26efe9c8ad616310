#pragma once

#include "roig/induced.hpp"
#include "roig/learners.hpp"

#include <optional>
#include <string>

namespace roig {

struct EvalConfig {
    BigInt exact_cap = 1000000;  // max enumerated draws for exact mode
    int trials = 20000;
    std::optional<uint64_t> seed;
};

struct RiskEstimate {
    Rat value;          // exact mode only
    double value_d = 0.0;
    bool exact = true;
    int trials = 0;
    std::optional<uint64_t> seed;
    double std_error = 0.0;  // Monte Carlo only
};

// E_{S ~ D^n} R_U(A(S); D), exact by draw enumeration under the cap, seeded
// Monte Carlo beyond it. Local learners are trained through a local view.
RiskEstimate exact_expected_risk(const ProblemInstance& instance, const Learner& learner,
                                 const DiscreteDistribution& dist, int n,
                                 const EvalConfig& cfg = {});

// Max of exact_expected_risk over a finite family; records the argmax.
RiskEstimate sup_risk_over_family(const ProblemInstance& instance, const Learner& learner,
                                  const std::vector<DiscreteDistribution>& family, int n,
                                  const EvalConfig& cfg = {}, int* argmax = nullptr);

// Uniform P_v for every vertex of the graph: the Lemma-2 family.
std::vector<DiscreteDistribution> vertex_family(const GlobalOIG& g);

struct SandwichLearnerRow {
    std::string name;
    int induced_max_outdeg = 0;
    Rat exact_risk;       // E_{S~P_{v*}^n} R(A(S); P_{v*}) at the argmax vertex
    Rat lemma2_lower;     // (1/4) * induced_max_outdeg / (2n)
    bool chain_holds = false;
};

struct SandwichReport {
    int n = 0;
    int optimal_max_outdeg = 0;         // max adv-outdeg of O* on G_{2n}
    Rat upper;                          // optimal_max_outdeg / (2n)
    bool lemma1_holds = false;          // leave-one-out bound for O* on every vertex
    Rat family_risk;                    // family-restricted E_{2n-1} of the optimal learner
    bool upper_holds = false;           // family_risk <= upper
    std::vector<SandwichLearnerRow> learners;
    bool all_hold = false;
};

SandwichReport sandwich_bounds(const ProblemInstance& instance, int n,
                               const std::vector<Learner>& learners,
                               const EvalConfig& cfg = {},
                               const InducedConfig& induced_cfg = {});

struct Thm1Report {
    int m = 0;
    int trials = 0;
    uint64_t seed = 0;
    std::string local_learner;
    double local_mean = 0.0;
    double local_std_error = 0.0;
    int optimal_nonzero_trials = 0;  // expected 0
};

// Theorem-1 separation at desk scale: per trial draw U (fair coins per
// block), S ~ P^m; train the local contender through a local view; the
// optimal learner runs with full U knowledge and zero training samples.
Thm1Report thm1_experiment(int m, int trials, uint64_t seed, const std::string& learner_name);

std::string serialize_risk(const RiskEstimate& estimate);
std::string serialize_sandwich(const SandwichReport& report);
std::string serialize_thm1(const Thm1Report& report);

}  // namespace roig

#pragma once

#include "roig/learners.hpp"
#include "roig/orient.hpp"

#include <optional>

namespace roig {

struct InducedConfig {
    BigInt exact_cap = 1000000;  // on the number of enumerated draws
    int trials = 20000;          // Monte Carlo fallback per probability
    std::optional<uint64_t> seed;
};

struct InducedOrientation {
    Orientation orientation;
    OrientationStats stats;
    bool exact = true;
};

// Orientation induced by a learner on the size-2n graph: for each vertex v
// and witnessing element t, p_t(v) = Pr[exists z in U(x_t): A(S)(z) != y_t |
// (x_t,y_t) not in S] under S ~ P_v^n with P_v uniform over v's elements;
// p_t < 1/2 forces all of t's edges inward. An inward-inward conflict is an
// error (it signals a non-deterministic learner or a bug).
InducedOrientation learner_induced_orientation(const ProblemInstance& instance,
                                               const GlobalOIG& g, const Learner& learner,
                                               const InducedConfig& cfg = {});

// Same threshold rule under the epsilon-weighted P_v (first canonical entry
// carries weight 1-eps) with sample size ceil(n/eps).
InducedOrientation weighted_learner_orientation(const ProblemInstance& instance,
                                                const GlobalOIG& g, const Learner& learner,
                                                const Rat& epsilon,
                                                const InducedConfig& cfg = {});

}  // namespace roig

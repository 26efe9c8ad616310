#pragma once

#include "roig/instance.hpp"

#include <optional>

namespace roig {

// sup_{z in U(x)} 1{h(z) != y}, exact by enumeration of U(x).
int robust_loss(const ProblemInstance& instance, const Hypothesis& h, int point, int label);

// Expectation of robust_loss under the atoms of D; exact rational.
Rat robust_risk(const ProblemInstance& instance, const Hypothesis& h,
                const DiscreteDistribution& d);

// robust_risk against the empirical distribution of S (multiplicities as weights).
Rat empirical_robust_risk(const ProblemInstance& instance, const Hypothesis& h,
                          const LabeledMultiset& s);

// First hypothesis in instance order with empirical robust risk 0, if any.
std::optional<int> realizable_witness(const ProblemInstance& instance, const LabeledMultiset& s);

// {(x,y) : robust_loss(h,x,y) = 0}; for each x at most one label qualifies.
std::vector<LabeledExample> robustly_consistent_set(const ProblemInstance& instance,
                                                    const Hypothesis& h);

}  // namespace roig

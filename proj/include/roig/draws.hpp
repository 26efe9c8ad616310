#pragma once

#include "roig/instance.hpp"
#include "roig/learners.hpp"

#include <functional>
#include <map>

namespace roig {

struct WeightedExample {
    LabeledExample example;
    Rat weight;
};

// All count vectors over `support` summing to n, with multinomial product
// weights. Weights need not be normalized; the callback sees the exact
// product weight multinomial(c) * prod w_i^{c_i}.
void for_each_multiset_draw(const std::vector<WeightedExample>& support, int n,
                            const std::function<void(const std::vector<int>&, const Rat&)>& sink);

// All ordered draws; for learners whose output may depend on sample order.
void for_each_sequence_draw(const std::vector<WeightedExample>& support, int n,
                            const std::function<void(const std::vector<LabeledExample>&,
                                                     const Rat&)>& sink);

BigInt count_multiset_draws(int support_size, int n);   // C(s+n-1, n)
BigInt count_sequence_draws(int support_size, int n);   // s^n

// Memoized training front-end; caches by canonical multiset when the learner
// is exchangeable.
class TrainedCache {
public:
    TrainedCache(const ProblemInstance& instance, const Learner& learner,
                 std::shared_ptr<const PerturbationAccess> access);
    Predictor train(const std::vector<LabeledExample>& sample);

private:
    const ProblemInstance* instance_;
    const Learner* learner_;
    std::shared_ptr<const PerturbationAccess> access_;
    std::map<LabeledMultiset, Predictor> cache_;
};

}  // namespace roig

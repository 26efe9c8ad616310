#include "roig/draws.hpp"

namespace roig {

namespace {

void multiset_rec(const std::vector<WeightedExample>& support, int remaining, size_t index,
                  std::vector<int>& counts,
                  const std::function<void(const std::vector<int>&, const Rat&)>& sink) {
    if (index + 1 == support.size()) {
        counts[index] = remaining;
        Rat weight = multinomial(counts);
        for (size_t i = 0; i < support.size(); ++i)
            for (int c = 0; c < counts[i]; ++c) weight *= support[i].weight;
        sink(counts, weight);
        counts[index] = 0;
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        counts[index] = c;
        multiset_rec(support, remaining - c, index + 1, counts, sink);
    }
    counts[index] = 0;
}

void sequence_rec(const std::vector<WeightedExample>& support, int n,
                  std::vector<LabeledExample>& seq, Rat weight,
                  const std::function<void(const std::vector<LabeledExample>&, const Rat&)>& sink) {
    if (static_cast<int>(seq.size()) == n) {
        sink(seq, weight);
        return;
    }
    for (const auto& w : support) {
        seq.push_back(w.example);
        sequence_rec(support, n, seq, weight * w.weight, sink);
        seq.pop_back();
    }
}

}  // namespace

void for_each_multiset_draw(const std::vector<WeightedExample>& support, int n,
                            const std::function<void(const std::vector<int>&, const Rat&)>& sink) {
    if (support.empty()) {
        if (n == 0) {
            std::vector<int> none;
            sink(none, Rat(1));
        }
        return;
    }
    std::vector<int> counts(support.size(), 0);
    multiset_rec(support, n, 0, counts, sink);
}

void for_each_sequence_draw(const std::vector<WeightedExample>& support, int n,
                            const std::function<void(const std::vector<LabeledExample>&,
                                                     const Rat&)>& sink) {
    std::vector<LabeledExample> seq;
    if (support.empty() && n > 0) return;
    sequence_rec(support, n, seq, Rat(1), sink);
}

BigInt count_multiset_draws(int support_size, int n) {
    if (support_size == 0) return n == 0 ? 1 : 0;
    std::vector<int> counts = {n, support_size - 1};
    return multinomial(counts);
}

BigInt count_sequence_draws(int support_size, int n) {
    BigInt total = 1;
    for (int i = 0; i < n; ++i) total *= support_size;
    return total;
}

TrainedCache::TrainedCache(const ProblemInstance& instance, const Learner& learner,
                           std::shared_ptr<const PerturbationAccess> access)
    : instance_(&instance), learner_(&learner), access_(std::move(access)) {}

Predictor TrainedCache::train(const std::vector<LabeledExample>& sample) {
    if (!learner_->exchangeable) return learner_->train(*instance_, access_, sample);
    LabeledMultiset key(sample);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Predictor p = learner_->train(*instance_, access_, sample);
    cache_.emplace(std::move(key), p);
    return p;
}

}  // namespace roig

#pragma once

#include "roig/learners.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace roig {

// A weak hypothesis for one boosting round: the predictor plus the training
// tuple (indices into S) that reproduces it — the compression record.
struct WeakHypothesis {
    Predictor predictor;
    std::vector<int> tuple;
};

// Given a distribution over S (weights aligned with the sample, summing to
// 1), return a hypothesis with robust risk <= 1/3 under it.
using WeakLearner = std::function<WeakHypothesis(const std::vector<double>&)>;

struct BoostRound {
    std::vector<int> tuple;
    std::vector<double> distribution;  // D_t, before this round's reweighting
    double margin_bound = 0.0;         // RHS of the Appendix-B inequality at t rounds
    double min_margin = 0.0;           // min over S of the prefix-averaged correctness
};

struct BoostRun {
    int T = 0;
    double alpha = 0.125;
    std::vector<BoostRound> rounds;
    std::vector<Predictor> hypotheses;
    Predictor majority;  // ties broken toward +1
};

// 1 + ceil(48 ln |S|); more rounds only strengthen the margin bound.
int default_rounds(int sample_size);

// Robust alpha-Boost: reweight robustly-correct examples by e^{-2 alpha} and
// renormalize each round. Throws WeakLearnerFailure when a round's
// hypothesis has robust risk > 1/3 under D_t.
BoostRun alpha_boost(const ProblemInstance& instance, const std::vector<LabeledExample>& sample,
                     const WeakLearner& weak, int T, double alpha = 0.125);

// (1/(m-k)) (k ln m + ln(1/delta)).
double compression_bound(int k, int m, double delta);

// Weak learner backed by the optimal learner at sample size m0: first
// m0-tuple of S (lexicographic, with repetition) whose trained predictor has
// robust risk <= 1/3 under the round's distribution.
WeakLearner weak_from_optimal(const ProblemInstance& instance, int m0,
                              const std::vector<LabeledExample>& sample);

struct BoostedOutcome {
    Predictor predictor;
    BoostRun run;
    std::vector<int> compression;  // concatenated round tuples, m0*T indices
    double bound = 0.0;            // compression_bound(m0*T, |S|, delta)
};

BoostedOutcome realizable_boosted(const ProblemInstance& instance,
                                  const std::vector<LabeledExample>& sample, int m0,
                                  double delta);

// Maximum-cardinality sub-multiset of S robustly realizable by some h;
// exact via per-hypothesis robustly-consistent counts.
LabeledMultiset max_realizable_subsequence(const ProblemInstance& instance,
                                           const LabeledMultiset& sample);

struct AgnosticOutcome {
    Predictor predictor;
    Rat empirical_risk;  // on the full S
    Rat best_risk;       // min over H of empirical robust risk on S
    double bound = 0.0;  // min_h bound term per the agnostic reduction
    std::optional<BoostedOutcome> boosted;  // absent when S' deduped is empty
};

// Agnostic reduction: boost on the deduplicated maximal realizable
// subsequence. Requires |S| > 2 * m0 * T_{|S|}.
AgnosticOutcome agnostic_learn(const ProblemInstance& instance,
                               const std::vector<LabeledExample>& sample, int m0, double delta);

// Rebuild the majority vote from a compression record; used to check the
// replay invariant bit-for-bit.
Predictor replay_compression(const ProblemInstance& instance,
                             const std::vector<LabeledExample>& sample, int m0,
                             const std::vector<int>& compression);

std::string serialize_boost_run(const BoostRun& run);

}  // namespace roig

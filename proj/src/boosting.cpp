#include "roig/boosting.hpp"

#include "roig/errors.hpp"
#include "roig/risk.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>

namespace roig {

namespace {

// 1 iff the prediction is robustly correct at (x,y): no z in U(x) flips it.
bool robustly_correct(const ProblemInstance& instance, const Predictor& pred,
                      const LabeledExample& ex) {
    for (int z : instance.perturbations[ex.point])
        if (pred(z) != ex.label) return false;
    return true;
}

std::vector<char> correctness(const ProblemInstance& instance, const Predictor& pred,
                              const std::vector<LabeledExample>& sample) {
    std::vector<char> out(sample.size());
    for (size_t i = 0; i < sample.size(); ++i)
        out[i] = robustly_correct(instance, pred, sample[i]);
    return out;
}

Rat predictor_empirical_risk(const ProblemInstance& instance, const Predictor& pred,
                             const LabeledMultiset& sample) {
    if (sample.empty()) throw DomainError("empirical risk of an empty sample");
    int wrong = 0;
    for (const auto& [ex, mult] : sample.entries())
        if (!robustly_correct(instance, pred, ex)) wrong += mult;
    return Rat(wrong, sample.size());
}

}  // namespace

int default_rounds(int sample_size) {
    if (sample_size < 1) throw DomainError("default_rounds: empty sample");
    return 1 + static_cast<int>(std::ceil(48.0 * std::log(sample_size)));
}

BoostRun alpha_boost(const ProblemInstance& instance, const std::vector<LabeledExample>& sample,
                     const WeakLearner& weak, int T, double alpha) {
    if (sample.empty()) throw DomainError("alpha_boost: empty sample");
    if (T < 1) throw DomainError("alpha_boost: need at least one round");
    size_t s = sample.size();
    std::vector<double> weights(s, 1.0 / static_cast<double>(s));
    std::vector<int> correct_rounds(s, 0);

    BoostRun run;
    run.T = T;
    run.alpha = alpha;
    double shrink = std::exp(-2.0 * alpha);
    for (int t = 1; t <= T; ++t) {
        auto hyp = weak(weights);
        auto correct = correctness(instance, hyp.predictor, sample);
        double risk = 0.0;
        for (size_t i = 0; i < s; ++i)
            if (!correct[i]) risk += weights[i];
        if (risk > 1.0 / 3.0 + 1e-9)
            throw WeakLearnerFailure("weak hypothesis has robust risk " + std::to_string(risk) +
                                         " > 1/3 under D_t",
                                     t);

        BoostRound round;
        round.tuple = hyp.tuple;
        round.distribution = weights;
        double min_margin = 1.0;
        for (size_t i = 0; i < s; ++i) {
            correct_rounds[i] += correct[i];
            min_margin = std::min(min_margin,
                                  correct_rounds[i] / static_cast<double>(t));
        }
        round.min_margin = min_margin;
        round.margin_bound = 2.0 / 3.0 - (2.0 / 3.0) * alpha -
                             std::log(static_cast<double>(s)) / (2.0 * alpha * t);
        run.rounds.push_back(std::move(round));
        run.hypotheses.push_back(hyp.predictor);

        double total = 0.0;
        for (size_t i = 0; i < s; ++i) {
            if (correct[i]) weights[i] *= shrink;
            total += weights[i];
        }
        for (auto& w : weights) w /= total;
    }

    auto hyps = run.hypotheses;
    run.majority = Predictor(instance.num_points(), [hyps](int z) {
        int sum = 0;
        for (const auto& h : hyps) sum += h(z);
        return sum >= 0 ? +1 : -1;  // ties toward +1
    });
    return run;
}

double compression_bound(int k, int m, double delta) {
    if (k < 1 || m <= k) throw DomainError("compression_bound: need m > k >= 1");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("compression_bound: delta in (0,1]");
    return (k * std::log(static_cast<double>(m)) + std::log(1.0 / delta)) /
           static_cast<double>(m - k);
}

WeakLearner weak_from_optimal(const ProblemInstance& instance, int m0,
                              const std::vector<LabeledExample>& sample) {
    if (m0 < 1) throw DomainError("weak_from_optimal: m0 must be >= 1");
    if (sample.empty()) throw DomainError("weak_from_optimal: empty sample");

    struct State {
        const ProblemInstance* instance;
        Learner learner;
        std::vector<LabeledExample> sample;
        std::shared_ptr<const PerturbationAccess> access;
        // tuple (non-decreasing indices) -> robust-correctness over sample
        std::map<std::vector<int>, std::vector<char>> cache;
    };
    auto state = std::make_shared<State>();
    state->instance = &instance;
    // Optimal learner trained on samples of size m0 lives on the size-(m0+1) graph.
    state->learner = optimal_learner(instance, m0 + 1);
    state->sample = sample;
    state->access = full_access(instance);

    return [state, m0](const std::vector<double>& weights) -> WeakHypothesis {
        int s = static_cast<int>(state->sample.size());
        if (static_cast<int>(weights.size()) != s)
            throw DomainError("weak learner: distribution size mismatch");
        // Lexicographic search over index tuples with repetition: the learner
        // is exchangeable, so the lex-first success is a non-decreasing tuple
        // and it suffices to scan those.
        std::vector<int> tuple(m0, 0);
        Predictor best;
        long searched = 0;
        while (true) {
            auto it = state->cache.find(tuple);
            if (it == state->cache.end()) {
                std::vector<LabeledExample> train;
                for (int i : tuple) train.push_back(state->sample[i]);
                auto pred = state->learner.train(*state->instance, state->access, train);
                it = state->cache.emplace(tuple, correctness(*state->instance, pred,
                                                             state->sample)).first;
                // Keep the predictor reproducible on demand rather than stored:
                // retraining is deterministic and cheap through the shared graph.
            }
            ++searched;
            double risk = 0.0;
            for (int i = 0; i < s; ++i)
                if (!it->second[i]) risk += weights[i];
            if (risk <= 1.0 / 3.0 + 1e-12) {
                std::vector<LabeledExample> train;
                for (int i : tuple) train.push_back(state->sample[i]);
                best = state->learner.train(*state->instance, state->access, train);
                return {best, tuple};
            }
            // next non-decreasing tuple
            int i = m0 - 1;
            while (i >= 0 && tuple[i] == s - 1) --i;
            if (i < 0) break;
            int v = tuple[i] + 1;
            for (int j = i; j < m0; ++j) tuple[j] = v;
        }
        throw DomainError("weak learner: no m0-tuple reached robust risk <= 1/3 (searched " +
                          std::to_string(searched) + " tuples; m0 likely below the dimension)");
    };
}

BoostedOutcome realizable_boosted(const ProblemInstance& instance,
                                  const std::vector<LabeledExample>& sample, int m0,
                                  double delta) {
    int m = static_cast<int>(sample.size());
    int T = default_rounds(m);
    auto weak = weak_from_optimal(instance, m0, sample);
    BoostedOutcome out;
    out.run = alpha_boost(instance, sample, weak, T);
    out.predictor = out.run.majority;
    for (const auto& round : out.run.rounds)
        out.compression.insert(out.compression.end(), round.tuple.begin(), round.tuple.end());
    int k = m0 * T;
    // The bound only speaks when the certificate is smaller than the sample.
    out.bound = m > k ? compression_bound(k, m, delta)
                      : std::numeric_limits<double>::quiet_NaN();
    return out;
}

LabeledMultiset max_realizable_subsequence(const ProblemInstance& instance,
                                           const LabeledMultiset& sample) {
    int best_count = -1;
    int best_h = -1;
    for (int h = 0; h < instance.num_hypotheses(); ++h) {
        int count = 0;
        for (const auto& [ex, mult] : sample.entries())
            if (robust_loss(instance, instance.hypotheses[h], ex.point, ex.label) == 0)
                count += mult;
        if (count > best_count) {
            best_count = count;
            best_h = h;
        }
    }
    std::vector<LabeledExample> kept;
    if (best_h >= 0)
        for (const auto& [ex, mult] : sample.entries())
            if (robust_loss(instance, instance.hypotheses[best_h], ex.point, ex.label) == 0)
                for (int c = 0; c < mult; ++c) kept.push_back(ex);
    return LabeledMultiset(kept);
}

AgnosticOutcome agnostic_learn(const ProblemInstance& instance,
                               const std::vector<LabeledExample>& sample, int m0, double delta) {
    int m = static_cast<int>(sample.size());
    if (m == 0) throw DomainError("agnostic_learn: empty sample");
    int t_m = default_rounds(m);
    if (m <= 2 * m0 * t_m)
        throw DomainError("agnostic_learn: need m > 2*m0*T_m = " +
                          std::to_string(2 * m0 * t_m) + ", got m = " + std::to_string(m));

    LabeledMultiset s(sample);
    AgnosticOutcome out;
    out.best_risk = Rat(1);
    for (const auto& h : instance.hypotheses)
        out.best_risk = std::min(out.best_risk, empirical_robust_risk(instance, h, s));
    if (instance.num_hypotheses() == 0) out.best_risk = Rat(1);

    auto sub = max_realizable_subsequence(instance, s);
    std::vector<LabeledExample> deduped;  // Appendix-C footnote: drop repeats
    for (const auto& [ex, mult] : sub.entries()) deduped.push_back(ex);

    if (deduped.empty()) {
        out.predictor = Predictor(instance.num_points(), [](int) { return +1; });
    } else {
        out.boosted = realizable_boosted(instance, deduped, m0, delta / 2);
        out.predictor = out.boosted->predictor;
    }
    out.empirical_risk = predictor_empirical_risk(instance, out.predictor, s);
    out.bound = to_double(out.best_risk) +
                std::sqrt((m0 * t_m * std::log(static_cast<double>(m)) + std::log(2.0 / delta)) /
                          (2.0 * m - 2.0 * m0 * t_m));
    return out;
}

Predictor replay_compression(const ProblemInstance& instance,
                             const std::vector<LabeledExample>& sample, int m0,
                             const std::vector<int>& compression) {
    if (m0 < 1 || compression.size() % m0 != 0)
        throw DomainError("replay_compression: record length not a multiple of m0");
    auto learner = optimal_learner(instance, m0 + 1);
    auto access = full_access(instance);
    std::vector<Predictor> hyps;
    for (size_t off = 0; off < compression.size(); off += m0) {
        std::vector<LabeledExample> train;
        for (int j = 0; j < m0; ++j) {
            int idx = compression[off + j];
            if (idx < 0 || idx >= static_cast<int>(sample.size()))
                throw DomainError("replay_compression: index out of range");
            train.push_back(sample[idx]);
        }
        hyps.push_back(learner.train(instance, access, train));
    }
    return Predictor(instance.num_points(), [hyps](int z) {
        int sum = 0;
        for (const auto& h : hyps) sum += h(z);
        return sum >= 0 ? +1 : -1;
    });
}

std::string serialize_boost_run(const BoostRun& run) {
    nlohmann::json j;
    j["T"] = run.T;
    j["alpha"] = run.alpha;
    j["rounds"] = nlohmann::json::array();
    for (const auto& round : run.rounds) {
        uint64_t hash = 1469598103934665603ull;  // FNV over the distribution snapshot
        for (double w : round.distribution) {
            uint64_t bits;
            static_assert(sizeof bits == sizeof w);
            std::memcpy(&bits, &w, sizeof bits);
            for (int b = 0; b < 64; b += 8) {
                hash ^= (bits >> b) & 0xff;
                hash *= 1099511628211ull;
            }
        }
        j["rounds"].push_back({{"tuple", round.tuple},
                               {"distribution_hash", hash},
                               {"min_margin", round.min_margin},
                               {"margin_bound", round.margin_bound}});
    }
    return j.dump(2);
}

}  // namespace roig

#include "roig/induced.hpp"

#include "roig/draws.hpp"
#include "roig/errors.hpp"

#include <algorithm>
#include <random>

namespace roig {

namespace {

bool robust_mistake(const ProblemInstance& instance, const Predictor& pred,
                    const LabeledExample& target) {
    for (int z : instance.perturbations[target.point])
        if (pred(z) != target.label) return true;
    return false;
}

struct ProbeResult {
    bool inward = false;
    bool exact = true;
};

// p_t under the conditional law "target never drawn": i.i.d. draws from the
// remaining support, renormalized.
ProbeResult probe_element(const ProblemInstance& instance, const Learner& learner,
                          TrainedCache& cache, const std::vector<WeightedExample>& support,
                          const LabeledExample& target, int nsamples, const InducedConfig& cfg,
                          int vertex_id, int element_id) {
    std::vector<WeightedExample> reduced;
    for (const auto& w : support)
        if (!(w.example == target)) reduced.push_back(w);

    BigInt draws = learner.exchangeable
                       ? count_multiset_draws(static_cast<int>(reduced.size()), nsamples)
                       : count_sequence_draws(static_cast<int>(reduced.size()), nsamples);
    ProbeResult result;
    if (draws <= cfg.exact_cap) {
        Rat wrong = 0, total = 0;
        auto account = [&](const std::vector<LabeledExample>& sample, const Rat& weight) {
            total += weight;
            if (robust_mistake(instance, cache.train(sample), target)) wrong += weight;
        };
        if (learner.exchangeable) {
            for_each_multiset_draw(reduced, nsamples,
                                   [&](const std::vector<int>& counts, const Rat& weight) {
                                       std::vector<LabeledExample> sample;
                                       for (size_t i = 0; i < counts.size(); ++i)
                                           for (int c = 0; c < counts[i]; ++c)
                                               sample.push_back(reduced[i].example);
                                       account(sample, weight);
                                   });
        } else {
            for_each_sequence_draw(reduced, nsamples, account);
        }
        if (total == 0) throw DomainError("conditioning event has probability zero");
        result.inward = wrong * 2 < total;  // p_t < 1/2, exact
        return result;
    }

    if (!cfg.seed) throw DomainError("Monte Carlo fallback requested without a seed");
    result.exact = false;
    std::seed_seq seq{static_cast<uint64_t>(*cfg.seed), static_cast<uint64_t>(vertex_id),
                      static_cast<uint64_t>(element_id)};
    std::mt19937_64 rng(seq);
    std::vector<double> weights;
    for (const auto& w : reduced) weights.push_back(to_double(w.weight));
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    int wrong = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::vector<LabeledExample> sample;
        sample.reserve(nsamples);
        for (int i = 0; i < nsamples; ++i) sample.push_back(reduced[pick(rng)].example);
        if (robust_mistake(instance, cache.train(sample), target)) ++wrong;
    }
    result.inward = 2 * wrong < cfg.trials;
    return result;
}

InducedOrientation induce(const ProblemInstance& instance, const GlobalOIG& g,
                          const Learner& learner, int nsamples,
                          const std::function<std::vector<WeightedExample>(int)>& weights_of,
                          const InducedConfig& cfg) {
    if (g.n % 2 != 0) throw DomainError("learner-induced orientations need a size-2n graph");
    auto access = full_access(instance);
    TrainedCache cache(instance, learner, access);
    std::vector<int> demand(g.edges.size(), -1);
    InducedOrientation out;
    for (int vi = 0; vi < static_cast<int>(g.vertices.size()); ++vi) {
        const auto& witnesses = g.witness_elements(vi);
        if (witnesses.empty()) continue;
        auto support = weights_of(vi);
        int element_id = 0;
        for (const auto& target : witnesses) {
            auto probe = probe_element(instance, learner, cache, support, target, nsamples, cfg,
                                       vi, element_id++);
            out.exact = out.exact && probe.exact;
            if (!probe.inward) continue;
            for (int e : g.incident_edges(vi)) {
                const auto& edge = g.edges[e];
                const auto& own = edge.a == vi ? edge.a_element : edge.b_element;
                if (!(own == target)) continue;
                if (demand[e] >= 0 && demand[e] != vi)
                    throw DomainError(
                        "inward-inward conflict while orienting edge: non-deterministic learner "
                        "or probability computation bug");
                demand[e] = vi;
            }
        }
    }
    out.orientation.toward.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e)
        out.orientation.toward[e] = demand[e] >= 0 ? demand[e] : g.edges[e].a;
    out.stats = orientation_stats(g, out.orientation);
    return out;
}

}  // namespace

InducedOrientation learner_induced_orientation(const ProblemInstance& instance,
                                               const GlobalOIG& g, const Learner& learner,
                                               const InducedConfig& cfg) {
    int n = g.n / 2;
    return induce(instance, g, learner, n,
                  [&](int vi) {
                      std::vector<WeightedExample> support;
                      for (const auto& [ex, mult] : g.vertices[vi].entries())
                          support.push_back({ex, Rat(mult, g.n)});
                      return support;
                  },
                  cfg);
}

InducedOrientation weighted_learner_orientation(const ProblemInstance& instance,
                                                const GlobalOIG& g, const Learner& learner,
                                                const Rat& epsilon, const InducedConfig& cfg) {
    if (epsilon <= 0 || epsilon >= 1)
        throw DomainError("degenerate weight: epsilon must be in (0,1)");
    int n = g.n / 2;
    // m = ceil(n / epsilon); more samples only help the learner.
    BigInt num = numerator(epsilon), den = denominator(epsilon);
    BigInt m_big = (BigInt(n) * den + num - 1) / num;
    int m = m_big.convert_to<int>();
    return induce(instance, g, learner, m,
                  [&](int vi) {
                      const auto& entries = g.vertices[vi].entries();
                      std::vector<WeightedExample> support;
                      Rat tail = epsilon / (g.n - 1);
                      for (size_t i = 0; i < entries.size(); ++i) {
                          const auto& [ex, mult] = entries[i];
                          Rat w = Rat(mult) * tail;
                          if (i == 0) w += (1 - epsilon) - tail;  // first copy reweighted
                          support.push_back({ex, w});
                      }
                      return support;
                  },
                  cfg);
}

}  // namespace roig

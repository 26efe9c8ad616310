#include "roig/eval.hpp"

#include "roig/draws.hpp"
#include "roig/errors.hpp"
#include "roig/fixtures.hpp"
#include "roig/risk.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace roig {

namespace {

Rat predictor_risk(const ProblemInstance& instance, const Predictor& pred,
                   const DiscreteDistribution& dist) {
    Rat risk = 0;
    for (const auto& atom : dist.atoms) {
        for (int z : instance.perturbations[atom.example.point]) {
            if (pred(z) != atom.example.label) {
                risk += atom.weight;
                break;
            }
        }
    }
    return risk;
}

// Training front-end handling locality and multiset memoization.
class Trainer {
public:
    Trainer(const ProblemInstance& instance, const Learner& learner)
        : instance_(instance), learner_(learner), full_(full_access(instance)) {}

    Predictor train(const std::vector<LabeledExample>& sample) {
        if (!learner_.exchangeable) return train_raw(sample);
        LabeledMultiset key(sample);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, train_raw(sample)).first;
        return it->second;
    }

private:
    Predictor train_raw(const std::vector<LabeledExample>& sample) {
        auto access = learner_.local ? local_view(instance_, LabeledMultiset(sample)) : full_;
        return learner_.train(instance_, access, sample);
    }

    const ProblemInstance& instance_;
    const Learner& learner_;
    std::shared_ptr<const PerturbationAccess> full_;
    std::map<LabeledMultiset, Predictor> cache_;
};

}  // namespace

RiskEstimate exact_expected_risk(const ProblemInstance& instance, const Learner& learner,
                                 const DiscreteDistribution& dist, int n,
                                 const EvalConfig& cfg) {
    if (n < 0) throw DomainError("exact_expected_risk: negative sample size");
    if (learner.train_size >= 0 && learner.train_size != n)
        throw DomainError("exact_expected_risk: learner expects samples of size " +
                          std::to_string(learner.train_size));
    Trainer trainer(instance, learner);
    RiskEstimate est;

    std::vector<WeightedExample> support;
    for (const auto& atom : dist.atoms) support.push_back({atom.example, atom.weight});

    BigInt draws = n == 0 ? BigInt(1)
                   : learner.exchangeable
                       ? count_multiset_draws(static_cast<int>(support.size()), n)
                       : count_sequence_draws(static_cast<int>(support.size()), n);
    if (draws <= cfg.exact_cap) {
        Rat total = 0;
        auto account = [&](const std::vector<LabeledExample>& sample, const Rat& weight) {
            total += weight * predictor_risk(instance, trainer.train(sample), dist);
        };
        if (n == 0) {
            account({}, Rat(1));
        } else if (learner.exchangeable) {
            for_each_multiset_draw(support, n,
                                   [&](const std::vector<int>& counts, const Rat& weight) {
                                       std::vector<LabeledExample> sample;
                                       for (size_t i = 0; i < counts.size(); ++i)
                                           for (int c = 0; c < counts[i]; ++c)
                                               sample.push_back(support[i].example);
                                       account(sample, weight);
                                   });
        } else {
            for_each_sequence_draw(support, n, account);
        }
        est.value = total;
        est.value_d = to_double(total);
        return est;
    }

    if (!cfg.seed)
        throw BudgetExceeded("exact_expected_risk: enumeration cap exceeded and no seed for "
                             "Monte Carlo fallback");
    est.exact = false;
    est.trials = cfg.trials;
    est.seed = cfg.seed;
    std::mt19937_64 rng(*cfg.seed);
    std::vector<double> weights;
    for (const auto& w : support) weights.push_back(to_double(w.weight));
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        std::vector<LabeledExample> sample;
        sample.reserve(n);
        for (int i = 0; i < n; ++i) sample.push_back(support[pick(rng)].example);
        double r = to_double(predictor_risk(instance, trainer.train(sample), dist));
        sum += r;
        sumsq += r * r;
    }
    double mean = sum / cfg.trials;
    double var = std::max(0.0, sumsq / cfg.trials - mean * mean);
    est.value_d = mean;
    est.std_error = cfg.trials > 1 ? std::sqrt(var / (cfg.trials - 1)) : 0.0;
    return est;
}

RiskEstimate sup_risk_over_family(const ProblemInstance& instance, const Learner& learner,
                                  const std::vector<DiscreteDistribution>& family, int n,
                                  const EvalConfig& cfg, int* argmax) {
    if (family.empty()) throw DomainError("sup_risk_over_family: empty family");
    for (const auto& dist : family) {
        bool realizable = false;
        for (const auto& h : instance.hypotheses)
            if (robust_risk(instance, h, dist) == 0) {
                realizable = true;
                break;
            }
        if (!realizable)
            throw DomainError("sup_risk_over_family: member " + dist.name +
                              " is not robustly realizable");
    }
    RiskEstimate best;
    bool have = false;
    for (size_t i = 0; i < family.size(); ++i) {
        auto est = exact_expected_risk(instance, learner, family[i], n, cfg);
        bool better = !have || (est.exact && best.exact ? est.value > best.value
                                                        : est.value_d > best.value_d);
        if (better) {
            best = est;
            have = true;
            if (argmax) *argmax = static_cast<int>(i);
        }
    }
    return best;
}

std::vector<DiscreteDistribution> vertex_family(const GlobalOIG& g) {
    std::vector<DiscreteDistribution> family;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        auto d = uniform_distribution(g.vertices[i]);
        d.name = "P_v" + std::to_string(i);
        family.push_back(std::move(d));
    }
    return family;
}

SandwichReport sandwich_bounds(const ProblemInstance& instance, int n,
                               const std::vector<Learner>& learners, const EvalConfig& cfg,
                               const InducedConfig& induced_cfg) {
    if (n < 1) throw DomainError("sandwich_bounds: n must be >= 1");
    SandwichReport report;
    report.n = n;
    auto g = std::make_shared<GlobalOIG>(build_global_oig(instance, 2 * n));
    auto opt = optimal_orientation(*g);
    if (!opt.optimal) throw BudgetExceeded("sandwich_bounds: orientation budget exceeded");
    report.optimal_max_outdeg = opt.stats.max_outdeg;
    report.upper = Rat(opt.stats.max_outdeg, 2 * n);

    // Lemma-1 leave-one-out check for the optimal orientation, every vertex.
    auto o_star = std::make_shared<Orientation>(opt.orientation);
    auto g_learner = orientation_learner(g, o_star);
    auto access = full_access(instance);
    report.lemma1_holds = true;
    for (size_t vi = 0; vi < g->vertices.size(); ++vi) {
        int loo_errors = 0;
        for (const auto& [ex, mult] : g->vertices[vi].entries()) {
            auto rest = g->vertices[vi].minus_one(ex).expand();
            auto pred = g_learner.train(instance, access, rest);
            for (int z : instance.perturbations[ex.point])
                if (pred(z) != ex.label) {
                    loo_errors += mult;
                    break;
                }
        }
        if (loo_errors > opt.stats.outdeg[vi]) report.lemma1_holds = false;
    }

    report.family_risk = Rat(0);
    report.upper_holds = true;
    auto family = vertex_family(*g);
    if (!family.empty()) {
        auto est = sup_risk_over_family(instance, g_learner, family, 2 * n - 1, cfg);
        if (!est.exact) throw BudgetExceeded("sandwich_bounds: family risk not exact");
        report.family_risk = est.value;
        report.upper_holds = report.family_risk <= report.upper;
    }

    report.all_hold = report.lemma1_holds && report.upper_holds;
    for (const auto& learner : learners) {
        SandwichLearnerRow row;
        row.name = learner.name;
        auto induced = learner_induced_orientation(instance, *g, learner, induced_cfg);
        if (!induced.exact) throw BudgetExceeded("sandwich_bounds: induced orientation not exact");
        row.induced_max_outdeg = induced.stats.max_outdeg;
        row.lemma2_lower = Rat(row.induced_max_outdeg, 8 * n);
        row.exact_risk = Rat(0);
        bool lower_holds = true;
        if (row.induced_max_outdeg > 0) {
            int v_star = static_cast<int>(std::max_element(induced.stats.outdeg.begin(),
                                                           induced.stats.outdeg.end()) -
                                          induced.stats.outdeg.begin());
            auto p_v = uniform_distribution(g->vertices[v_star]);
            auto est = exact_expected_risk(instance, learner, p_v, n, cfg);
            if (!est.exact) throw BudgetExceeded("sandwich_bounds: learner risk not exact");
            row.exact_risk = est.value;
            lower_holds = row.exact_risk >= row.lemma2_lower;
        }
        row.chain_holds = lower_holds && report.optimal_max_outdeg <= row.induced_max_outdeg;
        report.all_hold = report.all_hold && row.chain_holds;
        report.learners.push_back(std::move(row));
    }
    return report;
}

Thm1Report thm1_experiment(int m, int trials, uint64_t seed, const std::string& learner_name) {
    if (m < 1 || trials < 1) throw DomainError("thm1_experiment: m and trials must be >= 1");
    Thm1Report report;
    report.m = m;
    report.trials = trials;
    report.seed = seed;
    report.local_learner = learner_name;

    double sum = 0.0, sumsq = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        std::seed_seq seq{seed, static_cast<uint64_t>(trial)};
        std::mt19937_64 rng(seq);
        auto coins = thm1_coins(m, rng);
        auto instance = thm1_instance(m, coins);
        const auto& p = instance.distributions.front();

        auto learner = learner_by_name(instance, learner_name, 1);
        if (!learner.local)
            throw DomainError("thm1_experiment: contender '" + learner_name + "' is not local");

        std::vector<double> weights;
        for (const auto& atom : p.atoms) weights.push_back(to_double(atom.weight));
        std::discrete_distribution<int> pick(weights.begin(), weights.end());
        std::vector<LabeledExample> sample;
        for (int i = 0; i < m; ++i) sample.push_back(p.atoms[pick(rng)].example);

        auto pred = learner.train(instance, local_view(instance, LabeledMultiset(sample)),
                                  sample);
        double r = to_double(predictor_risk(instance, pred, p));
        sum += r;
        sumsq += r * r;

        auto optimal = optimal_learner(instance, 1);
        auto opt_pred = optimal.train(instance, full_access(instance), {});
        if (predictor_risk(instance, opt_pred, p) != 0) ++report.optimal_nonzero_trials;
    }
    report.local_mean = sum / trials;
    double var = std::max(0.0, sumsq / trials - report.local_mean * report.local_mean);
    report.local_std_error = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
    return report;
}

std::string serialize_risk(const RiskEstimate& estimate) {
    nlohmann::json j;
    j["mode"] = estimate.exact ? "exact" : "monte-carlo";
    j["value"] = estimate.value_d;
    if (estimate.exact) j["value_exact"] = rational_string(estimate.value);
    if (!estimate.exact) {
        j["trials"] = estimate.trials;
        j["std_error"] = estimate.std_error;
        if (estimate.seed) j["seed"] = *estimate.seed;
    }
    return j.dump(2);
}

std::string serialize_sandwich(const SandwichReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["optimal_max_outdeg"] = report.optimal_max_outdeg;
    j["upper"] = rational_string(report.upper);
    j["lemma1_holds"] = report.lemma1_holds;
    j["family_risk"] = rational_string(report.family_risk);
    j["upper_holds"] = report.upper_holds;
    j["learners"] = nlohmann::json::array();
    for (const auto& row : report.learners)
        j["learners"].push_back({{"name", row.name},
                                 {"induced_max_outdeg", row.induced_max_outdeg},
                                 {"exact_risk", rational_string(row.exact_risk)},
                                 {"lemma2_lower", rational_string(row.lemma2_lower)},
                                 {"chain_holds", row.chain_holds}});
    j["all_hold"] = report.all_hold;
    return j.dump(2);
}

std::string serialize_thm1(const Thm1Report& report) {
    nlohmann::json j;
    j["m"] = report.m;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["local_learner"] = report.local_learner;
    j["local_mean"] = report.local_mean;
    j["local_std_error"] = report.local_std_error;
    j["optimal_nonzero_trials"] = report.optimal_nonzero_trials;
    j["note"] = "checks a specific local learner; the theorem's universal quantifier over all "
                "local learners is not testable";
    return j.dump(2);
}

}  // namespace roig

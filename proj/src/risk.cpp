#include "roig/risk.hpp"

#include "roig/errors.hpp"

namespace roig {

int robust_loss(const ProblemInstance& instance, const Hypothesis& h, int point, int label) {
    instance.check_point(point);
    for (int z : instance.perturbations[point])
        if (h.labels[z] != label) return 1;
    return 0;
}

Rat robust_risk(const ProblemInstance& instance, const Hypothesis& h,
                const DiscreteDistribution& d) {
    Rat total = 0;
    for (const auto& atom : d.atoms)
        if (robust_loss(instance, h, atom.example.point, atom.example.label))
            total += atom.weight;
    return total;
}

Rat empirical_robust_risk(const ProblemInstance& instance, const Hypothesis& h,
                          const LabeledMultiset& s) {
    if (s.empty()) throw DomainError("empirical_robust_risk: empty sample");
    long long wrong = 0;
    for (const auto& [ex, mult] : s.entries())
        if (robust_loss(instance, h, ex.point, ex.label)) wrong += mult;
    return Rat(wrong, s.size());
}

std::optional<int> realizable_witness(const ProblemInstance& instance, const LabeledMultiset& s) {
    if (s.empty()) throw DomainError("realizable_witness: empty sample");
    for (int hi = 0; hi < instance.num_hypotheses(); ++hi) {
        bool ok = true;
        for (const auto& [ex, _] : s.entries()) {
            if (robust_loss(instance, instance.hypotheses[hi], ex.point, ex.label)) {
                ok = false;
                break;
            }
        }
        if (ok) return hi;
    }
    return std::nullopt;
}

std::vector<LabeledExample> robustly_consistent_set(const ProblemInstance& instance,
                                                    const Hypothesis& h) {
    std::vector<LabeledExample> out;
    for (int x = 0; x < instance.num_points(); ++x) {
        for (int label : {-1, +1}) {
            if (!robust_loss(instance, h, x, label)) out.push_back({x, label});
        }
    }
    return out;
}

}  // namespace roig

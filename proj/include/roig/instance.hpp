#pragma once

#include "roig/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace roig {

// Points are indices into ProblemInstance::points; labels are exactly +1/-1.
struct LabeledExample {
    int point = 0;
    int label = +1;
    auto operator<=>(const LabeledExample&) const = default;
};

// Canonical multiset of labeled examples: the vertex type of the global
// one-inclusion graph. Entries are sorted by (point, label), multiplicities
// positive; two multisets are equal iff their entry lists are identical.
class LabeledMultiset {
public:
    LabeledMultiset() = default;
    explicit LabeledMultiset(const std::vector<LabeledExample>& examples);

    const std::vector<std::pair<LabeledExample, int>>& entries() const { return entries_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    int count(const LabeledExample& ex) const;

    LabeledMultiset plus(const LabeledExample& ex) const;
    // Removes one copy; throws DomainError if absent.
    LabeledMultiset minus_one(const LabeledExample& ex) const;

    std::vector<LabeledExample> expand() const;  // with multiplicity

    auto operator<=>(const LabeledMultiset&) const = default;

private:
    std::vector<std::pair<LabeledExample, int>> entries_;
    int size_ = 0;
};

struct MultisetHash {
    size_t operator()(const LabeledMultiset& m) const;
};

struct Hypothesis {
    std::string name;                // merged names joined by '|' after dedup
    std::vector<int8_t> labels;      // labels[point] in {+1,-1}
};

struct DistAtom {
    LabeledExample example;
    Rat weight;
};

// Finitely supported distribution over X x {+1,-1}; weights are exact
// rationals renormalized to sum to 1 (validated within 1e-12 before
// renormalization when parsed from floats).
struct DiscreteDistribution {
    std::string name;
    std::vector<DistAtom> atoms;  // distinct examples, positive weight, sorted
};

struct ProblemInstance {
    std::vector<std::string> points;
    std::unordered_map<std::string, int> point_index;
    std::vector<Hypothesis> hypotheses;
    std::vector<std::vector<int>> perturbations;          // U(x), sorted, non-empty
    std::vector<std::vector<int>> inverse_perturbations;  // U^{-1}(z), sorted
    std::vector<DiscreteDistribution> distributions;

    int num_points() const { return static_cast<int>(points.size()); }
    int num_hypotheses() const { return static_cast<int>(hypotheses.size()); }
    bool in_perturbation(int x, int z) const;  // z in U(x)
    void check_point(int x) const;
};

// Programmatic construction path; applies the same validation and
// deduplication as parsing. Perturbations and hypothesis labels are indexed
// by position in `points`.
ProblemInstance make_instance(std::vector<std::string> points,
                              std::vector<std::pair<std::string, std::vector<int8_t>>> hypotheses,
                              std::vector<std::vector<int>> perturbations,
                              std::vector<DiscreteDistribution> distributions = {});

ProblemInstance parse_instance(const std::string& text);
std::string serialize_instance(const ProblemInstance& instance);

// Validates that every point exists in the instance.
LabeledMultiset canonical_multiset(const ProblemInstance& instance,
                                   const std::vector<LabeledExample>& examples);

DiscreteDistribution uniform_distribution(const LabeledMultiset& sample);

}  // namespace roig

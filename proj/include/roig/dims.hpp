#pragma once

#include "roig/oig.hpp"
#include "roig/orient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace roig {

struct DimsConfig {
    int n_cap = 6;               // scan range for graph-based dimensions
    size_t vertex_cap = 1000000;
    uint64_t node_budget = 200000000;
};

// One coordinate of a robust shattering witness: anchor points and a shared
// perturbation z in U(x_plus) cap U(x_minus).
struct RobustPair {
    int x_plus = 0;
    int x_minus = 0;
    int z = 0;
};

struct DimensionReport {
    int vc = 0;
    std::vector<int> vc_witness;  // shattered point indices

    int dual_vc = 0;
    std::vector<int> dual_vc_witness;  // shattered hypothesis indices

    int loss_vc = 0;
    std::vector<LabeledExample> loss_vc_witness;  // shattered (point,label) pairs

    int robust_shattering = 0;
    std::vector<RobustPair> robust_witness;

    int full_degree = 0;                           // 0 when no n admits a core
    std::vector<LabeledMultiset> full_degree_core; // surviving vertices at n = full_degree

    int d_dimension = 0;
    int d_opt_outdeg = 0;  // optimal max adversarial out-degree at n = d_dimension
};

int vc_dimension(const ProblemInstance& instance, std::vector<int>* witness = nullptr);
int dual_vc_dimension(const ProblemInstance& instance, std::vector<int>* witness = nullptr);
int loss_class_vc_dimension(const ProblemInstance& instance,
                            std::vector<LabeledExample>* witness = nullptr);
int robust_shattering_dimension(const ProblemInstance& instance,
                                std::vector<RobustPair>* witness = nullptr);

// Largest n whose graph retains a non-empty subgraph of minimum adversarial
// degree >= n after iterated peeling; 0 if none in 1..n_cap.
int full_degree_dimension(const ProblemInstance& instance, const DimsConfig& cfg = {},
                          std::vector<LabeledMultiset>* core = nullptr);

// Largest n in 1..n_cap with 3 * opt_max_adv_outdeg(G_n) >= n (exact compare);
// every n is tested, no monotonicity assumed.
int d_dimension(const ProblemInstance& instance, const DimsConfig& cfg = {},
                int* opt_at = nullptr);

DimensionReport compute_dimensions(const ProblemInstance& instance, const DimsConfig& cfg = {});

// Replays every witness in the report against the instance.
bool verify_report(const ProblemInstance& instance, const DimensionReport& report,
                   const DimsConfig& cfg = {});

std::string serialize_report(const ProblemInstance& instance, const DimensionReport& report);

}  // namespace roig

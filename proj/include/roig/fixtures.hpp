#pragma once

#include "roig/instance.hpp"

#include <cstdint>
#include <random>

namespace roig {

// X={a,b}, all-powerful U, all four functions. Example-1 instance.
ProblemInstance make_f1();

// X={1,2,3}, identity U, four threshold hypotheses. VC dimension 1.
ProblemInstance make_f2();

// Theorem-1 truncation: points {x+_i, x-_i, z_i} for i in 1..3m; hypotheses
// are sign patterns on the z's, constant +1 on x+ and -1 on x-; U follows
// the coin vector (coins[i] = +1 puts z_i into U(x+_i), -1 into U(x-_i)).
// pattern_cap = 0 means all 2^{3m} patterns; otherwise a seeded sample that
// always includes the pattern matching the coins (so the uniform
// distribution "P" stays robustly realizable).
ProblemInstance thm1_instance(int m, const std::vector<int>& coins, int pattern_cap = 0,
                              uint64_t seed = 0);

std::vector<int> thm1_coins(int m, std::mt19937_64& rng);

// Theorem-1 truncation with coins drawn from the seed.
ProblemInstance make_f3(int m, uint64_t seed, int pattern_cap = 4096);

// Example-2 discretization: points are bit strings of length d+k; the
// adversary may rewrite the k junk coordinates freely. Hypotheses: dictators
// and threshold functions of the first d coordinates, padded with seeded
// junk-sensitive hypotheses up to hyp_cap.
ProblemInstance example2_discrete(int d, int k, int hyp_cap = 64, uint64_t seed = 0);

// Small random instances for property tests. identity_u forces U(x)={x}.
ProblemInstance random_instance(uint64_t seed, int max_points = 4, int max_hypotheses = 6,
                                bool identity_u = false);

}  // namespace roig

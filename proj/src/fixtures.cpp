#include "roig/fixtures.hpp"

#include "roig/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace roig {

ProblemInstance make_f1() {
    return make_instance({"a", "b"},
                         {{"h--", {-1, -1}}, {"h-+", {-1, +1}}, {"h+-", {+1, -1}},
                          {"h++", {+1, +1}}},
                         {{0, 1}, {0, 1}});
}

ProblemInstance make_f2() {
    // h_t(x) = +1 iff x >= t, thresholds t = 1..4 over points 1,2,3.
    return make_instance({"1", "2", "3"},
                         {{"h1", {+1, +1, +1}}, {"h2", {-1, +1, +1}}, {"h3", {-1, -1, +1}},
                          {"h4", {-1, -1, -1}}},
                         {{0}, {1}, {2}});
}

std::vector<int> thm1_coins(int m, std::mt19937_64& rng) {
    std::vector<int> coins(3 * m);
    for (auto& c : coins) c = (rng() & 1) ? +1 : -1;
    return coins;
}

ProblemInstance thm1_instance(int m, const std::vector<int>& coins, int pattern_cap,
                              uint64_t seed) {
    if (m < 1) throw DomainError("thm1_instance: m must be >= 1");
    int blocks = 3 * m;
    if (static_cast<int>(coins.size()) != blocks)
        throw DomainError("thm1_instance: need one coin per block (3m)");

    std::vector<std::string> points;
    for (int i = 0; i < blocks; ++i) {
        points.push_back("x+" + std::to_string(i + 1));
        points.push_back("x-" + std::to_string(i + 1));
        points.push_back("z" + std::to_string(i + 1));
    }
    auto xp = [](int i) { return 3 * i; };
    auto xm = [](int i) { return 3 * i + 1; };
    auto zz = [](int i) { return 3 * i + 2; };

    std::vector<std::vector<int>> perturb(points.size());
    for (int i = 0; i < blocks; ++i) {
        if (coins[i] == +1) {
            perturb[xp(i)] = {xp(i), zz(i)};
            perturb[xm(i)] = {xm(i)};
        } else {
            perturb[xp(i)] = {xp(i)};
            perturb[xm(i)] = {xm(i), zz(i)};
        }
        perturb[zz(i)] = {xp(i), xm(i), zz(i)};
    }

    std::set<std::vector<int8_t>> patterns;  // labels on z_1..z_{3m}
    if (pattern_cap == 0) {
        if (blocks > 20) throw BudgetExceeded("thm1_instance: 2^(3m) patterns too large");
        for (uint64_t bits = 0; bits < (uint64_t{1} << blocks); ++bits) {
            std::vector<int8_t> p(blocks);
            for (int i = 0; i < blocks; ++i) p[i] = (bits >> i) & 1 ? +1 : -1;
            patterns.insert(std::move(p));
        }
    } else {
        // Always include the coin-matching pattern: the robust realizer of P.
        std::vector<int8_t> realizer(blocks);
        for (int i = 0; i < blocks; ++i) realizer[i] = static_cast<int8_t>(coins[i]);
        patterns.insert(std::move(realizer));
        std::mt19937_64 rng(seed);
        while (static_cast<int>(patterns.size()) < pattern_cap) {
            std::vector<int8_t> p(blocks);
            for (int i = 0; i < blocks; ++i) p[i] = (rng() & 1) ? +1 : -1;
            patterns.insert(std::move(p));
        }
    }

    std::vector<std::pair<std::string, std::vector<int8_t>>> hypotheses;
    for (const auto& pat : patterns) {
        std::string name = "h";
        std::vector<int8_t> labels(points.size());
        for (int i = 0; i < blocks; ++i) {
            labels[xp(i)] = +1;
            labels[xm(i)] = -1;
            labels[zz(i)] = pat[i];
            name += pat[i] > 0 ? '+' : '-';
        }
        hypotheses.emplace_back(std::move(name), std::move(labels));
    }

    DiscreteDistribution p_dist;
    p_dist.name = "P";
    for (int i = 0; i < blocks; ++i) {
        p_dist.atoms.push_back({{xp(i), +1}, Rat(1, 2 * blocks)});
        p_dist.atoms.push_back({{xm(i), -1}, Rat(1, 2 * blocks)});
    }
    return make_instance(std::move(points), std::move(hypotheses), std::move(perturb), {p_dist});
}

ProblemInstance make_f3(int m, uint64_t seed, int pattern_cap) {
    std::mt19937_64 rng(seed);
    auto coins = thm1_coins(m, rng);
    int cap = (3 * m <= 12) ? 0 : pattern_cap;
    return thm1_instance(m, coins, cap, rng());
}

ProblemInstance example2_discrete(int d, int k, int hyp_cap, uint64_t seed) {
    if (d < 1 || k < 0 || d + k > 12) throw DomainError("example2_discrete: need 1 <= d, d+k <= 12");
    int n = d + k;
    int total = 1 << n;

    std::vector<std::string> points(total);
    for (int x = 0; x < total; ++x) {
        std::string name(n, '0');
        for (int b = 0; b < n; ++b)
            if (x >> b & 1) name[b] = '1';
        points[x] = name;
    }

    // U(x): everything agreeing with x on the first d coordinates.
    int head_mask = (1 << d) - 1;
    std::vector<std::vector<int>> perturb(total);
    for (int x = 0; x < total; ++x)
        for (int z = 0; z < total; ++z)
            if ((x & head_mask) == (z & head_mask)) perturb[x].push_back(z);

    std::vector<std::pair<std::string, std::vector<int8_t>>> hypotheses;
    auto add_head_fn = [&](const std::string& name, const std::function<int(int)>& g) {
        std::vector<int8_t> labels(total);
        for (int x = 0; x < total; ++x) labels[x] = static_cast<int8_t>(g(x & head_mask));
        hypotheses.emplace_back(name, std::move(labels));
    };
    for (int j = 0; j < d; ++j) {
        add_head_fn("dict" + std::to_string(j), [j](int u) { return u >> j & 1 ? +1 : -1; });
        add_head_fn("ndict" + std::to_string(j), [j](int u) { return u >> j & 1 ? -1 : +1; });
    }
    for (int t = 0; t <= d; ++t)
        add_head_fn("thr" + std::to_string(t),
                    [t](int u) { return std::popcount(static_cast<unsigned>(u)) >= t ? +1 : -1; });

    // Junk-sensitive padding: seeded random tables, up to the cap.
    std::mt19937_64 rng(seed);
    int padded = 0;
    while (static_cast<int>(hypotheses.size()) < hyp_cap && padded < 4 * hyp_cap) {
        std::vector<int8_t> labels(total);
        for (auto& l : labels) l = (rng() & 1) ? +1 : -1;
        hypotheses.emplace_back("junk" + std::to_string(padded++), std::move(labels));
    }
    return make_instance(std::move(points), std::move(hypotheses), std::move(perturb));
}

ProblemInstance random_instance(uint64_t seed, int max_points, int max_hypotheses,
                                bool identity_u) {
    std::mt19937_64 rng(seed);
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    int p = draw(2, max_points);
    std::vector<std::string> points(p);
    for (int i = 0; i < p; ++i) points[i] = "p" + std::to_string(i);

    std::vector<std::vector<int>> perturb(p);
    for (int x = 0; x < p; ++x) {
        if (identity_u) {
            perturb[x] = {x};
            continue;
        }
        for (int z = 0; z < p; ++z)
            if (z == x || rng() % 3 == 0) perturb[x].push_back(z);
    }

    int h = draw(1, max_hypotheses);
    std::vector<std::pair<std::string, std::vector<int8_t>>> hypotheses;
    for (int i = 0; i < h; ++i) {
        std::vector<int8_t> labels(p);
        for (auto& l : labels) l = (rng() & 1) ? +1 : -1;
        hypotheses.emplace_back("h" + std::to_string(i), std::move(labels));
    }
    return make_instance(std::move(points), std::move(hypotheses), std::move(perturb));
}

}  // namespace roig

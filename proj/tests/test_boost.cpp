#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roig/boosting.hpp"
#include "roig/errors.hpp"
#include "roig/fixtures.hpp"
#include "roig/risk.hpp"

#include <cmath>
#include <random>

using namespace roig;

TEST_CASE("compression bound against the hand formula") {
    std::mt19937_64 rng(17);
    for (int c = 0; c < 50; ++c) {
        int m = 2 + static_cast<int>(rng() % 5000);
        int k = 1 + static_cast<int>(rng() % (m - 1));
        double delta = 1.0 / (1 + static_cast<int>(rng() % 1000));
        double by_hand = (k * std::log(m) + std::log(1.0 / delta)) / (m - k);
        double got = compression_bound(k, m, delta);
        CHECK(std::abs(got - by_hand) <= 1e-12 * std::max(1.0, std::abs(by_hand)));
    }
    CHECK_THROWS_AS(compression_bound(0, 10, 1.0), DomainError);
    CHECK_THROWS_AS(compression_bound(10, 10, 0.5), DomainError);
    CHECK_THROWS_AS(compression_bound(11, 10, 0.5), DomainError);
    CHECK_THROWS_AS(compression_bound(1, 10, 0.0), DomainError);
    CHECK_THROWS_AS(compression_bound(1, 10, 1.5), DomainError);
}

TEST_CASE("default_rounds") {
    CHECK(default_rounds(9) == 1 + static_cast<int>(std::ceil(48 * std::log(9.0))));
    CHECK(default_rounds(1) == 1);
}

TEST_CASE("boosting a perfect weak learner is trivial and margins hold") {
    auto f2 = make_f2();
    std::vector<LabeledExample> s = {{0, -1}, {1, +1}, {1, +1}, {2, +1}};
    // h2 is robustly consistent with all of S: constant weak learner
    WeakLearner weak = [&](const std::vector<double>&) {
        WeakHypothesis w;
        w.predictor = Predictor::from_table(f2.hypotheses[1].labels);
        w.tuple = {0, 1};
        return w;
    };
    auto run = alpha_boost(f2, s, weak, 12);
    CHECK(run.T == 12);
    REQUIRE(run.rounds.size() == 12);
    for (const auto& round : run.rounds) {
        CHECK(round.min_margin >= round.margin_bound - 1e-12);
        double total = 0;
        for (double w : round.distribution) total += w;
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
    for (const auto& ex : s) {
        for (int z : f2.perturbations[ex.point]) CHECK(run.majority(z) == ex.label);
    }
}

TEST_CASE("a bad weak learner raises WeakLearnerFailure with the round index") {
    auto f2 = make_f2();
    std::vector<LabeledExample> s = {{0, -1}, {2, +1}};
    WeakLearner bad = [&](const std::vector<double>&) {
        WeakHypothesis w;
        w.predictor = Predictor::from_table({+1, +1, -1});  // robustly wrong on both
        w.tuple = {0};
        return w;
    };
    CHECK_THROWS_AS(alpha_boost(f2, s, bad, 5), WeakLearnerFailure);
}

TEST_CASE("weak_from_optimal finds small consistent tuples") {
    auto f2 = make_f2();
    std::vector<LabeledExample> s = {{0, -1}, {1, +1}, {2, +1}};
    auto weak = weak_from_optimal(f2, 1, s);
    std::vector<double> uniform(s.size(), 1.0 / s.size());
    auto w = weak(uniform);
    CHECK(w.tuple.size() == 1);
    // the returned predictor is weak under the uniform distribution
    int wrong = 0;
    for (const auto& ex : s) {
        bool mistake = false;
        for (int z : f2.perturbations[ex.point])
            if (w.predictor(z) != ex.label) mistake = true;
        wrong += mistake;
    }
    CHECK(wrong * 3 <= static_cast<int>(s.size()));
}

TEST_CASE("realizable boosting drives empirical robust risk to zero") {
    std::mt19937_64 rng(23);
    for (const auto& inst : {make_f1(), make_f2()}) {
        for (int trial = 0; trial < 20; ++trial) {
            // realizable sample: draw from a random hypothesis's consistent set
            const auto& h = inst.hypotheses[rng() % inst.hypotheses.size()];
            auto pool = robustly_consistent_set(inst, h);
            if (pool.empty()) continue;
            int m = 5 + static_cast<int>(rng() % 26);
            std::vector<LabeledExample> s;
            for (int i = 0; i < m; ++i) s.push_back(pool[rng() % pool.size()]);

            auto out = realizable_boosted(inst, s, 1, 0.05);
            for (const auto& ex : s) {
                for (int z : inst.perturbations[ex.point])
                    CHECK(out.predictor(z) == ex.label);
            }
            for (const auto& round : out.run.rounds)
                CHECK(round.min_margin >= round.margin_bound - 1e-12);
            CHECK(out.compression.size() ==
                  static_cast<size_t>(out.run.T) * out.run.rounds.front().tuple.size());
        }
    }
}

TEST_CASE("compression replay is bit-for-bit") {
    auto f2 = make_f2();
    std::vector<LabeledExample> s = {{0, -1}, {1, +1}, {2, +1}, {1, +1}};
    auto out = realizable_boosted(f2, s, 1, 0.1);
    auto replayed = replay_compression(f2, s, 1, out.compression);
    for (int x = 0; x < f2.num_points(); ++x) CHECK(replayed(x) == out.predictor(x));
}

TEST_CASE("bound is NaN when the sample is too small for the compression size") {
    auto f2 = make_f2();
    std::vector<LabeledExample> s = {{0, -1}, {1, +1}, {2, +1}};
    auto out = realizable_boosted(f2, s, 1, 0.1);  // T exceeds |S|
    CHECK(std::isnan(out.bound));
}

TEST_CASE("max_realizable_subsequence") {
    auto f2 = make_f2();
    // (0,-1) and (0,+1) conflict; a maximizer keeps exactly one of them
    LabeledMultiset s({{0, -1}, {0, +1}, {1, +1}, {2, +1}, {2, +1}});
    auto kept = max_realizable_subsequence(f2, s);
    CHECK(kept.size() == 4);
    CHECK(kept.count({0, -1}) + kept.count({0, +1}) == 1);
    CHECK(kept.count({1, +1}) == 1);
    CHECK(kept.count({2, +1}) == 2);

    auto f1 = make_f1();
    LabeledMultiset mixed({{0, +1}, {1, -1}});  // nothing robustly realizable jointly
    CHECK(max_realizable_subsequence(f1, mixed).size() == 1);
    CHECK(max_realizable_subsequence(f2, LabeledMultiset{}).empty());
}

TEST_CASE("agnostic precondition is enforced with the required size") {
    auto f2 = make_f2();
    std::vector<LabeledExample> tiny = {{0, -1}, {1, +1}};
    CHECK_THROWS_AS(agnostic_learn(f2, tiny, 1, 0.1), DomainError);
}

TEST_CASE("agnostic learning on F1 with 10% noise beats the best hypothesis") {
    auto f1 = make_f1();
    std::mt19937_64 rng(31);
    std::vector<LabeledExample> s;
    for (int i = 0; i < 700; ++i) {
        int x = static_cast<int>(rng() % 2);
        int y = +1;
        if (rng() % 10 == 0) y = -1;  // 10% contradictions of h++
        s.push_back({x, y});
    }
    auto out = agnostic_learn(f1, s, 1, 0.1);
    CHECK(out.empirical_risk <= out.best_risk);
    Rat best = 1;
    for (const auto& h : f1.hypotheses)
        best = std::min(best, empirical_robust_risk(f1, h, LabeledMultiset(s)));
    CHECK(out.best_risk == best);
    CHECK(out.bound >= to_double(out.best_risk) - 1e-12);
}

TEST_CASE("serialize_boost_run names the rounds") {
    auto f2 = make_f2();
    std::vector<LabeledExample> s = {{0, -1}, {1, +1}};
    WeakLearner weak = [&](const std::vector<double>&) {
        WeakHypothesis w;
        w.predictor = Predictor::from_table(f2.hypotheses[1].labels);
        w.tuple = {0};
        return w;
    };
    auto text = serialize_boost_run(alpha_boost(f2, s, weak, 3));
    CHECK(text.find("rounds") != std::string::npos);
}

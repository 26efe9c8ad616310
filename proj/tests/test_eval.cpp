#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roig/errors.hpp"
#include "roig/eval.hpp"
#include "roig/fixtures.hpp"

#include <cmath>

using namespace roig;

namespace {

DiscreteDistribution dist_of(const std::vector<std::pair<LabeledExample, Rat>>& atoms,
                             const std::string& name = "D") {
    DiscreteDistribution d;
    d.name = name;
    for (const auto& [ex, w] : atoms) d.atoms.push_back({ex, w});
    return d;
}

}  // namespace

TEST_CASE("a consistent constant learner has exact risk zero") {
    auto f2 = make_f2();
    auto d = dist_of({{{1, +1}, Rat(1, 2)}, {{2, +1}, Rat(1, 2)}});
    auto r = exact_expected_risk(f2, constant_learner(+1), d, 3);
    CHECK(r.exact);
    CHECK(r.value == 0);
    CHECK(r.value_d == 0.0);
}

TEST_CASE("rerm on F1 at n=1 has expected risk exactly 1/2") {
    // U is all-powerful: whichever hypothesis wins on the single training
    // example, it is robustly wrong on one of the two atoms.
    auto f1 = make_f1();
    auto d = dist_of({{{0, +1}, Rat(1, 2)}, {{1, -1}, Rat(1, 2)}});
    auto r = exact_expected_risk(f1, rerm_learner(), d, 1);
    CHECK(r.exact);
    CHECK(r.value == Rat(1, 2));
}

TEST_CASE("n = 0 trains on the empty sample") {
    auto f2 = make_f2();
    auto d = dist_of({{{0, -1}, Rat(1)}});
    auto r = exact_expected_risk(f2, constant_learner(-1), d, 0);
    CHECK(r.exact);
    CHECK(r.value == 0);
}

TEST_CASE("Monte Carlo fallback: deterministic under a seed, close to exact") {
    auto f2 = make_f2();
    auto d = dist_of({{{0, -1}, Rat(1, 4)}, {{1, +1}, Rat(1, 4)}, {{2, +1}, Rat(1, 2)}});
    auto exact = exact_expected_risk(f2, rerm_learner(), d, 2);
    REQUIRE(exact.exact);

    EvalConfig cfg;
    cfg.exact_cap = 0;
    CHECK_THROWS_AS(exact_expected_risk(f2, rerm_learner(), d, 2, cfg), BudgetExceeded);

    cfg.seed = 77;
    cfg.trials = 20000;
    auto mc1 = exact_expected_risk(f2, rerm_learner(), d, 2, cfg);
    auto mc2 = exact_expected_risk(f2, rerm_learner(), d, 2, cfg);
    CHECK_FALSE(mc1.exact);
    CHECK(mc1.value_d == mc2.value_d);
    CHECK(std::abs(mc1.value_d - to_double(exact.value)) <= 4 * mc1.std_error + 1e-9);
}

TEST_CASE("sup over a family records the argmax") {
    auto f2 = make_f2();
    std::vector<DiscreteDistribution> family = {
        dist_of({{{1, +1}, Rat(1)}}, "easy"),
        dist_of({{{0, -1}, Rat(1, 2)}, {{2, +1}, Rat(1, 2)}}, "hard"),
    };
    int argmax = -1;
    auto r = sup_risk_over_family(f2, constant_learner(+1), family, 1, {}, &argmax);
    REQUIRE(r.exact);
    CHECK(argmax == 1);
    CHECK(r.value == Rat(1, 2));
    CHECK_THROWS_AS(sup_risk_over_family(f2, constant_learner(+1), {}, 1), DomainError);
}

TEST_CASE("vertex family covers every vertex uniformly") {
    auto f2 = make_f2();
    auto g = build_global_oig(f2, 2);
    auto family = vertex_family(g);
    REQUIRE(family.size() == g.vertices.size());
    for (size_t i = 0; i < family.size(); ++i) {
        Rat total = 0;
        for (const auto& atom : family[i].atoms) total += atom.weight;
        CHECK(total == 1);
        CHECK(family[i].name == "P_v" + std::to_string(i));
    }
}

TEST_CASE("sandwich chain on F2 at n=1") {
    auto f2 = make_f2();
    std::vector<Learner> contenders = {rerm_learner(), constant_learner(+1)};
    auto report = sandwich_bounds(f2, 1, contenders);
    CHECK(report.n == 1);
    CHECK(report.lemma1_holds);
    CHECK(report.upper == Rat(report.optimal_max_outdeg, 2));
    CHECK(report.family_risk <= report.upper);
    CHECK(report.upper_holds);
    REQUIRE(report.learners.size() == 2);
    for (const auto& row : report.learners) {
        CHECK(row.lemma2_lower == Rat(row.induced_max_outdeg, 8));
        CHECK(row.chain_holds);
        CHECK(row.exact_risk * 4 >= Rat(row.induced_max_outdeg, 8) * 4);
    }
    CHECK(report.all_hold);
}

TEST_CASE("sandwich on an edgeless separation instance is all zeros") {
    auto f3 = make_f3(1, 11);
    auto report = sandwich_bounds(f3, 1, {rerm_learner()});
    CHECK(report.optimal_max_outdeg == 0);
    CHECK(report.upper == 0);
    CHECK(report.family_risk == 0);
    CHECK(report.all_hold);
}

TEST_CASE("Lemma 3 part 1: family risk at n = D+1 stays below 1/3") {
    auto f1 = make_f1();  // D = 1, so the optimal learner sees n = 2
    auto report = sandwich_bounds(f1, 1, {});
    CHECK(report.family_risk * 3 <= 1);
}

TEST_CASE("theorem 1 experiment at desk scale") {
    auto report = thm1_experiment(1, 40, 2024, "rerm");
    CHECK(report.m == 1);
    CHECK(report.trials == 40);
    CHECK(report.optimal_nonzero_trials == 0);
    CHECK(report.local_mean >= 0.0);
    CHECK(report.local_mean <= 1.0);
    CHECK_THROWS_AS(thm1_experiment(1, 5, 1, "optimal"), DomainError);
}

TEST_CASE("serializers emit well-formed summaries") {
    auto f2 = make_f2();
    auto d = dist_of({{{1, +1}, Rat(1)}});
    auto text = serialize_risk(exact_expected_risk(f2, constant_learner(+1), d, 1));
    CHECK(text.find("exact") != std::string::npos);
    auto sw = serialize_sandwich(sandwich_bounds(f2, 1, {rerm_learner()}));
    CHECK(sw.find("upper") != std::string::npos);
    auto t1 = serialize_thm1(thm1_experiment(1, 5, 3, "rerm"));
    CHECK(t1.find("local_mean") != std::string::npos);
}

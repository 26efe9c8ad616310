#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roig/errors.hpp"
#include "roig/fixtures.hpp"
#include "roig/risk.hpp"

using namespace roig;

namespace {

const Hypothesis& by_name(const ProblemInstance& instance, const std::string& name) {
    for (const auto& h : instance.hypotheses)
        if (h.name == name) return h;
    throw std::runtime_error("no hypothesis " + name);
}

}  // namespace

TEST_CASE("robust_loss on F1 and F2") {
    auto f1 = make_f1();
    CHECK(robust_loss(f1, by_name(f1, "h++"), 0, +1) == 0);
    CHECK(robust_loss(f1, by_name(f1, "h++"), 0, -1) == 1);
    // mixed table loses everywhere under the all-powerful U
    CHECK(robust_loss(f1, by_name(f1, "h+-"), 0, +1) == 1);

    auto f2 = make_f2();
    CHECK(robust_loss(f2, by_name(f2, "h2"), 0, +1) == 1);  // U(1)={1}, h2(1)=-1
    CHECK(robust_loss(f2, by_name(f2, "h2"), 1, +1) == 0);
    CHECK_THROWS_AS(robust_loss(f2, by_name(f2, "h2"), 9, +1), DomainError);
}

TEST_CASE("robust_risk is the exact weighted sum") {
    auto f1 = make_f1();
    DiscreteDistribution both_pos;
    both_pos.atoms = {{{0, +1}, Rat(1, 2)}, {{1, +1}, Rat(1, 2)}};
    CHECK(robust_risk(f1, by_name(f1, "h++"), both_pos) == 0);

    DiscreteDistribution mixed;
    mixed.atoms = {{{0, +1}, Rat(1, 2)}, {{1, -1}, Rat(1, 2)}};
    CHECK(robust_risk(f1, by_name(f1, "h++"), mixed) == Rat(1, 2));

    auto f2 = make_f2();
    DiscreteDistribution point_mass;
    point_mass.atoms = {{{2, +1}, Rat(1)}};
    CHECK(robust_risk(f2, by_name(f2, "h4"), point_mass) == 1);
}

TEST_CASE("empirical_robust_risk") {
    auto f1 = make_f1();
    CHECK(empirical_robust_risk(f1, by_name(f1, "h++"),
                                LabeledMultiset({{0, +1}, {0, +1}})) == 0);
    CHECK(empirical_robust_risk(f1, by_name(f1, "h++"),
                                LabeledMultiset({{0, +1}, {1, -1}})) == Rat(1, 2));

    auto f2 = make_f2();
    CHECK(empirical_robust_risk(f2, by_name(f2, "h2"),
                                LabeledMultiset({{0, +1}, {1, +1}, {2, +1}})) == Rat(1, 3));
    CHECK_THROWS_AS(empirical_robust_risk(f1, by_name(f1, "h++"), LabeledMultiset{}),
                    DomainError);
}

TEST_CASE("robust loss dominates 0-1 loss when x is its own perturbation") {
    auto f2 = make_f2();  // identity U: the two losses coincide
    for (const auto& h : f2.hypotheses)
        for (int x = 0; x < f2.num_points(); ++x)
            for (int y : {+1, -1})
                CHECK(robust_loss(f2, h, x, y) == (h.labels[x] != y ? 1 : 0));
    auto f1 = make_f1();  // x in U(x) here too: robust loss >= 0-1 loss
    for (const auto& h : f1.hypotheses)
        for (int x = 0; x < f1.num_points(); ++x)
            for (int y : {+1, -1})
                CHECK(robust_loss(f1, h, x, y) >= (h.labels[x] != y ? 1 : 0));
}

TEST_CASE("realizable_witness picks the first hypothesis in document order") {
    auto f1 = make_f1();
    auto w = realizable_witness(f1, LabeledMultiset({{0, +1}, {1, +1}}));
    REQUIRE(w.has_value());
    CHECK(f1.hypotheses[*w].name == "h++");
    CHECK_FALSE(realizable_witness(f1, LabeledMultiset({{0, +1}, {1, -1}})).has_value());
}

TEST_CASE("robustly_consistent_set") {
    auto f1 = make_f1();
    auto all_pos = robustly_consistent_set(f1, by_name(f1, "h++"));
    REQUIRE(all_pos.size() == 2);
    CHECK(all_pos[0] == LabeledExample{0, +1});
    CHECK(all_pos[1] == LabeledExample{1, +1});
    CHECK(robustly_consistent_set(f1, by_name(f1, "h+-")).empty());

    auto f2 = make_f2();
    CHECK(robustly_consistent_set(f2, by_name(f2, "h2")).size() == 3);
}

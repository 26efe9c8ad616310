#include "roig/boosting.hpp"
#include "roig/dims.hpp"
#include "roig/errors.hpp"
#include "roig/eval.hpp"
#include "roig/fixtures.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace roig;

namespace {

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw roig::ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

const DiscreteDistribution& find_dist(const ProblemInstance& instance, const std::string& name) {
    for (const auto& d : instance.distributions)
        if (d.name == name) return d;
    throw DomainError("no distribution named '" + name + "' in the instance");
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw DomainError("cannot write output file: " + out_path);
    out << text << "\n";
}

std::vector<LabeledExample> draw_sample(const ProblemInstance& instance,
                                        const DiscreteDistribution& dist, int m, uint64_t seed) {
    (void)instance;
    std::mt19937_64 rng(seed);
    std::vector<double> weights;
    for (const auto& atom : dist.atoms) weights.push_back(to_double(atom.weight));
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    std::vector<LabeledExample> sample;
    for (int i = 0; i < m; ++i) sample.push_back(dist.atoms[pick(rng)].example);
    return sample;
}

int pick_m0(const ProblemInstance& instance, int m0_flag, const DimsConfig& cfg) {
    if (m0_flag > 0) return m0_flag;
    return std::max(1, d_dimension(instance, cfg));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"global one-inclusion graph toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string instance_path, out_path, learner_name = "rerm", dist_name = "P", kind;
    std::string learner_list = "rerm,constant:+1,constant:-1,classical-oig";
    int n = 1, m = 1, trials = 2000, n_cap = 6, m0 = 0, d = 1, k = 1, cap = 64;
    uint64_t seed = 0;
    bool have_seed = false;
    double delta = 0.05;
    uint64_t exact_cap = 1000000, vertex_cap = 1000000, budget_ms = 0;

    app.add_option("--out", out_path, "write the JSON artifact here instead of stdout");
    app.add_option("--exact-cap", exact_cap, "max enumerated draws for exact risk evaluation");
    app.add_option("--vertex-cap", vertex_cap, "max graph vertices before aborting");
    app.add_option("--budget-ms", budget_ms,
                   "orientation search budget, milliseconds (calibrated to search nodes)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed for all sampled quantities");

    auto* c_graph = app.add_subcommand("graph", "build the global one-inclusion graph");
    c_graph->add_option("instance", instance_path)->required();
    c_graph->add_option("--n", n, "dataset size")->required();

    auto* c_orient = app.add_subcommand("orient", "optimal orientation of the graph");
    c_orient->add_option("instance", instance_path)->required();
    c_orient->add_option("--n", n, "dataset size")->required();

    auto* c_dims = app.add_subcommand("dims", "dimension report with witnesses");
    c_dims->add_option("instance", instance_path)->required();
    c_dims->add_option("--n-cap", n_cap, "scan cap for graph-based dimensions");

    auto* c_eval = app.add_subcommand("eval", "expected robust risk of a learner");
    c_eval->add_option("instance", instance_path)->required();
    c_eval->add_option("--learner", learner_name, "optimal | rerm | classical-oig | constant:+1 | constant:-1");
    c_eval->add_option("--dist", dist_name, "distribution name in the instance");
    c_eval->add_option("--n", n, "training sample size")->required();
    c_eval->add_option("--trials", trials, "Monte Carlo trials past the exact cap");

    auto* c_sandwich = app.add_subcommand("sandwich", "Theorem-2 bound chain report");
    c_sandwich->add_option("instance", instance_path)->required();
    c_sandwich->add_option("--n", n, "chain parameter (graph built at 2n)")->required();
    c_sandwich->add_option("--learners", learner_list, "comma-separated contender names");

    auto* c_boost = app.add_subcommand("boost", "robust alpha-Boost on a drawn sample");
    c_boost->add_option("instance", instance_path)->required();
    c_boost->add_option("--dist", dist_name);
    c_boost->add_option("--m", m, "sample size")->required();
    c_boost->add_option("--m0", m0, "weak-learner tuple size (default: the graph dimension)");
    c_boost->add_option("--delta", delta);

    auto* c_agnostic = app.add_subcommand("agnostic", "agnostic reduction on a drawn sample");
    c_agnostic->add_option("instance", instance_path)->required();
    c_agnostic->add_option("--dist", dist_name);
    c_agnostic->add_option("--m", m, "sample size")->required();
    c_agnostic->add_option("--m0", m0);
    c_agnostic->add_option("--delta", delta);

    auto* c_thm1 = app.add_subcommand("thm1", "local-vs-global separation experiment");
    c_thm1->add_option("--m", m)->required();
    c_thm1->add_option("--trials", trials);
    c_thm1->add_option("--learner", learner_name);

    auto* c_fixtures = app.add_subcommand("fixtures", "generate a fixture instance document");
    c_fixtures->add_option("--kind", kind, "example1 | example2-discrete | thm1")->required();
    c_fixtures->add_option("--m", m, "thm1 block parameter");
    c_fixtures->add_option("--d", d, "example2 effective coordinates");
    c_fixtures->add_option("--k", k, "example2 junk coordinates");
    c_fixtures->add_option("--cap", cap, "hypothesis / pattern cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    have_seed = seed_opt->count() > 0;

    OigConfig graph_cfg{static_cast<size_t>(vertex_cap)};
    OrientConfig orient_cfg;
    if (budget_ms > 0) orient_cfg.node_budget = budget_ms * 100000;
    EvalConfig eval_cfg;
    eval_cfg.exact_cap = BigInt(exact_cap);
    eval_cfg.trials = trials;
    if (have_seed) eval_cfg.seed = seed;
    DimsConfig dims_cfg;
    dims_cfg.n_cap = n_cap;
    dims_cfg.vertex_cap = vertex_cap;
    dims_cfg.node_budget = orient_cfg.node_budget;

    try {
        if (*c_graph) {
            auto instance = load_instance(instance_path);
            auto g = build_global_oig(instance, n, graph_cfg);
            emit(out_path, serialize_oig(instance, g));
        } else if (*c_orient) {
            auto instance = load_instance(instance_path);
            auto g = build_global_oig(instance, n, graph_cfg);
            auto result = optimal_orientation(g, orient_cfg);
            if (!result.optimal) throw BudgetExceeded("orientation search budget exceeded");
            emit(out_path, serialize_orientation(g, result.orientation));
        } else if (*c_dims) {
            auto instance = load_instance(instance_path);
            auto report = compute_dimensions(instance, dims_cfg);
            emit(out_path, serialize_report(instance, report));
        } else if (*c_eval) {
            auto instance = load_instance(instance_path);
            auto learner = learner_by_name(instance, learner_name, n + 1,
                                           {graph_cfg, orient_cfg});
            auto est = exact_expected_risk(instance, learner, find_dist(instance, dist_name), n,
                                           eval_cfg);
            emit(out_path, serialize_risk(est));
        } else if (*c_sandwich) {
            auto instance = load_instance(instance_path);
            std::vector<Learner> learners;
            std::stringstream names(learner_list);
            for (std::string name; std::getline(names, name, ',');)
                if (!name.empty())
                    learners.push_back(learner_by_name(instance, name, n, {graph_cfg, orient_cfg}));
            InducedConfig induced_cfg;
            induced_cfg.exact_cap = eval_cfg.exact_cap;
            induced_cfg.trials = trials;
            induced_cfg.seed = eval_cfg.seed;
            emit(out_path, serialize_sandwich(
                               sandwich_bounds(instance, n, learners, eval_cfg, induced_cfg)));
        } else if (*c_boost) {
            auto instance = load_instance(instance_path);
            if (!have_seed) throw DomainError("boost: --seed is required to draw the sample");
            auto sample = draw_sample(instance, find_dist(instance, dist_name), m, seed);
            int chosen_m0 = pick_m0(instance, m0, dims_cfg);
            auto outcome = realizable_boosted(instance, sample, chosen_m0, delta);
            nlohmann::json j = nlohmann::json::parse(serialize_boost_run(outcome.run));
            j["m0"] = chosen_m0;
            j["compression_size"] = outcome.compression.size();
            j["bound"] = outcome.bound;
            emit(out_path, j.dump(2));
        } else if (*c_agnostic) {
            auto instance = load_instance(instance_path);
            if (!have_seed) throw DomainError("agnostic: --seed is required to draw the sample");
            auto sample = draw_sample(instance, find_dist(instance, dist_name), m, seed);
            int chosen_m0 = pick_m0(instance, m0, dims_cfg);
            auto outcome = agnostic_learn(instance, sample, chosen_m0, delta);
            nlohmann::json j;
            j["m0"] = chosen_m0;
            j["empirical_risk"] = rational_string(outcome.empirical_risk);
            j["best_hypothesis_risk"] = rational_string(outcome.best_risk);
            j["bound"] = outcome.bound;
            emit(out_path, j.dump(2));
        } else if (*c_thm1) {
            if (!have_seed) throw DomainError("thm1: --seed is required");
            emit(out_path, serialize_thm1(thm1_experiment(m, trials, seed, learner_name)));
        } else if (*c_fixtures) {
            ProblemInstance instance;
            if (kind == "example1") {
                instance = make_f1();
            } else if (kind == "example2-discrete") {
                instance = example2_discrete(d, k, cap, seed);
            } else if (kind == "thm1") {
                instance = make_f3(m, seed, cap);
            } else if (kind == "f2") {
                instance = make_f2();
            } else {
                throw DomainError("unknown fixture kind: " + kind);
            }
            emit(out_path, serialize_instance(instance));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

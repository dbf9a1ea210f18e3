#include "doctest.h"

#include <cmath>

#include "ladder/engine.hpp"
#include "ladder/graph.hpp"
#include "test_support.hpp"

using namespace ladder;
using namespace ladder::testsupport;

TEST_CASE("backdoor set validity") {
    CHECK(is_valid_backdoor_set(catalog("confounding"), {"Z"}));
    CHECK_FALSE(is_valid_backdoor_set(catalog("confounding"), {}));
    CHECK(is_valid_backdoor_set(catalog("mediation"), {}));
    CHECK_FALSE(is_valid_backdoor_set(catalog("mediation"), {"M"}));  // descendant of X
    CHECK_THROWS_AS(is_valid_backdoor_set(catalog("confounding"), {"X"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_valid_backdoor_set(catalog("IV"), {"U"}), std::invalid_argument);
}

TEST_CASE("minimal adjustment sets") {
    CHECK(find_minimal_adjustment_sets(catalog("confounding")) ==
          std::vector<std::set<std::string>>{{"Z"}});
    CHECK(find_minimal_adjustment_sets(catalog("chain")) ==
          std::vector<std::set<std::string>>{{}});
    CHECK(find_minimal_adjustment_sets(catalog("frontdoor")).empty());
    CHECK(find_minimal_adjustment_sets(catalog("diamondcut")) ==
          std::vector<std::set<std::string>>{{"B"}, {"Z"}});
    CHECK(find_minimal_adjustment_sets(catalog("IV")).empty());
}

TEST_CASE("backdoor ATE estimand renders to the normal form") {
    const auto est =
        derive_estimand(catalog("confounding"), instance("confounding", QueryType::Ate));
    CHECK(render_estimand(est) == "\\sum_{Z} P(Z)*[P(Y=1|X=1,Z)-P(Y=1|X=0,Z)]");
}

TEST_CASE("required data lists the estimand leaves") {
    const auto& conf = catalog("confounding");
    auto terms = required_data(derive_estimand(conf, instance("confounding", QueryType::Ate)));
    CHECK(terms.size() == 5);  // P(Z=1) + P(Y=1|X,Z) for all 4 combos
    int marginals = 0, conditionals = 0;
    for (const auto& t : terms) {
        CHECK(t.target.value == 1);
        t.givens.empty() ? ++marginals : ++conditionals;
    }
    CHECK(marginals == 1);
    CHECK(conditionals == 4);

    auto chain_terms = required_data(
        derive_estimand(catalog("chain"), instance("chain", QueryType::MarginalProb)));
    // P(X=1), P(M=1|X=0), P(M=1|X=1), P(Y=1|M=0), P(Y=1|M=1)
    CHECK(chain_terms.size() == 5);
    for (const auto& t : chain_terms) CHECK(t.givens.size() <= 1);

    auto nie_terms = required_data(
        derive_estimand(catalog("mediation"), instance("mediation", QueryType::Nie)));
    // P(M=1|X=0), P(M=1|X=1), P(Y=1|X=0,M=0), P(Y=1|X=0,M=1)
    CHECK(nie_terms.size() == 4);
}

TEST_CASE("worked confounding instance: ATE and ATT are 0.40") {
    const auto& spec = catalog("confounding");
    const Params p = confounding_params();
    CHECK(evaluate(spec, p, derive_estimand(spec, instance("confounding", QueryType::Ate))) ==
          doctest::Approx(0.40).epsilon(1e-12));
    CHECK(evaluate(spec, p, derive_estimand(spec, instance("confounding", QueryType::Att))) ==
          doctest::Approx(0.40).epsilon(1e-12));
    CHECK(oracle(spec, p, instance("confounding", QueryType::Ate)) ==
          doctest::Approx(0.40).epsilon(1e-12));
    CHECK(oracle(spec, p, instance("confounding", QueryType::Att)) ==
          doctest::Approx(0.40).epsilon(1e-12));
}

TEST_CASE("worked frontdoor instance: interventional arms and ATE") {
    const auto& spec = catalog("frontdoor");
    const Params p = frontdoor_params();
    CHECK(interventional_prob(spec.dag, p, {{"X", 1}}, {{"Y", 1}}) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(interventional_prob(spec.dag, p, {{"X", 0}}, {{"Y", 1}}) ==
          doctest::Approx(0.35).epsilon(1e-12));
    const auto est = derive_estimand(spec, instance("frontdoor", QueryType::Ate));
    CHECK(evaluate(spec, p, est) == doctest::Approx(0.40).epsilon(1e-9));
    CHECK(oracle(spec, p, instance("frontdoor", QueryType::Ate)) ==
          doctest::Approx(0.40).epsilon(1e-12));
    bool flagged = false;
    for (const auto& f : est.flags) flagged = flagged || f == "frontdoor_adjustment";
    CHECK(flagged);
}

TEST_CASE("worked mediation instance: NDE 0.30, NIE 0.18, ATE 0.48") {
    const auto& spec = catalog("mediation");
    const Params p = mediation_params();
    const double nde =
        evaluate(spec, p, derive_estimand(spec, instance("mediation", QueryType::Nde)));
    const double nie =
        evaluate(spec, p, derive_estimand(spec, instance("mediation", QueryType::Nie)));
    const double ate =
        evaluate(spec, p, derive_estimand(spec, instance("mediation", QueryType::Ate)));
    CHECK(nde == doctest::Approx(0.30).epsilon(1e-12));
    CHECK(nie == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(ate == doctest::Approx(0.48).epsilon(1e-12));
    // No-interaction instance: the effect decomposes exactly.
    CHECK(nde + nie == doctest::Approx(ate).epsilon(1e-12));
    CHECK(oracle(spec, p, instance("mediation", QueryType::Nde)) ==
          doctest::Approx(0.30).epsilon(1e-12));
    CHECK(oracle(spec, p, instance("mediation", QueryType::Nie)) ==
          doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("chain: NIE equals the total effect and NDE is constant zero") {
    const auto& spec = catalog("chain");
    const Params p = chain_params();
    const double nie =
        evaluate(spec, p, derive_estimand(spec, instance("chain", QueryType::Nie)));
    CHECK(nie == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(oracle(spec, p, instance("chain", QueryType::Nie)) ==
          doctest::Approx(0.36).epsilon(1e-12));
    CHECK(oracle(spec, p, instance("chain", QueryType::Ate)) ==
          doctest::Approx(0.36).epsilon(1e-12));

    const auto nde = derive_estimand(spec, instance("chain", QueryType::Nde));
    CHECK(nde.expr->kind == Expr::Kind::Constant);
    CHECK(evaluate(spec, p, nde) == 0.0);
    CHECK(render_estimand(nde) == "0");
}

TEST_CASE("confounding has no mediator, so NIE is constant zero") {
    const auto& spec = catalog("confounding");
    const auto nie = derive_estimand(spec, instance("confounding", QueryType::Nie));
    CHECK(evaluate(spec, confounding_params(), nie) == 0.0);
}

TEST_CASE("worked IV instance: Wald ratio equals the complier effect") {
    const auto& spec = catalog("IV");
    const Params p = iv_params();
    const auto est = derive_estimand(spec, instance("IV", QueryType::Ate));
    CHECK(evaluate(spec, p, est) == doctest::Approx(0.36).epsilon(1e-9));
    CHECK(oracle(spec, p, instance("IV", QueryType::Ate)) ==
          doctest::Approx(0.36).epsilon(1e-9));
    bool flagged = false;
    for (const auto& f : est.flags) flagged = flagged || f == "iv_wald";
    CHECK(flagged);

    // Complier-restricted counterfactual arms: E[Y_1|c]=0.68, E[Y_0|c]=0.32.
    QueryInstance cf1 = instance("IV", QueryType::CounterfactualProb);
    cf1.do_value = 1;
    CHECK(evaluate(spec, p, derive_estimand(spec, cf1)) ==
          doctest::Approx(0.68).epsilon(1e-9));
    CHECK(oracle(spec, p, cf1) == doctest::Approx(0.68).epsilon(1e-9));
    QueryInstance cf0 = instance("IV", QueryType::CounterfactualProb);
    cf0.do_value = 0;
    CHECK(evaluate(spec, p, derive_estimand(spec, cf0)) ==
          doctest::Approx(0.32).epsilon(1e-9));
    CHECK(oracle(spec, p, cf0) == doctest::Approx(0.32).epsilon(1e-9));
}

TEST_CASE("counterfactual estimand with factual-treatment evidence") {
    const auto& conf = catalog("confounding");
    const Params p = confounding_params();
    QueryInstance cf = instance("confounding", QueryType::CounterfactualProb);
    cf.do_value = 1;
    cf.evidence = {{"X", 0}};
    const double est = evaluate(conf, p, derive_estimand(conf, cf));
    CHECK(est == doctest::Approx(oracle(conf, p, cf)).epsilon(1e-12));
    // Hand value: sum_z P(z|X=0) P(y|X=1,z) with P(z=1|X=0) = 0.3.
    CHECK(est == doctest::Approx(0.7 * 0.8 + 0.3 * 0.6).epsilon(1e-12));
}

TEST_CASE("required data is sufficient: evaluation uses only the listed terms") {
    const auto& spec = catalog("confounding");
    const Params p = confounding_params();
    const auto est = derive_estimand(spec, instance("confounding", QueryType::Ate));
    auto terms = required_data(est);
    fill_data_values(spec, p, terms);
    CHECK(evaluate(est, terms) == doctest::Approx(0.40).epsilon(1e-12));
    auto missing = terms;
    missing.pop_back();
    CHECK_THROWS_AS(evaluate(est, missing), std::runtime_error);
}

TEST_CASE("adjustment-set estimand carries a readable decision") {
    const auto& conf = catalog("confounding");
    QueryInstance q = instance("confounding", QueryType::AdjustmentSet);
    q.candidate_set = {"Z"};
    const auto est = derive_estimand(conf, q);
    CHECK(evaluate(conf, confounding_params(), est) == 1.0);
    CHECK(render_estimand(est) ==
          "{Z} is a valid backdoor adjustment set for (X, Y) and the empty set is not");
    CHECK(required_data(est).empty());

    QueryInstance q2 = instance("mediation", QueryType::AdjustmentSet);
    q2.candidate_set = {"M"};
    const auto est2 = derive_estimand(catalog("mediation"), q2);
    CHECK(evaluate(catalog("mediation"), mediation_params(), est2) == 0.0);
}

TEST_CASE("NDE + NIE = ATE on no-interaction mediation instances") {
    // theta_Y(1,m) - theta_Y(0,m) held constant in m: the natural effects
    // decompose the total effect exactly.
    const auto& spec = catalog("mediation");
    Rng rng(0xdecaf);
    for (int rep = 0; rep < 50; ++rep) {
        Params p = Params::sample(rng, spec.dag);
        const int y = spec.dag.index_of("Y");
        // Y's parents are [X, M]: bit 0 = X, bit 1 = M.
        const double delta = (static_cast<double>(rng.below(41)) - 20.0) / 100.0;
        for (int m = 0; m <= 1; ++m) {
            double base = 0.2 + static_cast<double>(rng.below(40)) / 100.0;
            p.set(y, m ? 2 : 0, base);
            p.set(y, (m ? 2 : 0) | 1, base + delta);
        }
        const double nde =
            evaluate(spec, p, derive_estimand(spec, instance("mediation", QueryType::Nde)));
        const double nie =
            evaluate(spec, p, derive_estimand(spec, instance("mediation", QueryType::Nie)));
        const double ate =
            evaluate(spec, p, derive_estimand(spec, instance("mediation", QueryType::Ate)));
        CHECK(std::fabs(nde + nie - ate) < 1e-12);
        CHECK(std::fabs(oracle(spec, p, instance("mediation", QueryType::Nde)) +
                        oracle(spec, p, instance("mediation", QueryType::Nie)) -
                        oracle(spec, p, instance("mediation", QueryType::Ate))) < 1e-12);
    }
}

TEST_CASE("non-identifiable combinations fail loudly") {
    QueryInstance att;
    att.type = QueryType::Att;
    att.graph = "IV";
    CHECK_THROWS_AS(derive_estimand(catalog("IV"), att), std::invalid_argument);
    QueryInstance mismatch;
    mismatch.type = QueryType::Ate;
    mismatch.graph = "chain";
    CHECK_THROWS_AS(derive_estimand(catalog("fork"), mismatch), std::invalid_argument);
}

TEST_CASE("vanishing Wald denominators are rejected at evaluation") {
    const auto& spec = catalog("IV");
    Params p = params_from("IV", R"({
        "Z": {"": 0.5},
        "U": {"": 0.5},
        "X": {"00": 0.4, "10": 0.4, "01": 0.7, "11": 0.7},
        "Y": {"00": 0.2, "01": 0.5, "10": 0.4, "11": 0.8}
    })");
    CHECK_THROWS_AS(evaluate(spec, p, derive_estimand(spec, instance("IV", QueryType::Ate))),
                    std::runtime_error);
}

TEST_CASE("adjustment-set answers agree with the backdoor predicate") {
    for (const auto& name :
         {"chain", "fork", "confounding", "mediation", "diamond", "diamondcut", "arrowhead"}) {
        const auto& spec = catalog(name);
        std::vector<std::string> pool;
        for (const auto& n : spec.observed_nodes())
            if (n != spec.treatment && n != spec.outcome) pool.push_back(n);
        Rng rng(fnv1a64(name) ^ 0x1111ull);
        for (size_t mask = 1; mask < (1ull << pool.size()); ++mask) {
            QueryInstance q = instance(name, QueryType::AdjustmentSet);
            for (size_t j = 0; j < pool.size(); ++j)
                if (mask & (1ull << j)) q.candidate_set.push_back(pool[j]);
            std::set<std::string> cand(q.candidate_set.begin(), q.candidate_set.end());
            const bool expected =
                is_valid_backdoor_set(spec, cand) && !is_valid_backdoor_set(spec, {});
            const Params p = Params::sample(rng, spec.dag);
            const auto est = derive_estimand(spec, q);
            CHECK(evaluate(spec, p, est) == (expected ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("backdoor adjustment reproduces interventional values wherever the treatment "
          "has no unobserved parent") {
    for (const auto& name : {"chain", "fork", "confounding", "mediation", "diamond",
                             "diamondcut", "arrowhead"}) {
        const auto& spec = catalog(name);
        Rng rng(fnv1a64(name) ^ 0x777ull);
        for (int rep = 0; rep < 25; ++rep) {
            const Params p = Params::sample(rng, spec.dag);
            const double est =
                evaluate(spec, p, derive_estimand(spec, instance(name, QueryType::Ate)));
            const double truth =
                interventional_prob(spec.dag, p, {{spec.treatment, 1}}, {{spec.outcome, 1}}) -
                interventional_prob(spec.dag, p, {{spec.treatment, 0}}, {{spec.outcome, 1}});
            CHECK(std::fabs(est - truth) < 1e-9);
        }
    }
}

TEST_CASE("oracle equivalence mini-sweep over every applicable pair") {
    // 20 admissible instances per (graph, query) pair; the acceptance suite
    // runs the full 200-instance sweep.
    for (const auto& name : catalog_names()) {
        const auto& spec = catalog(name);
        for (QueryType type : kAllQueryTypes) {
            if (!applicability(name, type)) continue;
            Rng rng(fnv1a64(name) ^ (0xbeefull + static_cast<unsigned>(type)));
            int checked = 0;
            while (checked < 20) {
                Params p = Params::sample(rng, spec.dag);
                apply_instance_constraints(p, spec, type);
                QueryInstance q = instance(name, type);
                if (type == QueryType::CounterfactualProb) {
                    q.do_value = rng.coin();
                    q.target_value = rng.coin();
                    if (name != "IV") q.evidence = {{spec.treatment, 1 - q.do_value}};
                }
                if (type == QueryType::AdjustmentSet) {
                    std::vector<std::string> pool;
                    for (const auto& n : spec.observed_nodes())
                        if (n != spec.treatment && n != spec.outcome) pool.push_back(n);
                    const auto pick = 1 + rng.below((1ull << pool.size()) - 1);
                    for (size_t j = 0; j < pool.size(); ++j)
                        if (pick & (1ull << j)) q.candidate_set.push_back(pool[j]);
                }
                if (!instance_admissible(spec, p, q)) continue;
                const double est = evaluate(spec, p, derive_estimand(spec, q));
                const double truth = oracle(spec, p, q);
                CHECK(std::fabs(est - truth) <= 1e-9);
                ++checked;
            }
        }
    }
}

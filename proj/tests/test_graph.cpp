#include "doctest.h"

#include <stdexcept>

#include "ladder/graph.hpp"
#include "ladder/model.hpp"

using namespace ladder;

TEST_CASE("relatives on the catalog graphs") {
    const auto& chain = catalog("chain");
    auto r = relatives(chain.dag, "M");
    CHECK(r.parents == std::set<std::string>{"X"});
    CHECK(r.children == std::set<std::string>{"Y"});
    CHECK(r.descendants == std::set<std::string>{"Y"});
    CHECK(r.ancestors == std::set<std::string>{"X"});

    const auto& conf = catalog("confounding");
    CHECK(relatives(conf.dag, "Z").descendants == std::set<std::string>{"X", "Y"});

    const auto& coll = catalog("collision");
    CHECK(relatives(coll.dag, "C").descendants.empty());

    CHECK_THROWS_WITH_AS(relatives(chain.dag, "Q"), doctest::Contains("Q"),
                         std::invalid_argument);
}

TEST_CASE("relatives consistency: descendants and ancestors are inverses") {
    for (const auto& name : catalog_names()) {
        const auto& spec = catalog(name);
        for (const auto& u : spec.dag.nodes()) {
            for (const auto& v : spec.dag.nodes()) {
                if (u == v) continue;
                const bool forward = relatives(spec.dag, u).descendants.count(v) > 0;
                const bool backward = relatives(spec.dag, v).ancestors.count(u) > 0;
                CHECK(forward == backward);
            }
        }
    }
}

TEST_CASE("d-separation on the canonical examples") {
    const auto& chain = catalog("chain");
    CHECK(d_separated(chain.dag, {"X"}, {"Y"}, {"M"}));
    CHECK_FALSE(d_separated(chain.dag, {"X"}, {"Y"}, {}));

    const auto& coll = catalog("collision");
    CHECK(d_separated(coll.dag, {"X"}, {"Y"}, {}));
    CHECK_FALSE(d_separated(coll.dag, {"X"}, {"Y"}, {"C"}));

    const auto& conf = catalog("confounding");
    CHECK_FALSE(d_separated(conf.dag, {"X"}, {"Y"}, {}));

    CHECK_THROWS_AS(d_separated(chain.dag, {"X"}, {"X"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(chain.dag, {"X"}, {"Y"}, {"Y"}), std::invalid_argument);
}

TEST_CASE("collider descendants unblock a path") {
    // X -> C <- Y with D below C: conditioning on D opens the collider.
    Dag dag({"X", "Y", "C", "D"}, {{"X", "C"}, {"Y", "C"}, {"C", "D"}});
    CHECK(d_separated(dag, {"X"}, {"Y"}, {}));
    CHECK_FALSE(d_separated(dag, {"X"}, {"Y"}, {"D"}));
}

TEST_CASE("mutilate removes incoming edges only") {
    const auto& conf = catalog("confounding");
    Dag cut = mutilate(conf.dag, {"X"});
    CHECK(cut.edges() == std::vector<std::pair<std::string, std::string>>{{"Z", "Y"},
                                                                          {"X", "Y"}});
    const auto& chain = catalog("chain");
    CHECK(mutilate(chain.dag, {"Y"}).edges() ==
          std::vector<std::pair<std::string, std::string>>{{"X", "M"}});
    CHECK(mutilate(chain.dag, {}) == chain.dag);
}

TEST_CASE("mutilate is idempotent") {
    for (const auto& name : catalog_names()) {
        const auto& dag = catalog(name).dag;
        const std::set<std::string> targets{catalog(name).treatment};
        CHECK(mutilate(mutilate(dag, targets), targets) == mutilate(dag, targets));
    }
}

TEST_CASE("catalog entries") {
    const auto& fd = catalog("frontdoor");
    CHECK(fd.dag.nodes() == std::vector<std::string>{"U", "X", "M", "Y"});
    CHECK(fd.dag.edges() == std::vector<std::pair<std::string, std::string>>{
                                {"U", "X"}, {"U", "Y"}, {"X", "M"}, {"M", "Y"}});
    CHECK(fd.unobserved == std::set<std::string>{"U"});
    CHECK(fd.mediators == std::set<std::string>{"M"});

    const auto& conf = catalog("confounding");
    CHECK(conf.dag.edges() == std::vector<std::pair<std::string, std::string>>{
                                  {"Z", "X"}, {"Z", "Y"}, {"X", "Y"}});
    CHECK(conf.unobserved.empty());

    const auto& coll = catalog("collision");
    CHECK(coll.treatment == "X");
    CHECK(coll.outcome == "Y");
    CHECK(coll.dag.edges() == std::vector<std::pair<std::string, std::string>>{{"X", "C"},
                                                                               {"Y", "C"}});

    CHECK(catalog_names().size() == 10);
    CHECK_THROWS_WITH_AS(catalog("triangle"), doctest::Contains("frontdoor"),
                         std::invalid_argument);
}

TEST_CASE("every catalog graph is a small DAG with a topological order") {
    for (const auto& name : catalog_names()) {
        const auto& spec = catalog(name);
        CHECK(spec.dag.size() >= 3);
        CHECK(spec.dag.size() <= 4);
        CHECK(spec.dag.topological_order().size() == static_cast<size_t>(spec.dag.size()));
        CHECK(spec.treatment != spec.outcome);
        CHECK(spec.is_observed(spec.treatment));
        CHECK(spec.is_observed(spec.outcome));
        for (const auto& m : spec.mediators) {
            CHECK(relatives(spec.dag, spec.treatment).descendants.count(m));
            CHECK(relatives(spec.dag, spec.outcome).ancestors.count(m));
        }
    }
}

TEST_CASE("cycles and malformed graphs are rejected") {
    CHECK_THROWS_AS(Dag({"A", "B"}, {{"A", "B"}, {"B", "A"}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag({"A"}, {{"A", "A"}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag({"A", "A"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Dag({"A"}, {{"A", "B"}}), std::invalid_argument);
}

TEST_CASE("catalog JSON export shape") {
    auto j = cgte_to_json(catalog("IV"));
    CHECK(j["name"] == "IV");
    CHECK(j["nodes"].size() == 4);
    CHECK(j["nodes"][0]["id"] == "Z");
    bool treatment_is_x = false;
    for (const auto& n : j["nodes"])
        if (n["role"] == "treatment") treatment_is_x = n["id"] == "X";
    CHECK(treatment_is_x);
    CHECK(j["edges"].size() == 4);
    CHECK(j["unobserved"] == nlohmann::ordered_json::array({"U"}));
}

TEST_CASE("d-separation soundness against enumeration (sampled)") {
    // Smaller sibling of the acceptance sweep: d-separation must imply exact
    // conditional independence in the enumerated distribution.
    for (const auto& name : catalog_names()) {
        const auto& spec = catalog(name);
        Rng rng(fnv1a64(name) ^ 0x5eedull);
        for (int rep = 0; rep < 50; ++rep) {
            Params params = Params::sample(rng, spec.dag);
            const auto& nodes = spec.dag.nodes();
            for (size_t i = 0; i < nodes.size(); ++i) {
                for (size_t j = 0; j < nodes.size(); ++j) {
                    if (i == j) continue;
                    std::vector<std::string> rest;
                    for (size_t k = 0; k < nodes.size(); ++k)
                        if (k != i && k != j) rest.push_back(nodes[k]);
                    for (size_t mask = 0; mask < (1ull << rest.size()); ++mask) {
                        std::set<std::string> s;
                        for (size_t b = 0; b < rest.size(); ++b)
                            if (mask & (1ull << b)) s.insert(rest[b]);
                        if (!d_separated(spec.dag, {nodes[i]}, {nodes[j]}, s)) continue;
                        for (size_t vals = 0; vals < (2ull << s.size()); ++vals) {
                            Assignment given_s;
                            size_t b = 0;
                            for (const auto& sn : s) given_s[sn] = (vals >> b++) & 1 ? 1 : 0;
                            Assignment given_bs = given_s;
                            given_bs[nodes[j]] = (vals >> b) & 1 ? 1 : 0;
                            const double lhs = prob(spec.dag, params, {{nodes[i], 1}}, given_bs);
                            const double rhs = prob(spec.dag, params, {{nodes[i], 1}}, given_s);
                            CHECK(std::abs(lhs - rhs) < 1e-12);
                        }
                    }
                }
            }
        }
    }
}

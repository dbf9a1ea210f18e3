#include "doctest.h"

#include <regex>

#include "ladder/graph.hpp"
#include "ladder/verbalize.hpp"
#include "test_support.hpp"

using namespace ladder;
using namespace ladder::testsupport;

namespace {

DataTerm term(const char* target, std::vector<std::pair<const char*, int>> givens, double value) {
    DataTerm t;
    t.target = {target, 1, false};
    for (const auto& [n, v] : givens) t.givens.push_back({n, v, false});
    t.value = value;
    return t;
}

int pool_index_of(const std::vector<ConceptForms>& pool, const std::string& overall) {
    for (size_t i = 0; i < pool.size(); ++i)
        if (pool[i].overall == overall) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST_CASE("data sentences match the reference phrasing byte for byte") {
    const auto& registry = StoryRegistry::builtin();
    const Story& kidney = registry.by_id("kidney_stone");
    CHECK(render_data_sentence(term("Y", {}, 0.60), kidney) ==
          "The overall probability of recovery is 60%.");
    CHECK(render_data_sentence(term("Y", {{"Z", 0}}, 0.70), kidney) ==
          "For patients who have small kidney stones, the probability of recovery is 70%.");
}

TEST_CASE("conditional sentences join multiple conditions with 'and'") {
    const auto& registry = StoryRegistry::builtin();
    const Story& kidney = registry.by_id("kidney_stone");
    CHECK(render_data_sentence(term("Y", {{"X", 1}, {"Z", 0}}, 0.801), kidney) ==
          "For patients who receive treatment and patients who have small kidney stones, the "
          "probability of recovery is 80.1%.");
}

TEST_CASE("percent formatting is grid-aware and parses back exactly") {
    CHECK(format_percent(0.60) == "60%");
    CHECK(format_percent(0.07) == "7%");
    CHECK(format_percent(0.661) == "66.1%");
    CHECK(format_percent(quantize_to_percent(0.66123)) == "66.1%");
    CHECK(parse_percent("60%") == doctest::Approx(0.60).epsilon(1e-12));
    for (int tenths = 1; tenths < 1000; ++tenths) {
        const double v = static_cast<double>(tenths) / 1000.0;
        const std::string s = format_percent(v);
        CHECK(format_percent(parse_percent(s)) == s);
    }
}

TEST_CASE("graph text follows the direct-effect template") {
    const auto& registry = StoryRegistry::builtin();
    const Story& exam = registry.by_id("encouragement_exam");
    CHECK(render_graph_text(catalog("mediation"), exam) ==
          "Parental encouragement has a direct effect on studying habit and exam score. "
          "Studying habit has a direct effect on exam score.");

    const Story& fd = registry.by_id("genotype_smoking");
    const std::string text = render_graph_text(catalog("frontdoor"), fd);
    CHECK(text.find("Genotype has a direct effect on smoking and lung cancer.") == 0);
    CHECK(text.find("Genotype is unobserved.") != std::string::npos);
}

TEST_CASE("anti-commonsensical transforms reproduce the reference sentences") {
    const auto& registry = StoryRegistry::builtin();

    // Treatment replacement on the mediation story.
    const int swim = pool_index_of(registry.irrelevant_treatments(), "ability to swim");
    REQUIRE(swim >= 0);
    const Story anti_exam =
        apply_anti_commonsensical(registry.by_id("encouragement_exam"), 2, swim, registry);
    CHECK(render_graph_text(catalog("mediation"), anti_exam) ==
          "Ability to swim has a direct effect on studying habit and exam score. "
          "Studying habit has a direct effect on exam score.");

    // Outcome replacement on the admission story.
    const int peanut = pool_index_of(registry.unusual_outcomes(), "peanut allergy");
    REQUIRE(peanut >= 0);
    const Story anti_adm =
        apply_anti_commonsensical(registry.by_id("berkeley_admission"), 1, peanut, registry);
    CHECK(render_graph_text(catalog("confounding"), anti_adm) ==
          "Gender has a direct effect on department competitiveness and peanut allergy. "
          "Department competitiveness has a direct effect on peanut allergy.");
}

TEST_CASE("nonsensical rebinding walks the invented word list") {
    const auto& registry = StoryRegistry::builtin();
    const Story nonsense = apply_nonsensical(registry.by_id("education_salary"), 0, registry);
    CHECK(render_graph_text(catalog("chain"), nonsense) ==
          "Ziblo has a direct effect on truq. Truq has a direct effect on fyze.");
    CHECK(nonsense.alignment == Alignment::Nonsensical);
}

TEST_CASE("nonsense words are deduplicated and distinct per story") {
    const auto& registry = StoryRegistry::builtin();
    const auto& words = registry.nonsense_words();
    CHECK(words.size() == 99);  // the printed list repeats one word
    for (size_t offset : {0ull, 17ull, 98ull}) {
        const Story s = apply_nonsensical(registry.by_id("genotype_smoking"),
                                          static_cast<int>(offset), registry);
        std::set<std::string> names;
        for (const auto& [node, forms] : s.bindings) names.insert(forms.overall);
        CHECK(names.size() == s.bindings.size());
    }
}

TEST_CASE("transform_alignment is deterministic given the stream and pure on inputs") {
    const auto& registry = StoryRegistry::builtin();
    const Story& base = registry.by_id("kidney_stone");
    Rng a(5), b(5), c(6);
    const Story s1 = transform_alignment(base, Alignment::AntiCommonsensical, a, registry);
    const Story s2 = transform_alignment(base, Alignment::AntiCommonsensical, b, registry);
    const Story s3 = transform_alignment(base, Alignment::AntiCommonsensical, c, registry);
    CHECK(s1.bindings.at("Y").overall == s2.bindings.at("Y").overall);
    CHECK(s1.bindings.at("X").overall == s2.bindings.at("X").overall);
    CHECK((s1.bindings.at("Y").overall != s3.bindings.at("Y").overall ||
           s1.bindings.at("X").overall != s3.bindings.at("X").overall));
    // Identity transform.
    Rng d(7);
    const Story same = transform_alignment(base, Alignment::Commonsensical, d, registry);
    CHECK(same.bindings.at("Y").overall == base.bindings.at("Y").overall);
    // Non-commonsensical inputs are rejected.
    Rng e(8);
    CHECK_THROWS_AS(transform_alignment(s1, Alignment::Nonsensical, e, registry),
                    std::invalid_argument);
}

TEST_CASE("question templates mention treatment and outcome for every query type") {
    const auto& registry = StoryRegistry::builtin();
    for (const auto& name : catalog_names()) {
        const auto& spec = catalog(name);
        for (QueryType type : kAllQueryTypes) {
            if (!applicability(name, type)) continue;
            for (const Story* story : registry.stories_for(name)) {
                QueryInstance q = instance(name, type);
                if (type == QueryType::AdjustmentSet) {
                    for (const auto& n : spec.observed_nodes())
                        if (n != spec.treatment && n != spec.outcome) {
                            q.candidate_set = {n};
                            break;
                        }
                }
                for (bool neg : {false, true}) {
                    q.direction_negated = neg;
                    if (type == QueryType::CounterfactualProb) q.target_value = neg ? 0 : 1;
                    const std::string text = render_question(spec, q, *story);
                    const auto& fx = story->forms(spec.treatment);
                    const auto& fy = story->forms(spec.outcome);
                    const std::string lower_text = [&] {
                        std::string t = text;
                        t[0] = static_cast<char>(std::tolower(t[0]));
                        return t;
                    }();
                    auto drop_if = [](const std::string& s) {
                        return s.rfind("if ", 0) == 0 ? s.substr(3) : s;
                    };
                    const bool has_x = lower_text.find(fx.overall) != std::string::npos ||
                                       text.find(fx.noun[1]) != std::string::npos ||
                                       text.find(drop_if(fx.cond[0])) != std::string::npos ||
                                       text.find(drop_if(fx.cond[1])) != std::string::npos ||
                                       text.find(fx.attr[1]) != std::string::npos;
                    const bool has_y = lower_text.find(fy.overall) != std::string::npos ||
                                       text.find(fy.noun[1]) != std::string::npos ||
                                       text.find(fy.noun[0]) != std::string::npos ||
                                       text.find(fy.sent[0]) != std::string::npos ||
                                       text.find(fy.sent[1]) != std::string::npos;
                    CHECK_MESSAGE(has_x, name, "/", query_type_name(type), ": ", text);
                    CHECK_MESSAGE(has_y, name, "/", query_type_name(type), ": ", text);
                }
            }
        }
    }
}

TEST_CASE("question templates follow the reference phrasings") {
    const auto& registry = StoryRegistry::builtin();
    const Story& kidney = registry.by_id("kidney_stone");
    const auto& conf = catalog("confounding");

    QueryInstance cond = instance("confounding", QueryType::CondProb);
    CHECK(render_question(conf, cond, kidney) ==
          "Is the chance of recovery larger when observing treatment?");

    QueryInstance att = instance("confounding", QueryType::Att);
    CHECK(render_question(conf, att, kidney) ==
          "For patients who receive treatment, would it be more likely to see recovery if the "
          "patient had not received treatment?");

    QueryInstance adj = instance("confounding", QueryType::AdjustmentSet);
    adj.candidate_set = {"Z"};
    const std::string adj_text = render_question(conf, adj, kidney);
    CHECK(adj_text.find("case by case according to kidney stone size") != std::string::npos);
    CHECK(adj_text.find("look directly at how treatment correlates with recovery in general") !=
          std::string::npos);

    QueryInstance cf = instance("confounding", QueryType::CounterfactualProb);
    CHECK(render_question(conf, cf, kidney) ==
          "Can we infer that the patient recovers had it been that the patient had received "
          "treatment instead of the patient had not received treatment?");

    QueryInstance marg = instance("confounding", QueryType::MarginalProb);
    CHECK(render_question(conf, marg, kidney) ==
          "Regardless of treatment, is the overall likelihood of recovery greater than chance?");
    marg.direction_negated = true;
    CHECK(render_question(conf, marg, kidney) ==
          "Regardless of treatment, is the overall likelihood of recovery smaller than chance?");
}

TEST_CASE("explanations carry exactly five steps and the verdict sentence") {
    const auto& spec = catalog("confounding");
    const Params p = confounding_params();
    QueryInstance q = instance("confounding", QueryType::Ate);
    const Estimand est = derive_estimand(spec, q);
    auto terms = required_data(est);
    fill_data_values(spec, p, terms);
    for (auto& t : terms) t.value = parse_percent(format_percent(t.value));
    const double value = evaluate(spec, p, est);
    const std::string text =
        render_explanation({spec, q, est, terms, value, Answer::Yes});

    std::regex step_re("Step [0-9]:");
    const auto begin = std::sregex_iterator(text.begin(), text.end(), step_re);
    CHECK(std::distance(begin, std::sregex_iterator()) == 5);
    const std::string tail =
        "≈ 0.4000. Since the estimate for the estimand is 0.4000, the overall answer to "
        "the question is Yes.";
    REQUIRE(text.size() > tail.size());
    CHECK(text.substr(text.size() - tail.size()) == tail);
    CHECK(text.find("Step 3: Derive the estimand: ") != std::string::npos);
    CHECK(text.find(render_estimand(est)) != std::string::npos);
}

TEST_CASE("round trip: a regex parser recovers every rendered percentage") {
    const auto& registry = StoryRegistry::builtin();
    const auto& spec = catalog("confounding");
    Rng rng(31);
    const Params p = Params::sample(rng, spec.dag);
    const Estimand est = derive_estimand(spec, instance("confounding", QueryType::Ate));
    auto terms = required_data(est);
    fill_data_values(spec, p, terms);
    for (auto& t : terms) t.value = parse_percent(format_percent(t.value));
    const std::string text = render_data_text(terms, registry.by_id("kidney_stone"));

    std::regex pct_re("([0-9]+(\\.[0-9])?)%");
    std::vector<std::string> found;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pct_re);
         it != std::sregex_iterator(); ++it)
        found.push_back(it->str());
    REQUIRE(found.size() == terms.size());
    for (size_t i = 0; i < terms.size(); ++i) {
        CHECK(found[i] == format_percent(terms[i].value));
        CHECK(parse_percent(found[i]) == terms[i].value);
    }
}

TEST_CASE("story registry JSON round trip") {
    const auto& registry = StoryRegistry::builtin();
    const StoryRegistry again = StoryRegistry::from_json(registry.to_json());
    CHECK(again.by_id("kidney_stone").forms("Y").noun[1] == "recovery");
    CHECK(again.nonsense_words() == registry.nonsense_words());
    // Every catalog graph has at least two stories.
    for (const auto& name : catalog_names()) CHECK(registry.stories_for(name).size() >= 2);
    CHECK_THROWS_WITH_AS(registry.by_id("kidney_stone").forms("Q"), doctest::Contains("Q"),
                         std::invalid_argument);
}

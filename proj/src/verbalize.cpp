#include "ladder/verbalize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ladder {

std::string alignment_name(Alignment a) {
    switch (a) {
        case Alignment::Commonsensical: return "commonsensical";
        case Alignment::AntiCommonsensical: return "anti_commonsensical";
        case Alignment::Nonsensical: return "nonsensical";
    }
    throw std::logic_error("alignment_name: bad enum");
}

Alignment alignment_from(const std::string& name) {
    if (name == "commonsensical") return Alignment::Commonsensical;
    if (name == "anti_commonsensical") return Alignment::AntiCommonsensical;
    if (name == "nonsensical") return Alignment::Nonsensical;
    throw std::invalid_argument("unknown alignment '" + name + "'");
}

const ConceptForms& Story::forms(const std::string& node) const {
    auto it = bindings.find(node);
    if (it == bindings.end())
        throw std::invalid_argument("story '" + id + "' has no binding for node '" + node + "'");
    return it->second;
}

bool Story::compatible_with(const std::string& graph) const {
    return std::find(graphs.begin(), graphs.end(), graph) != graphs.end();
}

namespace {

ConceptForms forms_from_json(const nlohmann::json& j) {
    ConceptForms f;
    f.overall = j.at("overall").get<std::string>();
    auto pair = [&](const char* key, std::array<std::string, 2>& out) {
        const auto& a = j.at(key);
        if (!a.is_array() || a.size() != 2)
            throw std::invalid_argument(std::string("story form '") + key +
                                        "' must be a [value0, value1] pair");
        out[0] = a[0].get<std::string>();
        out[1] = a[1].get<std::string>();
    };
    pair("noun", f.noun);
    pair("sent", f.sent);
    pair("attr", f.attr);
    pair("cond", f.cond);
    return f;
}

nlohmann::ordered_json forms_to_json(const ConceptForms& f) {
    nlohmann::ordered_json j;
    j["overall"] = f.overall;
    j["noun"] = {f.noun[0], f.noun[1]};
    j["sent"] = {f.sent[0], f.sent[1]};
    j["attr"] = {f.attr[0], f.attr[1]};
    j["cond"] = {f.cond[0], f.cond[1]};
    return j;
}

std::string capitalize(std::string text) {
    if (!text.empty() && text[0] >= 'a' && text[0] <= 'z')
        text[0] = static_cast<char>(text[0] - 'a' + 'A');
    return text;
}

// "A", "A and B", "A, B and C"
std::string join_and(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += i + 1 == items.size() ? " and " : ", ";
        out += items[i];
    }
    return out;
}

std::string strip_if(const std::string& cond_clause) {
    if (cond_clause.rfind("if ", 0) == 0) return cond_clause.substr(3);
    return cond_clause;
}

}  // namespace

StoryRegistry StoryRegistry::from_json(const nlohmann::json& j) {
    StoryRegistry reg;
    for (const auto& sj : j.at("stories")) {
        Story s;
        s.id = sj.at("id").get<std::string>();
        s.alignment = alignment_from(sj.at("alignment").get<std::string>());
        for (const auto& g : sj.at("graphs")) s.graphs.push_back(g.get<std::string>());
        for (const auto& [node, forms] : sj.at("bindings").items())
            s.bindings[node] = forms_from_json(forms);
        for (const auto& g : s.graphs) {
            const auto& spec = catalog(g);
            for (const auto& n : spec.dag.nodes())
                if (!s.bindings.count(n))
                    throw std::invalid_argument("story '" + s.id + "' misses node '" + n +
                                                "' of graph '" + g + "'");
        }
        reg.stories_.push_back(std::move(s));
    }
    for (const auto& cj : j.at("unusual_outcomes"))
        reg.unusual_outcomes_.push_back(forms_from_json(cj));
    for (const auto& cj : j.at("irrelevant_treatments"))
        reg.irrelevant_treatments_.push_back(forms_from_json(cj));
    for (const auto& w : j.at("nonsense_words")) {
        std::string word = w.get<std::string>();
        if (std::find(reg.nonsense_words_.begin(), reg.nonsense_words_.end(), word) ==
            reg.nonsense_words_.end())
            reg.nonsense_words_.push_back(std::move(word));
    }
    if (reg.stories_.empty()) throw std::invalid_argument("story registry is empty");
    return reg;
}

nlohmann::ordered_json StoryRegistry::to_json() const {
    nlohmann::ordered_json j;
    j["stories"] = nlohmann::ordered_json::array();
    for (const auto& s : stories_) {
        nlohmann::ordered_json sj;
        sj["id"] = s.id;
        sj["alignment"] = alignment_name(s.alignment);
        sj["graphs"] = s.graphs;
        sj["bindings"] = nlohmann::ordered_json::object();
        for (const auto& [node, forms] : s.bindings) sj["bindings"][node] = forms_to_json(forms);
        j["stories"].push_back(std::move(sj));
    }
    j["unusual_outcomes"] = nlohmann::ordered_json::array();
    for (const auto& f : unusual_outcomes_) j["unusual_outcomes"].push_back(forms_to_json(f));
    j["irrelevant_treatments"] = nlohmann::ordered_json::array();
    for (const auto& f : irrelevant_treatments_)
        j["irrelevant_treatments"].push_back(forms_to_json(f));
    j["nonsense_words"] = nonsense_words_;
    return j;
}

std::vector<const Story*> StoryRegistry::stories_for(const std::string& graph) const {
    std::vector<const Story*> out;
    for (const auto& s : stories_)
        if (s.compatible_with(graph)) out.push_back(&s);
    return out;
}

const Story& StoryRegistry::by_id(const std::string& id) const {
    for (const auto& s : stories_)
        if (s.id == id) return s;
    throw std::invalid_argument("unknown story '" + id + "'");
}

std::string render_graph_text(const CgteSpec& spec, const Story& story) {
    std::ostringstream out;
    bool first = true;
    for (int v : spec.dag.topological_order()) {
        if (spec.dag.children(v).empty()) continue;
        const auto& forms = story.forms(spec.dag.name(v));
        std::vector<std::string> kids;
        for (int c : spec.dag.children(v)) kids.push_back(story.forms(spec.dag.name(c)).overall);
        if (!first) out << " ";
        out << capitalize(forms.overall) << " has a direct effect on " << join_and(kids) << ".";
        first = false;
    }
    for (const auto& n : spec.dag.nodes()) {
        if (spec.is_observed(n)) continue;
        out << " " << capitalize(story.forms(n).overall) << " is unobserved.";
    }
    return out.str();
}

double quantize_to_percent(double value) {
    return static_cast<double>(std::llround(value * 1000.0)) / 1000.0;
}

std::string format_percent(double value) {
    const long long tenths = std::llround(value * 1000.0);
    std::ostringstream out;
    if (tenths % 10 == 0) {
        out << tenths / 10 << "%";
    } else {
        out << tenths / 10 << "." << std::abs(tenths % 10) << "%";
    }
    return out.str();
}

double parse_percent(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.back() == '%') body.pop_back();
    size_t pos = 0;
    double pct = std::stod(body, &pos);
    if (pos != body.size()) throw std::invalid_argument("bad percentage '" + text + "'");
    return pct / 100.0;
}

std::string render_data_sentence(const DataTerm& term, const Story& story) {
    if (term.value < 0.0) throw std::invalid_argument("data term has no value");
    const std::string pct = format_percent(term.value);
    std::ostringstream out;
    if (term.givens.empty()) {
        out << "The overall probability of " << story.forms(term.target.node).noun[1] << " is "
            << pct << ".";
        return out.str();
    }
    std::vector<std::string> conds;
    for (const auto& g : term.givens)
        conds.push_back(story.forms(g.node).attr[static_cast<size_t>(g.value)]);
    out << "For " << join_and(conds) << ", the probability of "
        << story.forms(term.target.node).noun[1] << " is " << pct << ".";
    return out.str();
}

std::string render_data_text(const std::vector<DataTerm>& terms, const Story& story) {
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " ";
        out += render_data_sentence(terms[i], story);
    }
    return out;
}

std::string render_question(const CgteSpec& spec, const QueryInstance& qinst,
                            const Story& story) {
    const ConceptForms& fx = story.forms(spec.treatment);
    const ConceptForms& fy = story.forms(spec.outcome);
    const bool neg = qinst.direction_negated;
    std::ostringstream out;
    switch (qinst.type) {
        case QueryType::MarginalProb:
            out << "Regardless of " << fx.overall << ", is the overall likelihood of "
                << fy.noun[1] << " " << (neg ? "smaller" : "greater") << " than chance?";
            break;
        case QueryType::CondProb:
            out << "Is the chance of " << fy.noun[1] << " " << (neg ? "smaller" : "larger")
                << " when observing " << fx.noun[1] << "?";
            break;
        case QueryType::Ate:
            out << "Will " << fx.noun[1] << " " << (neg ? "decrease" : "increase")
                << " the chance of " << fy.noun[1] << "?";
            break;
        case QueryType::AdjustmentSet: {
            std::vector<std::string> cand;
            for (const auto& n : qinst.candidate_set) cand.push_back(story.forms(n).overall);
            const std::string case_by_case = "We look at how " + fx.overall +
                                             " correlates with " + fy.overall +
                                             " case by case according to " + join_and(cand) + ".";
            const std::string directly = "We look directly at how " + fx.overall +
                                         " correlates with " + fy.overall + " in general.";
            out << "To understand how " << fx.overall << " affects " << fy.overall
                << ", is it more correct to use the Method 1 than Method 2? Method 1: "
                << (neg ? directly : case_by_case) << " Method 2: "
                << (neg ? case_by_case : directly);
            break;
        }
        case QueryType::ColliderBias: {
            const ConceptForms& fc = story.forms("C");
            out << "If we look only at " << fc.attr[1] << ", does observing " << fx.noun[1]
                << " make " << fy.noun[1] << " " << (neg ? "less" : "more") << " likely?";
            break;
        }
        case QueryType::ExplainingAway: {
            const ConceptForms& fc = story.forms("C");
            out << "For " << fc.attr[1] << ", does the chance of " << fy.noun[1] << " "
                << (neg ? "decrease" : "increase") << " when observing " << fx.noun[1] << "?";
            break;
        }
        case QueryType::CounterfactualProb: {
            if (spec.name == "IV")
                out << "For those whose " << fx.overall << " changes with "
                    << story.forms("Z").overall << ", can we infer that ";
            else
                out << "Can we infer that ";
            out << fy.sent[static_cast<size_t>(qinst.target_value)] << " had it been that "
                << strip_if(fx.cond[static_cast<size_t>(qinst.do_value)]) << " instead of "
                << strip_if(fx.cond[static_cast<size_t>(1 - qinst.do_value)]) << "?";
            break;
        }
        case QueryType::Att:
            out << "For " << fx.attr[1] << ", would it be " << (neg ? "less" : "more")
                << " likely to see " << fy.noun[1] << " " << fx.cond[0] << "?";
            break;
        case QueryType::Nde: {
            if (spec.mediators.empty()) {
                out << "If we disregard any effect through intermediate variables, would "
                    << fx.noun[1] << " still " << (neg ? "negatively" : "positively")
                    << " affect " << fy.noun[1] << "?";
            } else {
                std::vector<std::string> meds;
                for (const auto& m : spec.mediators) meds.push_back(story.forms(m).overall);
                out << "If we disregard the mediation effect through " << join_and(meds)
                    << ", would " << fx.noun[1] << " still "
                    << (neg ? "negatively" : "positively") << " affect " << fy.noun[1] << "?";
            }
            break;
        }
        case QueryType::Nie: {
            std::vector<std::string> meds;
            for (const auto& m : spec.mediators) meds.push_back(story.forms(m).overall);
            out << "Does " << fx.overall << " " << (neg ? "negatively" : "positively")
                << " affect " << fy.overall << " through " << join_and(meds) << "?";
            break;
        }
    }
    return capitalize(out.str());
}

namespace {

std::string format_probability(double v) {
    const long long tenths = std::llround(v * 1000.0);
    char buf[32];
    if (tenths % 10 == 0)
        std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(tenths) / 1000.0);
    else
        std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(tenths) / 1000.0);
    return buf;
}

std::string data_list(const std::vector<DataTerm>& data) {
    std::string out;
    for (size_t i = 0; i < data.size(); ++i) {
        if (i) out += "; ";
        out += render_data_term_symbol(data[i]) + "=" + format_probability(data[i].value);
    }
    return out.empty() ? "none" : out;
}

// Substituted arithmetic of step 5: the estimand with every atom replaced by
// its (displayed) value, summations expanded.
std::string render_substituted(const Expr& e, std::map<std::string, int>& env,
                               const std::map<std::string, double>& table);

std::string substituted_wrap(const Expr& e, std::map<std::string, int>& env,
                             const std::map<std::string, double>& table) {
    const bool composite = e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub ||
                           e.kind == Expr::Kind::SumOver;
    const std::string body = render_substituted(e, env, table);
    return composite ? "[" + body + "]" : body;
}

std::string render_substituted(const Expr& e, std::map<std::string, int>& env,
                               const std::map<std::string, double>& table) {
    switch (e.kind) {
        case Expr::Kind::Atom: {
            std::vector<std::pair<std::string, int>> g;
            for (const auto& l : e.givens)
                g.emplace_back(l.node, l.bound ? env.at(l.node) : l.value);
            std::sort(g.begin(), g.end());
            std::string key = e.target.node + "=1|";
            for (const auto& [n, v] : g) key += n + "=" + std::to_string(v) + ",";
            double v = table.at(key);
            const int tv = e.target.bound ? env.at(e.target.node) : e.target.value;
            return format_probability(tv == 1 ? v : 1.0 - v);
        }
        case Expr::Kind::Constant:
            return format_probability(e.constant);
        case Expr::Kind::Add: {
            std::string out;
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += " + ";
                out += render_substituted(*e.args[i], env, table);
            }
            return out;
        }
        case Expr::Kind::Sub:
            return render_substituted(*e.args[0], env, table) + " - " +
                   substituted_wrap(*e.args[1], env, table);
        case Expr::Kind::Mul: {
            std::string out;
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += "*";
                out += substituted_wrap(*e.args[i], env, table);
            }
            return out;
        }
        case Expr::Kind::Div:
            return substituted_wrap(*e.args[0], env, table) + "/" +
                   substituted_wrap(*e.args[1], env, table);
        case Expr::Kind::SumOver: {
            std::string out;
            const size_t n = e.sum_vars.size();
            for (size_t mask = 0; mask < (1ull << n); ++mask) {
                for (size_t j = 0; j < n; ++j) env[e.sum_vars[j]] = (mask >> j) & 1 ? 1 : 0;
                if (mask) out += " + ";
                out += render_substituted(*e.args[0], env, table);
            }
            for (const auto& v : e.sum_vars) env.erase(v);
            return out;
        }
    }
    throw std::logic_error("render_substituted: bad kind");
}

}  // namespace

std::string render_explanation(const ExplanationInput& in) {
    std::ostringstream out;
    std::string edges;
    for (const auto& [from, to] : in.spec.dag.edges()) {
        if (!edges.empty()) edges += ",";
        edges += from + "->" + to;
    }
    const std::string estimand_text = render_estimand(in.estimand);
    char value4[32];
    std::snprintf(value4, sizeof value4, "%.4f", in.value);

    out << "Step 1: Extract the causal graph: The causal graph expressed in the context is: \""
        << edges << "\".\n";
    out << "Step 2: Identify the query type and its symbolic expression: The query type of the "
           "above question is \""
        << query_type_name(in.qinst.type) << "\", and its symbolic expression is \""
        << symbolic_form(in.qinst.type) << "\".\n";
    out << "Step 3: Derive the estimand: Based on the graph structure and causal query, the "
           "question can be simplified into estimand \""
        << estimand_text << "\".\n";
    out << "Step 4: Collect all the available data: The available data are: \""
        << data_list(in.data) << "\".\n";

    std::map<std::string, double> table;
    for (const auto& t : in.data) {
        std::vector<std::pair<std::string, int>> g;
        for (const auto& l : t.givens) g.emplace_back(l.node, l.value);
        std::sort(g.begin(), g.end());
        std::string key = t.target.node + "=1|";
        for (const auto& [n, v] : g) key += n + "=" + std::to_string(v) + ",";
        table[key] = t.value;
    }
    std::map<std::string, int> env;
    std::string substituted = in.estimand.text_override
                                  ? format_probability(in.value)
                                  : render_substituted(*in.estimand.expr, env, table);
    out << "Step 5: Solve for the estimand: Plug in the available data into the estimand: "
        << substituted << " ≈ " << value4
        << ". Since the estimate for the estimand is " << value4
        << ", the overall answer to the question is "
        << (in.answer == Answer::Yes ? "Yes" : "No") << ".";
    return out.str();
}

Story transform_alignment(const Story& story, Alignment level, Rng& rng,
                          const StoryRegistry& registry) {
    if (level == Alignment::Commonsensical) return story;
    if (story.alignment != Alignment::Commonsensical)
        throw std::invalid_argument("transform_alignment requires a commonsensical story");
    if (level == Alignment::AntiCommonsensical) {
        const int action = rng.coin() + 1;
        const auto& pool =
            action == 1 ? registry.unusual_outcomes() : registry.irrelevant_treatments();
        if (pool.empty()) throw std::runtime_error("alignment transform pool exhausted");
        const int pick = static_cast<int>(rng.below(pool.size()));
        return apply_anti_commonsensical(story, action, pick, registry);
    }
    const auto& words = registry.nonsense_words();
    if (words.size() < story.bindings.size())
        throw std::runtime_error("nonsense word pool exhausted");
    const int offset = static_cast<int>(rng.below(words.size()));
    return apply_nonsensical(story, offset, registry);
}

Story apply_anti_commonsensical(const Story& story, int action, int pool_index,
                                const StoryRegistry& registry) {
    const auto& pool =
        action == 1 ? registry.unusual_outcomes() : registry.irrelevant_treatments();
    Story out = story;
    out.alignment = Alignment::AntiCommonsensical;
    const std::string node = action == 1 ? "Y" : "X";
    out.bindings[node] = pool.at(static_cast<size_t>(pool_index) % pool.size());
    return out;
}

Story apply_nonsensical(const Story& story, int word_offset, const StoryRegistry& registry) {
    const auto& words = registry.nonsense_words();
    Story out = story;
    out.alignment = Alignment::Nonsensical;
    // Assign consecutive distinct words in the graph's node order so the
    // rebinding is deterministic given the offset.
    const auto& spec = catalog(story.graphs.front());
    size_t k = 0;
    for (const auto& node : spec.dag.nodes()) {
        if (!out.bindings.count(node)) continue;
        const std::string& w = words[(static_cast<size_t>(word_offset) + k) % words.size()];
        ConceptForms f;
        f.overall = w;
        f.noun = {"not being " + w, "being " + w};
        f.sent = {"it is not " + w, "it is " + w};
        f.attr = {"those who are not " + w, "those who are " + w};
        f.cond = {"if it had not been " + w, "if it had been " + w};
        out.bindings[node] = std::move(f);
        ++k;
    }
    return out;
}

}  // namespace ladder

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ladder/engine.hpp"
#include "ladder/graph.hpp"
#include "ladder/query.hpp"
#include "ladder/rng.hpp"

namespace ladder {

enum class Alignment { Commonsensical, AntiCommonsensical, Nonsensical };

std::string alignment_name(Alignment a);
Alignment alignment_from(const std::string& name);

// The five grammatical forms of one bound concept, indexed by binary value.
//   overall: "the recovery status"-style variable name
//   noun:    "recovery" / "no recovery"
//   sent:    "the patient recovers" / "the patient does not recover"
//   attr:    "patients who recover" / "patients who do not recover"
//   cond:    "if the patient had recovered" / "... had not recovered"
struct ConceptForms {
    std::string overall;
    std::array<std::string, 2> noun;
    std::array<std::string, 2> sent;
    std::array<std::string, 2> attr;
    std::array<std::string, 2> cond;
};

struct Story {
    std::string id;
    Alignment alignment = Alignment::Commonsensical;
    std::vector<std::string> graphs;  // compatible catalog keys
    std::map<std::string, ConceptForms> bindings;

    const ConceptForms& forms(const std::string& node) const;  // throws naming the node
    bool compatible_with(const std::string& graph) const;
};

// Story registry plus the anti-commonsensical replacement pools and the
// nonsense word list.
class StoryRegistry {
public:
    static const StoryRegistry& builtin();
    static StoryRegistry from_json(const nlohmann::json& j);

    std::vector<const Story*> stories_for(const std::string& graph) const;
    const Story& by_id(const std::string& id) const;

    const std::vector<ConceptForms>& unusual_outcomes() const { return unusual_outcomes_; }
    const std::vector<ConceptForms>& irrelevant_treatments() const {
        return irrelevant_treatments_;
    }
    const std::vector<std::string>& nonsense_words() const { return nonsense_words_; }

    nlohmann::ordered_json to_json() const;

private:
    std::vector<Story> stories_;
    std::vector<ConceptForms> unusual_outcomes_;
    std::vector<ConceptForms> irrelevant_treatments_;
    std::vector<std::string> nonsense_words_;
};

// "A has a direct effect on B and C. ... U is unobserved."
std::string render_graph_text(const CgteSpec& spec, const Story& story);

// Bit-exact percentage rendering: integer percent when the value sits on the
// 0.01 grid, otherwise one decimal. parse_percent inverts it exactly.
std::string format_percent(double value);
double parse_percent(const std::string& text);
double quantize_to_percent(double value);

std::string render_data_sentence(const DataTerm& term, const Story& story);
std::string render_data_text(const std::vector<DataTerm>& terms, const Story& story);

std::string render_question(const CgteSpec& spec, const QueryInstance& qinst, const Story& story);

struct ExplanationInput {
    const CgteSpec& spec;
    const QueryInstance& qinst;
    const Estimand& estimand;
    const std::vector<DataTerm>& data;  // values quantized for display
    double value = 0.0;                 // exact ground-truth value
    Answer answer = Answer::Yes;
};

// The five-step explanation; contains exactly five "Step N:" markers.
std::string render_explanation(const ExplanationInput& in);

// Alignment transforms. Commonsensical input required; transform to
// commonsensical is the identity. Only surface text changes.
Story transform_alignment(const Story& story, Alignment level, Rng& rng,
                          const StoryRegistry& registry);

// Deterministic cores used by transform_alignment (and unit tests):
// action 1 replaces the outcome concept, action 2 the treatment concept.
Story apply_anti_commonsensical(const Story& story, int action, int pool_index,
                                const StoryRegistry& registry);
Story apply_nonsensical(const Story& story, int word_offset, const StoryRegistry& registry);

}  // namespace ladder

#pragma once

#include <string>
#include <vector>

#include "ladder/model.hpp"

namespace ladder {

enum class QueryType {
    MarginalProb,
    CondProb,
    Ate,
    AdjustmentSet,
    ColliderBias,
    ExplainingAway,
    CounterfactualProb,
    Att,
    Nde,
    Nie,
};

inline constexpr QueryType kAllQueryTypes[] = {
    QueryType::MarginalProb,  QueryType::CondProb,           QueryType::Ate,
    QueryType::AdjustmentSet, QueryType::ColliderBias,       QueryType::ExplainingAway,
    QueryType::CounterfactualProb, QueryType::Att, QueryType::Nde, QueryType::Nie,
};

// Stable snake_case names used in JSONL records and on the CLI.
std::string query_type_name(QueryType type);
QueryType query_type_from(const std::string& name);

int rung_of(QueryType type);

// The graph x query coverage matrix (App-A.4-style inclusion rules plus the
// well-posedness exclusions recorded in the design notes).
bool applicability(const std::string& graph_name, QueryType type);

// Symbolic expression used in explanations and chain-of-thought step 2.
std::string symbolic_form(QueryType type);

enum class Answer { Yes, No };
inline const char* answer_word(Answer a) { return a == Answer::Yes ? "yes" : "no"; }

inline constexpr double kTieEpsilon = 0.005;

// Canonical-direction yes/no decision. Throws DegenerateInstanceError when
// the value sits inside the tie guard; callers resample.
Answer decide_answer(QueryType type, double value);

// A fully specified query against one catalog graph. `evidence` is the
// factual event of a counterfactual question; `candidate_set` is the offered
// adjustment set; `direction_negated` flips the question phrasing (and for
// CounterfactualProb the target literal).
struct QueryInstance {
    QueryType type = QueryType::MarginalProb;
    std::string graph;
    int target_value = 1;
    int do_value = 1;
    Assignment evidence;
    std::vector<std::string> candidate_set;
    bool direction_negated = false;
};

// Validates field presence against the query type and the coverage matrix.
void validate_instance(const QueryInstance& qinst);

}  // namespace ladder

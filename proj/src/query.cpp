#include "ladder/query.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ladder/graph.hpp"

namespace ladder {

std::string query_type_name(QueryType type) {
    switch (type) {
        case QueryType::MarginalProb: return "marginal_prob";
        case QueryType::CondProb: return "cond_prob";
        case QueryType::Ate: return "ate";
        case QueryType::AdjustmentSet: return "adjustment_set";
        case QueryType::ColliderBias: return "collider_bias";
        case QueryType::ExplainingAway: return "explaining_away";
        case QueryType::CounterfactualProb: return "counterfactual_prob";
        case QueryType::Att: return "att";
        case QueryType::Nde: return "nde";
        case QueryType::Nie: return "nie";
    }
    throw std::logic_error("query_type_name: bad enum");
}

QueryType query_type_from(const std::string& name) {
    for (QueryType t : kAllQueryTypes)
        if (query_type_name(t) == name) return t;
    std::ostringstream err;
    err << "unknown query type '" << name << "'; valid:";
    for (QueryType t : kAllQueryTypes) err << " " << query_type_name(t);
    throw std::invalid_argument(err.str());
}

int rung_of(QueryType type) {
    switch (type) {
        case QueryType::MarginalProb:
        case QueryType::CondProb:
            return 1;
        case QueryType::Ate:
        case QueryType::AdjustmentSet:
        // Collider questions concern conditioning vs. intervening; labeled
        // rung 2, with the convention recorded per record.
        case QueryType::ColliderBias:
        case QueryType::ExplainingAway:
            return 2;
        case QueryType::CounterfactualProb:
        case QueryType::Att:
        case QueryType::Nde:
        case QueryType::Nie:
            return 3;
    }
    throw std::logic_error("rung_of: bad enum");
}

namespace {

bool in(const std::string& name, std::initializer_list<const char*> set) {
    return std::any_of(set.begin(), set.end(),
                       [&](const char* s) { return name == s; });
}

}  // namespace

bool applicability(const std::string& graph_name, QueryType type) {
    catalog(graph_name);  // validates the key
    switch (type) {
        case QueryType::MarginalProb:
            return true;
        case QueryType::CondProb:
            // X and Y are independent on the collision graph, so every
            // instance would trip the tie guard.
            return graph_name != "collision";
        case QueryType::Ate:
            return graph_name != "collision";
        case QueryType::AdjustmentSet:
            // Needs at least one of {empty set, offered candidate} to be a
            // valid backdoor set; on IV and frontdoor nothing observed works.
            return !in(graph_name, {"collision", "IV", "frontdoor"});
        case QueryType::ColliderBias:
        case QueryType::ExplainingAway:
            return graph_name == "collision";
        case QueryType::CounterfactualProb:
            return graph_name != "collision";
        case QueryType::Att:
            return !in(graph_name, {"collision", "IV"});
        case QueryType::Nde:
            return in(graph_name, {"IV", "arrowhead", "confounding", "mediation", "diamondcut"});
        case QueryType::Nie:
            return in(graph_name, {"mediation", "frontdoor", "arrowhead", "diamond", "chain"});
    }
    throw std::logic_error("applicability: bad enum");
}

std::string symbolic_form(QueryType type) {
    switch (type) {
        case QueryType::MarginalProb: return "P(Y)";
        case QueryType::CondProb: return "P(Y|X)";
        case QueryType::Ate: return "E[Y|do(X=1)] - E[Y|do(X=0)]";
        case QueryType::AdjustmentSet: return "whether S blocks all backdoor paths from X to Y";
        case QueryType::ColliderBias: return "P(Y=1|X=1,C=1) - P(Y=1|X=0,C=1)";
        case QueryType::ExplainingAway: return "P(Y=1|X=1,C=1) - P(Y=1|X=0,C=1)";
        case QueryType::CounterfactualProb: return "P(Y_x=y)";
        case QueryType::Att: return "E[Y_1-Y_0|X=1]";
        case QueryType::Nde: return "E[Y_{1,M_0} - Y_{0,M_0}]";
        case QueryType::Nie: return "E[Y_{0,M_1} - Y_{0,M_0}]";
    }
    throw std::logic_error("symbolic_form: bad enum");
}

Answer decide_answer(QueryType type, double value) {
    const bool threshold_half =
        type == QueryType::MarginalProb || type == QueryType::CounterfactualProb;
    if (type == QueryType::AdjustmentSet) {
        // Boolean encoded as 1.0/0.0: yes iff the candidate set is a valid
        // backdoor set and the empty set is not.
        return value > 0.5 ? Answer::Yes : Answer::No;
    }
    const double threshold = threshold_half ? 0.5 : 0.0;
    if (std::fabs(value - threshold) < kTieEpsilon) {
        std::ostringstream err;
        err << "degenerate " << query_type_name(type) << " instance: value " << value
            << " within " << kTieEpsilon << " of " << threshold;
        throw DegenerateInstanceError(err.str());
    }
    return value > threshold ? Answer::Yes : Answer::No;
}

void validate_instance(const QueryInstance& qinst) {
    const CgteSpec& spec = catalog(qinst.graph);
    if (!applicability(qinst.graph, qinst.type))
        throw std::invalid_argument("query type " + query_type_name(qinst.type) +
                                    " is not applicable on graph " + qinst.graph);
    if (qinst.target_value != 0 && qinst.target_value != 1)
        throw std::invalid_argument("target value must be 0 or 1");
    if (qinst.do_value != 0 && qinst.do_value != 1)
        throw std::invalid_argument("do value must be 0 or 1");
    if (qinst.type == QueryType::AdjustmentSet) {
        if (qinst.candidate_set.empty())
            throw std::invalid_argument("adjustment_set query needs a candidate set");
        for (const auto& n : qinst.candidate_set) {
            if (!spec.is_observed(n))
                throw std::invalid_argument("candidate node '" + n + "' is unobserved");
            if (n == spec.treatment || n == spec.outcome)
                throw std::invalid_argument("candidate set touches treatment/outcome");
        }
    } else if (!qinst.candidate_set.empty()) {
        throw std::invalid_argument("candidate set only valid for adjustment_set queries");
    }
    if (qinst.type == QueryType::CounterfactualProb) {
        for (const auto& [name, value] : qinst.evidence) {
            spec.dag.index_of(name);
            if (value != 0 && value != 1)
                throw std::invalid_argument("evidence values must be 0 or 1");
        }
    } else if (!qinst.evidence.empty()) {
        throw std::invalid_argument("evidence only valid for counterfactual queries");
    }
}

}  // namespace ladder

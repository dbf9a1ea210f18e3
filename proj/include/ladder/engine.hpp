#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ladder/graph.hpp"
#include "ladder/model.hpp"
#include "ladder/query.hpp"

namespace ladder {

// A node=value literal inside an estimand. `bound` marks a summation
// variable; its value is supplied by the enclosing SumOver during evaluation
// and it renders as the bare node name.
struct ExprLiteral {
    std::string node;
    int value = 1;
    bool bound = false;
};

// Rung-1-only expression tree. Leaves are probability atoms over observed
// nodes (no do-operator) or constants.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Atom, Constant, Add, Sub, Mul, Div, SumOver };
    Kind kind = Kind::Constant;
    double constant = 0.0;
    ExprLiteral target;                 // Atom
    std::vector<ExprLiteral> givens;    // Atom
    std::vector<ExprPtr> args;          // Add/Sub/Mul/Div/SumOver(body)
    std::vector<std::string> sum_vars;  // SumOver
};

ExprPtr atom(ExprLiteral target, std::vector<ExprLiteral> givens = {});
ExprPtr constant(double value);
ExprPtr add(std::vector<ExprPtr> terms);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(std::vector<ExprPtr> factors);
ExprPtr divide(ExprPtr num, ExprPtr den);
ExprPtr sum_over(std::vector<std::string> vars, ExprPtr body);

struct Estimand {
    ExprPtr expr;
    std::vector<std::string> flags;          // estimand-choice provenance
    std::optional<std::string> text_override;  // used by adjustment-set records
};

// A single marginal/conditional probability statement: the target literal is
// always normalized to value=1; conditioning literals are fully concrete.
struct DataTerm {
    ExprLiteral target;
    std::vector<ExprLiteral> givens;
    double value = -1.0;
};

// Plain-text normal form, e.g.
// "\sum_{Z} P(Z)*[P(Y=1|X=1,Z)-P(Y=1|X=0,Z)]".
std::string render_estimand(const Estimand& estimand);
std::string render_data_term_symbol(const DataTerm& term);  // "P(Y=1|X=1,Z=0)"

// True iff s contains no descendant of the treatment and s d-separates
// treatment from outcome once the treatment's outgoing edges are removed.
// s must consist of observed non-treatment/outcome nodes.
bool is_valid_backdoor_set(const CgteSpec& spec, const std::set<std::string>& s);

// All inclusion-minimal observed sets passing is_valid_backdoor_set, in
// (size, lexicographic) order. May be empty (e.g. frontdoor).
std::vector<std::set<std::string>> find_minimal_adjustment_sets(const CgteSpec& spec);

// Identification: a Rung-1-only estimand for the instance. Throws on
// non-identifiable combinations (excluded by the coverage matrix).
Estimand derive_estimand(const CgteSpec& spec, const QueryInstance& qinst);

// Deduplicated probability atoms appearing as leaves, bound variables
// expanded over both values, targets normalized to value=1. Values unset.
std::vector<DataTerm> required_data(const Estimand& estimand);

// Computes each term's value from the observational distribution.
void fill_data_values(const CgteSpec& spec, const Params& params, std::vector<DataTerm>& terms);

// Evaluates the estimand using ONLY the supplied terms (value-0 targets are
// resolved by complement). Throws if a needed term is missing or a ratio
// denominator vanishes.
double evaluate(const Estimand& estimand, const std::vector<DataTerm>& terms);

// Convenience: fill exact term values, then evaluate.
double evaluate(const CgteSpec& spec, const Params& params, const Estimand& estimand);

// Answer computed WITHOUT identification: Rung 1 by enumeration, Rung 2 by
// truncated factorization on the true graph (unobserved nodes included),
// Rung 3 by exact exogenous-space integration in the canonical SCM.
double oracle(const CgteSpec& spec, const Params& params, const QueryInstance& qinst);

}  // namespace ladder

#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ladder/graph.hpp"
#include "ladder/rng.hpp"

namespace ladder {

// Conjunction of node=value literals; std::map keeps iteration deterministic.
using Assignment = std::map<std::string, int>;

// Raised when a sampled instance lands inside the tie guard and the caller
// should resample.
struct DegenerateInstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bernoulli mechanism tables: per node, P(v=1) for each parent configuration.
// Parent configurations are indexed by bit-pattern in the canonical parent
// order (ascending node index); bit j is the value of the j-th parent.
class Params {
public:
    Params() = default;
    explicit Params(const Dag& dag);

    static Params sample(Rng& rng, const Dag& dag);

    double theta(int node, int pattern) const;
    void set(int node, int pattern, double value);
    int pattern_count(int node) const;

    // Threshold for `node` when the parents take the values in `full`,
    // a vector indexed by node id.
    double theta_for(const Dag& dag, int node, const std::vector<int>& full) const;

    void validate(const Dag& dag) const;

    nlohmann::ordered_json to_json(const Dag& dag) const;
    static Params from_json(const Dag& dag, const nlohmann::json& j);

    bool operator==(const Params& other) const { return table_ == other.table_; }

private:
    std::vector<std::vector<double>> table_;
};

// P(full assignment) under the CBN factorization. The assignment must cover
// every node.
double joint(const Dag& dag, const Params& params, const Assignment& full);

// Marginal/conditional probability by exact enumeration. Unmentioned nodes
// are summed out. Throws on P(given) = 0.
double prob(const Dag& dag, const Params& params, const Assignment& event,
            const Assignment& given = {});

// P(event | do(do_assign)) by truncated factorization on the mutilated graph.
// The event may mention clamped nodes: P(X=1 | do(X=1)) is 1.
double interventional_prob(const Dag& dag, const Params& params, const Assignment& do_assign,
                           const Assignment& event);

// Canonical monotone threshold SCM: v := 1 iff U_v <= theta_v(parents),
// U_v ~ Uniform(0,1) mutually independent. Reproduces the CBN observationally
// and makes counterfactuals well-defined.
struct Scm {
    Dag dag;
    Params params;
};

// P(target_{do} | evidence) via abduction / action / prediction, computed
// exactly over the interval partition of the exogenous box induced by the
// theta thresholds. Throws on zero-probability evidence.
double counterfactual_prob(const Scm& scm, const Assignment& evidence,
                           const Assignment& do_assign, const Assignment& target);

// --- exact exogenous-space integration machinery (shared with the oracle) ---

// Deterministic propagation of the SCM at exogenous point u (indexed by node),
// with intervened nodes clamped. Returns the full assignment by node index.
std::vector<int> propagate(const Scm& scm, const std::vector<double>& u,
                           const Assignment& do_assign);

// Visits every cell of the exogenous partition with a representative point
// and the cell's Lebesgue measure. Within a cell every (counterfactual) world
// is constant, so sums over cells are exact.
void for_each_exogenous_cell(
    const Scm& scm,
    const std::function<void(const std::vector<double>& u, double measure)>& visit);

bool consistent_with(const std::vector<int>& world, const Dag& dag, const Assignment& event);

}  // namespace ladder

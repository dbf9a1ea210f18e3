#include "ladder/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ladder {

namespace {

// Compensated (Kahan) accumulator; the enumeration contracts are 1e-12.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

int pattern_for(const Dag& dag, int node, const std::vector<int>& full) {
    int pattern = 0;
    const auto& ps = dag.parents(node);
    for (size_t j = 0; j < ps.size(); ++j)
        if (full[static_cast<size_t>(ps[j])]) pattern |= 1 << j;
    return pattern;
}

std::string pattern_key(int pattern, int arity) {
    std::string key(static_cast<size_t>(arity), '0');
    for (int j = 0; j < arity; ++j)
        if (pattern & (1 << j)) key[static_cast<size_t>(j)] = '1';
    return key;
}

}  // namespace

Params::Params(const Dag& dag) {
    table_.resize(static_cast<size_t>(dag.size()));
    for (int v = 0; v < dag.size(); ++v)
        table_[static_cast<size_t>(v)].assign(1ull << dag.parents(v).size(), 0.5);
}

Params Params::sample(Rng& rng, const Dag& dag) {
    Params p(dag);
    for (int v = 0; v < dag.size(); ++v)
        for (int k = 0; k < p.pattern_count(v); ++k) p.set(v, k, rng.grid_prob());
    return p;
}

double Params::theta(int node, int pattern) const {
    return table_.at(static_cast<size_t>(node)).at(static_cast<size_t>(pattern));
}

void Params::set(int node, int pattern, double value) {
    if (value < 0.0 || value > 1.0)
        throw std::invalid_argument("Params: probability out of [0,1]");
    table_.at(static_cast<size_t>(node)).at(static_cast<size_t>(pattern)) = value;
}

int Params::pattern_count(int node) const {
    return static_cast<int>(table_.at(static_cast<size_t>(node)).size());
}

double Params::theta_for(const Dag& dag, int node, const std::vector<int>& full) const {
    return theta(node, pattern_for(dag, node, full));
}

void Params::validate(const Dag& dag) const {
    if (static_cast<int>(table_.size()) != dag.size())
        throw std::invalid_argument("Params: table does not cover every node");
    for (int v = 0; v < dag.size(); ++v) {
        if (pattern_count(v) != (1 << dag.parents(v).size()))
            throw std::invalid_argument("Params: wrong table size for node '" + dag.name(v) + "'");
        for (double t : table_[static_cast<size_t>(v)])
            if (t < 0.0 || t > 1.0)
                throw std::invalid_argument("Params: probability out of [0,1]");
    }
}

nlohmann::ordered_json Params::to_json(const Dag& dag) const {
    nlohmann::ordered_json j;
    for (int v = 0; v < dag.size(); ++v) {
        nlohmann::ordered_json entry;
        int arity = static_cast<int>(dag.parents(v).size());
        for (int k = 0; k < pattern_count(v); ++k) entry[pattern_key(k, arity)] = theta(v, k);
        j[dag.name(v)] = entry;
    }
    return j;
}

Params Params::from_json(const Dag& dag, const nlohmann::json& j) {
    Params p(dag);
    for (int v = 0; v < dag.size(); ++v) {
        const auto& name = dag.name(v);
        if (!j.contains(name))
            throw std::invalid_argument("Params: missing node '" + name + "'");
        int arity = static_cast<int>(dag.parents(v).size());
        for (int k = 0; k < p.pattern_count(v); ++k) {
            const std::string key = pattern_key(k, arity);
            if (!j.at(name).contains(key))
                throw std::invalid_argument("Params: node '" + name + "' missing pattern '" +
                                            key + "'");
            p.set(v, k, j.at(name).at(key).get<double>());
        }
    }
    return p;
}

double joint(const Dag& dag, const Params& params, const Assignment& full) {
    std::vector<int> values(static_cast<size_t>(dag.size()), -1);
    for (const auto& [name, value] : full) values[static_cast<size_t>(dag.index_of(name))] = value;
    std::vector<std::string> missing;
    for (int v = 0; v < dag.size(); ++v)
        if (values[static_cast<size_t>(v)] < 0) missing.push_back(dag.name(v));
    if (!missing.empty()) {
        std::ostringstream err;
        err << "joint: assignment missing node(s):";
        for (const auto& m : missing) err << " " << m;
        throw std::invalid_argument(err.str());
    }
    double p = 1.0;
    for (int v = 0; v < dag.size(); ++v) {
        double t = params.theta_for(dag, v, values);
        p *= values[static_cast<size_t>(v)] ? t : 1.0 - t;
    }
    return p;
}

namespace {

// Sum of the joint over all completions consistent with `fixed`; intervened
// nodes (if any) are clamped and skip their own factor.
double enumerate_mass(const Dag& dag, const Params& params, const Assignment& fixed,
                      const Assignment& do_assign) {
    std::vector<int> forced(static_cast<size_t>(dag.size()), -1);
    std::vector<bool> intervened(static_cast<size_t>(dag.size()), false);
    for (const auto& [name, value] : do_assign) {
        int v = dag.index_of(name);
        forced[static_cast<size_t>(v)] = value;
        intervened[static_cast<size_t>(v)] = true;
    }
    for (const auto& [name, value] : fixed) {
        int v = dag.index_of(name);
        if (forced[static_cast<size_t>(v)] >= 0 && forced[static_cast<size_t>(v)] != value)
            return 0.0;
        forced[static_cast<size_t>(v)] = value;
    }
    std::vector<int> free_nodes;
    for (int v = 0; v < dag.size(); ++v)
        if (forced[static_cast<size_t>(v)] < 0) free_nodes.push_back(v);

    KahanSum total;
    std::vector<int> values(forced.begin(), forced.end());
    const size_t combos = 1ull << free_nodes.size();
    for (size_t mask = 0; mask < combos; ++mask) {
        for (size_t j = 0; j < free_nodes.size(); ++j)
            values[static_cast<size_t>(free_nodes[j])] = (mask >> j) & 1 ? 1 : 0;
        double p = 1.0;
        for (int v = 0; v < dag.size(); ++v) {
            if (intervened[static_cast<size_t>(v)]) continue;
            double t = params.theta_for(dag, v, values);
            p *= values[static_cast<size_t>(v)] ? t : 1.0 - t;
        }
        total.add(p);
    }
    return total.sum;
}

}  // namespace

double prob(const Dag& dag, const Params& params, const Assignment& event,
            const Assignment& given) {
    if (event.empty()) throw std::invalid_argument("prob: empty event");
    if (given.empty()) return enumerate_mass(dag, params, event, {});
    Assignment both = event;
    for (const auto& [name, value] : given) {
        auto it = both.find(name);
        if (it != both.end()) {
            // Self-conditioning: P(v=a | v=b) is 1 if a==b else 0.
            if (it->second != value) return 0.0;
        } else {
            both.emplace(name, value);
        }
    }
    double pg = enumerate_mass(dag, params, given, {});
    if (pg <= 0.0) throw std::runtime_error("prob: conditioning on zero-probability event");
    return enumerate_mass(dag, params, both, {}) / pg;
}

double interventional_prob(const Dag& dag, const Params& params, const Assignment& do_assign,
                           const Assignment& event) {
    if (event.empty()) throw std::invalid_argument("interventional_prob: empty event");
    // A clamped node may appear in the event: the consistent literal is
    // certain, a contradicting one has probability zero.
    Assignment ev = event;
    for (const auto& [name, value] : do_assign) ev.emplace(name, value);
    return enumerate_mass(dag, params, ev, do_assign);
}

std::vector<int> propagate(const Scm& scm, const std::vector<double>& u,
                           const Assignment& do_assign) {
    std::vector<int> forced(static_cast<size_t>(scm.dag.size()), -1);
    for (const auto& [name, value] : do_assign)
        forced[static_cast<size_t>(scm.dag.index_of(name))] = value;
    std::vector<int> values(static_cast<size_t>(scm.dag.size()), 0);
    for (int v : scm.dag.topological_order()) {
        if (forced[static_cast<size_t>(v)] >= 0) {
            values[static_cast<size_t>(v)] = forced[static_cast<size_t>(v)];
        } else {
            double t = scm.params.theta_for(scm.dag, v, values);
            values[static_cast<size_t>(v)] = u[static_cast<size_t>(v)] <= t ? 1 : 0;
        }
    }
    return values;
}

void for_each_exogenous_cell(
    const Scm& scm,
    const std::function<void(const std::vector<double>& u, double measure)>& visit) {
    const int k = scm.dag.size();
    // Breakpoints per node: 0, 1 and every theta value of that node. Inside a
    // cell the comparison u_v <= theta_v(pa) has a constant outcome for every
    // parent configuration, so any propagated world is constant on the cell.
    std::vector<std::vector<double>> cuts(static_cast<size_t>(k));
    for (int v = 0; v < k; ++v) {
        auto& c = cuts[static_cast<size_t>(v)];
        c.push_back(0.0);
        c.push_back(1.0);
        for (int pat = 0; pat < scm.params.pattern_count(v); ++pat)
            c.push_back(scm.params.theta(v, pat));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    std::vector<double> u(static_cast<size_t>(k), 0.0);
    while (true) {
        double measure = 1.0;
        for (int v = 0; v < k; ++v) {
            const auto& c = cuts[static_cast<size_t>(v)];
            double lo = c[idx[static_cast<size_t>(v)]];
            double hi = c[idx[static_cast<size_t>(v)] + 1];
            measure *= hi - lo;
            u[static_cast<size_t>(v)] = 0.5 * (lo + hi);
        }
        if (measure > 0.0) visit(u, measure);
        int v = 0;
        for (; v < k; ++v) {
            auto& i = idx[static_cast<size_t>(v)];
            if (i + 2 < cuts[static_cast<size_t>(v)].size()) {
                ++i;
                break;
            }
            i = 0;
        }
        if (v == k) break;
    }
}

bool consistent_with(const std::vector<int>& world, const Dag& dag, const Assignment& event) {
    for (const auto& [name, value] : event)
        if (world[static_cast<size_t>(dag.index_of(name))] != value) return false;
    return true;
}

double counterfactual_prob(const Scm& scm, const Assignment& evidence,
                           const Assignment& do_assign, const Assignment& target) {
    if (target.empty()) throw std::invalid_argument("counterfactual_prob: empty target");
    KahanSum num, den;
    for_each_exogenous_cell(scm, [&](const std::vector<double>& u, double measure) {
        const auto factual = propagate(scm, u, {});
        if (!consistent_with(factual, scm.dag, evidence)) return;
        den.add(measure);
        const auto twin = propagate(scm, u, do_assign);
        if (consistent_with(twin, scm.dag, target)) num.add(measure);
    });
    if (den.sum <= 0.0)
        throw std::runtime_error("counterfactual_prob: zero-probability evidence");
    return num.sum / den.sum;
}

}  // namespace ladder

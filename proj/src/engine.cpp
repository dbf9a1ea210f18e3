#include "ladder/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ladder {

ExprPtr atom(ExprLiteral target, std::vector<ExprLiteral> givens) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Atom;
    e->target = std::move(target);
    e->givens = std::move(givens);
    return e;
}

ExprPtr constant(double value) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Constant;
    e->constant = value;
    return e;
}

namespace {

ExprPtr node_of(Expr::Kind kind, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = std::move(args);
    return e;
}

}  // namespace

ExprPtr add(std::vector<ExprPtr> terms) { return node_of(Expr::Kind::Add, std::move(terms)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return node_of(Expr::Kind::Sub, {std::move(a), std::move(b)}); }
ExprPtr mul(std::vector<ExprPtr> factors) { return node_of(Expr::Kind::Mul, std::move(factors)); }
ExprPtr divide(ExprPtr num, ExprPtr den) {
    return node_of(Expr::Kind::Div, {std::move(num), std::move(den)});
}

ExprPtr sum_over(std::vector<std::string> vars, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::SumOver;
    e->sum_vars = std::move(vars);
    e->args.push_back(std::move(body));
    return e;
}

namespace {

std::string render_literal(const ExprLiteral& lit) {
    if (lit.bound) return lit.node;
    return lit.node + "=" + std::to_string(lit.value);
}

std::string render_atom(const Expr& e) {
    std::string out = "P(" + render_literal(e.target);
    if (!e.givens.empty()) {
        out += "|";
        for (size_t i = 0; i < e.givens.size(); ++i) {
            if (i) out += ",";
            out += render_literal(e.givens[i]);
        }
    }
    return out + ")";
}

std::string render_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool is_composite(const Expr& e) {
    return e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub;
}

std::string render_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Atom:
            return render_atom(e);
        case Expr::Kind::Constant:
            return render_number(e.constant);
        case Expr::Kind::Add: {
            std::string out;
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += "+";
                out += render_expr(*e.args[i]);
            }
            return out;
        }
        case Expr::Kind::Sub:
            return render_expr(*e.args[0]) + "-" +
                   (is_composite(*e.args[1]) ? "[" + render_expr(*e.args[1]) + "]"
                                             : render_expr(*e.args[1]));
        case Expr::Kind::Mul: {
            std::string out;
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += "*";
                const Expr& a = *e.args[i];
                out += is_composite(a) ? "[" + render_expr(a) + "]" : render_expr(a);
            }
            return out;
        }
        case Expr::Kind::Div:
            return "[" + render_expr(*e.args[0]) + "]/[" + render_expr(*e.args[1]) + "]";
        case Expr::Kind::SumOver: {
            std::string out = "\\sum_{";
            for (size_t i = 0; i < e.sum_vars.size(); ++i) {
                if (i) out += ",";
                out += e.sum_vars[i];
            }
            out += "} " + render_expr(*e.args[0]);
            return out;
        }
    }
    throw std::logic_error("render_expr: bad kind");
}

}  // namespace

std::string render_estimand(const Estimand& estimand) {
    if (estimand.text_override) return *estimand.text_override;
    return render_expr(*estimand.expr);
}

std::string render_data_term_symbol(const DataTerm& term) {
    Expr e;
    e.kind = Expr::Kind::Atom;
    e.target = term.target;
    e.givens = term.givens;
    return render_atom(e);
}

bool is_valid_backdoor_set(const CgteSpec& spec, const std::set<std::string>& s) {
    for (const auto& n : s) {
        if (n == spec.treatment || n == spec.outcome)
            throw std::invalid_argument("backdoor set touches treatment or outcome");
        if (!spec.is_observed(n))
            throw std::invalid_argument("backdoor set contains unobserved node '" + n + "'");
    }
    const auto desc = relatives(spec.dag, spec.treatment).descendants;
    for (const auto& n : s)
        if (desc.count(n)) return false;
    // Remove the treatment's outgoing edges, then require d-separation.
    std::vector<std::pair<std::string, std::string>> kept;
    int x = spec.dag.index_of(spec.treatment);
    for (const auto& [from, to] : spec.dag.edges())
        if (spec.dag.index_of(from) != x) kept.emplace_back(from, to);
    Dag pruned(spec.dag.nodes(), kept);
    return d_separated(pruned, {spec.treatment}, {spec.outcome}, s);
}

std::vector<std::set<std::string>> find_minimal_adjustment_sets(const CgteSpec& spec) {
    std::vector<std::string> pool;
    for (const auto& n : spec.observed_nodes())
        if (n != spec.treatment && n != spec.outcome) pool.push_back(n);
    std::sort(pool.begin(), pool.end());

    std::vector<std::set<std::string>> candidates;
    for (size_t mask = 0; mask < (1ull << pool.size()); ++mask) {
        std::set<std::string> s;
        for (size_t j = 0; j < pool.size(); ++j)
            if (mask & (1ull << j)) s.insert(pool[j]);
        candidates.push_back(std::move(s));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    std::vector<std::set<std::string>> minimal;
    for (const auto& s : candidates) {
        if (!is_valid_backdoor_set(spec, s)) continue;
        bool has_valid_subset = std::any_of(minimal.begin(), minimal.end(), [&](const auto& m) {
            return std::includes(s.begin(), s.end(), m.begin(), m.end());
        });
        if (!has_valid_subset) minimal.push_back(s);
    }
    return minimal;
}

namespace {

ExprLiteral lit(const std::string& node, int value) { return {node, value, false}; }
ExprLiteral bound(const std::string& node) { return {node, 1, true}; }

bool has_direct_edge(const CgteSpec& spec) {
    return spec.dag.has_edge(spec.dag.index_of(spec.treatment),
                             spec.dag.index_of(spec.outcome));
}

std::vector<std::string> treatment_observed_parents(const CgteSpec& spec) {
    std::vector<std::string> out;
    for (int p : spec.dag.parents(spec.dag.index_of(spec.treatment)))
        if (spec.is_observed(spec.dag.name(p))) out.push_back(spec.dag.name(p));
    return out;
}

bool treatment_has_unobserved_parent(const CgteSpec& spec) {
    for (int p : spec.dag.parents(spec.dag.index_of(spec.treatment)))
        if (!spec.is_observed(spec.dag.name(p))) return true;
    return false;
}

std::string set_text(const std::set<std::string>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& n : s) {
        if (!first) out += ", ";
        out += n;
        first = false;
    }
    return out + "}";
}

// Sum_s P(s|cond)*[P(y=tv|X=1,s) - P(y=tv|X=0,s)] over the adjustment set;
// with an empty set this collapses to P(y|X=1) - P(y|X=0). `s_cond` adds a
// conditioning literal to the P(s) factor (used by ATT's P(s|X=1)).
ExprPtr adjusted_contrast(const CgteSpec& spec, const std::set<std::string>& s, int target_value,
                          std::vector<ExprLiteral> s_cond) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    if (s.empty())
        return sub(atom(lit(y, target_value), {lit(x, 1)}),
                   atom(lit(y, target_value), {lit(x, 0)}));
    std::vector<std::string> vars(s.begin(), s.end());
    std::vector<ExprLiteral> givens1{lit(x, 1)}, givens0{lit(x, 0)};
    for (const auto& v : vars) {
        givens1.push_back(bound(v));
        givens0.push_back(bound(v));
    }
    std::vector<ExprPtr> factors;
    for (const auto& v : vars) factors.push_back(atom(bound(v), s_cond));
    factors.push_back(
        sub(atom(lit(y, target_value), givens1), atom(lit(y, target_value), givens0)));
    return sum_over(vars, mul(std::move(factors)));
}

// Frontdoor inner term: \sum_X P(X)*P(y=tv|M,X).
ExprPtr frontdoor_inner(const CgteSpec& spec, const std::string& m, int target_value) {
    const std::string& x = spec.treatment;
    return sum_over({x}, mul({atom(bound(x)),
                              atom(lit(spec.outcome, target_value), {bound(m), bound(x)})}));
}

Estimand derive_marginal(const CgteSpec& spec, int target_value) {
    const std::string& y = spec.outcome;
    const auto anc = relatives(spec.dag, y).ancestors;
    std::vector<std::string> chain_nodes;  // observed ancestors in topo order
    for (int v : spec.dag.topological_order()) {
        const auto& n = spec.dag.name(v);
        if (n != y && anc.count(n) && spec.is_observed(n)) chain_nodes.push_back(n);
    }
    if (chain_nodes.empty()) return {atom(lit(y, target_value)), {}, std::nullopt};

    // Chain-rule factor for each node over its observed predecessors, with
    // d-separation-redundant conditioners dropped (checked in the full DAG so
    // latent confounding keeps the conditioner).
    auto factor_givens = [&](const std::string& node,
                             const std::vector<std::string>& preds) {
        std::vector<std::string> kept = preds;
        for (const auto& cand : preds) {
            std::set<std::string> rest;
            for (const auto& k : kept)
                if (k != cand) rest.insert(k);
            if (std::find(kept.begin(), kept.end(), cand) != kept.end() &&
                d_separated(spec.dag, {node}, {cand}, rest))
                kept.erase(std::remove(kept.begin(), kept.end(), cand), kept.end());
        }
        return kept;
    };

    std::vector<ExprPtr> factors;
    std::vector<std::string> preds;
    for (const auto& n : chain_nodes) {
        std::vector<ExprLiteral> givens;
        for (const auto& g : factor_givens(n, preds)) givens.push_back(bound(g));
        factors.push_back(atom(bound(n), givens));
        preds.push_back(n);
    }
    std::vector<ExprLiteral> y_givens;
    for (const auto& g : factor_givens(y, preds)) y_givens.push_back(bound(g));
    factors.push_back(atom(lit(y, target_value), y_givens));
    return {sum_over(chain_nodes, mul(std::move(factors))), {}, std::nullopt};
}

Estimand derive_ate(const CgteSpec& spec) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    if (spec.name == "IV")
        return {divide(sub(atom(lit(y, 1), {lit("Z", 1)}), atom(lit(y, 1), {lit("Z", 0)})),
                       sub(atom(lit(x, 1), {lit("Z", 1)}), atom(lit(x, 1), {lit("Z", 0)}))),
                {"iv_wald"},
                std::nullopt};
    if (spec.name == "frontdoor") {
        const std::string m = "M";
        auto arm = [&](int xv) {
            return sum_over({m}, mul({atom(bound(m), {lit(x, xv)}), frontdoor_inner(spec, m, 1)}));
        };
        return {sub(arm(1), arm(0)), {"frontdoor_adjustment"}, std::nullopt};
    }
    const auto sets = find_minimal_adjustment_sets(spec);
    if (sets.empty())
        throw std::invalid_argument("derive_estimand: no adjustment set on graph " + spec.name);
    return {adjusted_contrast(spec, sets.front(), 1, {}), {}, std::nullopt};
}

Estimand derive_counterfactual(const CgteSpec& spec, const QueryInstance& qinst) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    const int xv = qinst.do_value;
    const int tv = qinst.target_value;
    if (spec.name == "IV") {
        const int za = xv, zb = 1 - xv;
        auto arm_mass = [&](int z) {
            return mul({atom(lit(y, tv), {lit(x, xv), lit("Z", z)}),
                        atom(lit(x, xv), {lit("Z", z)})});
        };
        return {divide(sub(arm_mass(za), arm_mass(zb)),
                       sub(atom(lit(x, 1), {lit("Z", 1)}), atom(lit(x, 1), {lit("Z", 0)}))),
                {"iv_complier"},
                std::nullopt};
    }
    if (spec.name == "frontdoor") {
        const std::string m = "M";
        const int factual = 1 - xv;
        return {sum_over({m}, mul({atom(bound(m), {lit(x, xv)}),
                                   atom(lit(y, tv), {bound(m), lit(x, factual)})})),
                {"frontdoor_ett"},
                std::nullopt};
    }
    const auto parents = treatment_observed_parents(spec);
    if (treatment_has_unobserved_parent(spec))
        throw std::invalid_argument("derive_estimand: counterfactual not identified on " +
                                    spec.name);
    if (parents.empty()) return {atom(lit(y, tv), {lit(x, xv)}), {}, std::nullopt};
    const int factual = 1 - xv;
    std::vector<ExprPtr> factors;
    std::vector<ExprLiteral> y_givens{lit(x, xv)};
    for (const auto& p : parents) {
        factors.push_back(atom(bound(p), {lit(x, factual)}));
        y_givens.push_back(bound(p));
    }
    factors.push_back(atom(lit(y, tv), y_givens));
    return {sum_over(parents, mul(std::move(factors))), {}, std::nullopt};
}

Estimand derive_att(const CgteSpec& spec) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    if (spec.name == "frontdoor") {
        const std::string m = "M";
        return {sub(atom(lit(y, 1), {lit(x, 1)}),
                    sum_over({m}, mul({atom(bound(m), {lit(x, 0)}),
                                       atom(lit(y, 1), {bound(m), lit(x, 1)})}))),
                {"frontdoor_ett"},
                std::nullopt};
    }
    if (treatment_has_unobserved_parent(spec))
        throw std::invalid_argument("derive_estimand: ATT not identified on " + spec.name);
    const auto parents = treatment_observed_parents(spec);
    std::set<std::string> s(parents.begin(), parents.end());
    return {adjusted_contrast(spec, s, 1, {lit(x, 1)}), {}, std::nullopt};
}

Estimand derive_nde(const CgteSpec& spec) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    if (!has_direct_edge(spec))
        return {constant(0.0), {"nde_zero_no_direct_edge"}, std::nullopt};
    if (spec.mediators.empty()) {
        // Without a mediator the natural direct effect is the total effect.
        Estimand e = derive_ate(spec);
        e.flags.push_back("nde_no_mediator");
        return e;
    }
    std::vector<std::string> meds(spec.mediators.begin(), spec.mediators.end());
    std::vector<ExprPtr> factors;
    std::vector<ExprLiteral> g1{lit(x, 1)}, g0{lit(x, 0)};
    for (const auto& m : meds) {
        factors.push_back(atom(bound(m), {lit(x, 0)}));
        g1.push_back(bound(m));
        g0.push_back(bound(m));
    }
    factors.push_back(sub(atom(lit(y, 1), g1), atom(lit(y, 1), g0)));
    Estimand e{sum_over(meds, mul(std::move(factors))), {}, std::nullopt};
    if (spec.name == "arrowhead") e.flags.push_back("arrowhead_unconfounded_mediator");
    return e;
}

Estimand derive_nie(const CgteSpec& spec) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    if (spec.mediators.empty()) return {constant(0.0), {"nie_zero_no_mediator"}, std::nullopt};
    std::vector<std::string> meds(spec.mediators.begin(), spec.mediators.end());

    if (spec.name == "frontdoor") {
        const std::string& m = meds.front();
        return {sum_over({m}, mul({sub(atom(bound(m), {lit(x, 1)}), atom(bound(m), {lit(x, 0)})),
                                   frontdoor_inner(spec, m, 1)})),
                {"frontdoor_adjustment"},
                std::nullopt};
    }
    if (meds.size() == 1) {
        const std::string& m = meds.front();
        Estimand e{sum_over({m}, mul({sub(atom(bound(m), {lit(x, 1)}), atom(bound(m), {lit(x, 0)})),
                                      atom(lit(y, 1), {lit(x, 0), bound(m)})})),
                   {},
                   std::nullopt};
        if (spec.name == "arrowhead") e.flags.push_back("arrowhead_unconfounded_mediator");
        return e;
    }
    // Joint-mediator form (diamond): the mediators are independent given X.
    auto joint_meds = [&](int xv) {
        std::vector<ExprPtr> fs;
        for (const auto& m : meds) fs.push_back(atom(bound(m), {lit(x, xv)}));
        return mul(std::move(fs));
    };
    std::vector<ExprLiteral> y_givens;
    for (const auto& m : meds) y_givens.push_back(bound(m));
    return {sum_over(meds, mul({sub(joint_meds(1), joint_meds(0)),
                                atom(lit(y, 1), y_givens)})),
            {},
            std::nullopt};
}

Estimand derive_adjustment_set(const CgteSpec& spec, const QueryInstance& qinst) {
    std::set<std::string> s(qinst.candidate_set.begin(), qinst.candidate_set.end());
    const bool candidate_valid = is_valid_backdoor_set(spec, s);
    const bool empty_valid = is_valid_backdoor_set(spec, {});
    const bool adjust = candidate_valid && !empty_valid;
    std::ostringstream text;
    const std::string pair = "(" + spec.treatment + ", " + spec.outcome + ")";
    if (adjust) {
        text << set_text(s) << " is a valid backdoor adjustment set for " << pair
             << " and the empty set is not";
    } else if (!candidate_valid) {
        text << set_text(s) << " is not a valid backdoor adjustment set for " << pair;
        if (empty_valid) text << "; no adjustment is needed";
    } else {
        text << "the empty set already blocks all backdoor paths for " << pair
             << "; adjusting for " << set_text(s) << " is unnecessary";
    }
    return {constant(adjust ? 1.0 : 0.0), {}, text.str()};
}

}  // namespace

Estimand derive_estimand(const CgteSpec& spec, const QueryInstance& qinst) {
    if (qinst.graph != spec.name)
        throw std::invalid_argument("derive_estimand: instance/graph mismatch");
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    switch (qinst.type) {
        case QueryType::MarginalProb:
            return derive_marginal(spec, 1);
        case QueryType::CondProb:
            return {sub(atom(lit(y, 1), {lit(x, 1)}), atom(lit(y, 1), {lit(x, 0)})),
                    {},
                    std::nullopt};
        case QueryType::Ate:
            return derive_ate(spec);
        case QueryType::AdjustmentSet:
            return derive_adjustment_set(spec, qinst);
        case QueryType::ColliderBias:
        case QueryType::ExplainingAway:
            return {sub(atom(lit(y, 1), {lit(x, 1), lit("C", 1)}),
                        atom(lit(y, 1), {lit(x, 0), lit("C", 1)})),
                    {},
                    std::nullopt};
        case QueryType::CounterfactualProb:
            return derive_counterfactual(spec, qinst);
        case QueryType::Att:
            return derive_att(spec);
        case QueryType::Nde:
            return derive_nde(spec);
        case QueryType::Nie:
            return derive_nie(spec);
    }
    throw std::logic_error("derive_estimand: bad enum");
}

namespace {

using Env = std::map<std::string, int>;

int literal_value(const ExprLiteral& l, const Env& env) {
    if (!l.bound) return l.value;
    auto it = env.find(l.node);
    if (it == env.end())
        throw std::logic_error("unbound summation variable '" + l.node + "'");
    return it->second;
}

std::string term_key(const ExprLiteral& target, const std::vector<ExprLiteral>& givens) {
    std::vector<std::pair<std::string, int>> g;
    for (const auto& l : givens) g.emplace_back(l.node, l.value);
    std::sort(g.begin(), g.end());
    std::string key = target.node + "=1|";
    for (const auto& [n, v] : g) key += n + "=" + std::to_string(v) + ",";
    return key;
}

// Walks the tree expanding summation bindings; calls f on every concrete atom
// (target normalized to value=1, complement flag communicated separately).
void walk_atoms(const Expr& e, Env& env,
                const std::function<void(const ExprLiteral&, const std::vector<ExprLiteral>&)>& f) {
    switch (e.kind) {
        case Expr::Kind::Atom: {
            ExprLiteral target{e.target.node, 1, false};
            std::vector<ExprLiteral> givens;
            for (const auto& g : e.givens) givens.push_back({g.node, literal_value(g, env), false});
            f(target, givens);
            return;
        }
        case Expr::Kind::Constant:
            return;
        case Expr::Kind::SumOver: {
            const size_t n = e.sum_vars.size();
            for (size_t mask = 0; mask < (1ull << n); ++mask) {
                for (size_t j = 0; j < n; ++j) env[e.sum_vars[j]] = (mask >> j) & 1 ? 1 : 0;
                walk_atoms(*e.args[0], env, f);
            }
            for (const auto& v : e.sum_vars) env.erase(v);
            return;
        }
        default:
            for (const auto& a : e.args) walk_atoms(*a, env, f);
            return;
    }
}

double eval_expr(const Expr& e, Env& env, const std::map<std::string, double>& table) {
    switch (e.kind) {
        case Expr::Kind::Atom: {
            ExprLiteral target{e.target.node, 1, false};
            std::vector<ExprLiteral> givens;
            for (const auto& g : e.givens) givens.push_back({g.node, literal_value(g, env), false});
            auto it = table.find(term_key(target, givens));
            if (it == table.end())
                throw std::runtime_error("evaluate: missing data term for atom on '" +
                                         e.target.node + "'");
            const int tv = literal_value(e.target, env);
            return tv == 1 ? it->second : 1.0 - it->second;
        }
        case Expr::Kind::Constant:
            return e.constant;
        case Expr::Kind::Add: {
            double s = 0, c = 0;
            for (const auto& a : e.args) {
                double x = eval_expr(*a, env, table) - c;
                double t = s + x;
                c = (t - s) - x;
                s = t;
            }
            return s;
        }
        case Expr::Kind::Sub:
            return eval_expr(*e.args[0], env, table) - eval_expr(*e.args[1], env, table);
        case Expr::Kind::Mul: {
            double p = 1.0;
            for (const auto& a : e.args) p *= eval_expr(*a, env, table);
            return p;
        }
        case Expr::Kind::Div: {
            double den = eval_expr(*e.args[1], env, table);
            if (std::fabs(den) < 1e-12)
                throw std::runtime_error("evaluate: vanishing ratio denominator");
            return eval_expr(*e.args[0], env, table) / den;
        }
        case Expr::Kind::SumOver: {
            double s = 0, c = 0;
            const size_t n = e.sum_vars.size();
            for (size_t mask = 0; mask < (1ull << n); ++mask) {
                for (size_t j = 0; j < n; ++j) env[e.sum_vars[j]] = (mask >> j) & 1 ? 1 : 0;
                double x = eval_expr(*e.args[0], env, table) - c;
                double t = s + x;
                c = (t - s) - x;
                s = t;
            }
            for (const auto& v : e.sum_vars) env.erase(v);
            return s;
        }
    }
    throw std::logic_error("eval_expr: bad kind");
}

}  // namespace

std::vector<DataTerm> required_data(const Estimand& estimand) {
    std::vector<DataTerm> terms;
    std::set<std::string> seen;
    Env env;
    walk_atoms(*estimand.expr, env,
               [&](const ExprLiteral& target, const std::vector<ExprLiteral>& givens) {
                   const std::string key = term_key(target, givens);
                   if (!seen.insert(key).second) return;
                   terms.push_back({target, givens, -1.0});
               });
    return terms;
}

void fill_data_values(const CgteSpec& spec, const Params& params, std::vector<DataTerm>& terms) {
    for (auto& t : terms) {
        Assignment event{{t.target.node, t.target.value}};
        Assignment given;
        for (const auto& g : t.givens) given[g.node] = g.value;
        t.value = prob(spec.dag, params, event, given);
    }
}

double evaluate(const Estimand& estimand, const std::vector<DataTerm>& terms) {
    std::map<std::string, double> table;
    for (const auto& t : terms) {
        if (t.value < 0.0 || t.value > 1.0)
            throw std::invalid_argument("evaluate: data term without a value");
        table[term_key(t.target, t.givens)] = t.value;
    }
    Env env;
    return eval_expr(*estimand.expr, env, table);
}

double evaluate(const CgteSpec& spec, const Params& params, const Estimand& estimand) {
    auto terms = required_data(estimand);
    fill_data_values(spec, params, terms);
    return evaluate(estimand, terms);
}

namespace {

// Numeric backdoor validity: the S-adjusted contrast must reproduce the
// truncated-factorization interventional value for both arms.
bool adjustment_matches_intervention(const CgteSpec& spec, const Params& params,
                                     const std::set<std::string>& s, double tol) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    std::vector<std::string> vars(s.begin(), s.end());
    for (int xv : {0, 1}) {
        double adjusted = 0.0;
        const size_t n = vars.size();
        for (size_t mask = 0; mask < (1ull << n); ++mask) {
            Assignment sv;
            for (size_t j = 0; j < n; ++j) sv[vars[j]] = (mask >> j) & 1 ? 1 : 0;
            Assignment given = sv;
            given[x] = xv;
            double ps = sv.empty() ? 1.0 : prob(spec.dag, params, sv);
            adjusted += ps * prob(spec.dag, params, {{y, 1}}, given);
        }
        double truth = interventional_prob(spec.dag, params, {{x, xv}}, {{y, 1}});
        if (std::fabs(adjusted - truth) > tol) return false;
    }
    return true;
}

struct StratumAccumulator {
    double mass = 0.0;
    double value = 0.0;
};

}  // namespace

double oracle(const CgteSpec& spec, const Params& params, const QueryInstance& qinst) {
    validate_instance(qinst);
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    const Scm scm{spec.dag, params};
    const int yi = spec.dag.index_of(y);

    switch (qinst.type) {
        case QueryType::MarginalProb:
            return prob(spec.dag, params, {{y, 1}});
        case QueryType::CondProb:
            return prob(spec.dag, params, {{y, 1}}, {{x, 1}}) -
                   prob(spec.dag, params, {{y, 1}}, {{x, 0}});
        case QueryType::ColliderBias:
        case QueryType::ExplainingAway:
            return prob(spec.dag, params, {{y, 1}}, {{x, 1}, {"C", 1}}) -
                   prob(spec.dag, params, {{y, 1}}, {{x, 0}, {"C", 1}});
        case QueryType::AdjustmentSet: {
            std::set<std::string> s(qinst.candidate_set.begin(), qinst.candidate_set.end());
            const double tol = 1e-9;
            const bool cand = adjustment_matches_intervention(spec, params, s, tol);
            const bool empty = adjustment_matches_intervention(spec, params, {}, tol);
            return cand && !empty ? 1.0 : 0.0;
        }
        case QueryType::Ate:
        case QueryType::Nde:
        case QueryType::Nie:
        case QueryType::Att:
        case QueryType::CounterfactualProb:
            break;
    }

    const bool complier_stratum = spec.name == "IV";
    std::vector<int> med_idx;
    for (const auto& m : spec.mediators) med_idx.push_back(spec.dag.index_of(m));

    StratumAccumulator acc;
    for_each_exogenous_cell(scm, [&](const std::vector<double>& u, double measure) {
        // Stratum membership: factual evidence for ATT/counterfactuals,
        // instrument compliance on the IV graph.
        if (complier_stratum &&
            (qinst.type == QueryType::Ate || qinst.type == QueryType::Nde ||
             qinst.type == QueryType::CounterfactualProb)) {
            const auto z1 = propagate(scm, u, {{"Z", 1}});
            const auto z0 = propagate(scm, u, {{"Z", 0}});
            const int xi = spec.dag.index_of(x);
            if (!(z1[static_cast<size_t>(xi)] == 1 && z0[static_cast<size_t>(xi)] == 0)) return;
        } else if (qinst.type == QueryType::Att) {
            const auto factual = propagate(scm, u, {});
            if (!consistent_with(factual, spec.dag, {{x, 1}})) return;
        } else if (qinst.type == QueryType::CounterfactualProb && !qinst.evidence.empty()) {
            const auto factual = propagate(scm, u, {});
            if (!consistent_with(factual, spec.dag, qinst.evidence)) return;
        }
        acc.mass += measure;

        switch (qinst.type) {
            case QueryType::Ate:
            case QueryType::Att: {
                const auto w1 = propagate(scm, u, {{x, 1}});
                const auto w0 = propagate(scm, u, {{x, 0}});
                acc.value += measure * (w1[static_cast<size_t>(yi)] - w0[static_cast<size_t>(yi)]);
                return;
            }
            case QueryType::CounterfactualProb: {
                const auto w = propagate(scm, u, {{x, qinst.do_value}});
                if (w[static_cast<size_t>(yi)] == qinst.target_value) acc.value += measure;
                return;
            }
            case QueryType::Nde: {
                const auto base = propagate(scm, u, {{x, 0}});
                Assignment do1{{x, 1}};
                for (size_t j = 0; j < med_idx.size(); ++j)
                    do1[spec.dag.name(med_idx[j])] = base[static_cast<size_t>(med_idx[j])];
                const auto w1 = propagate(scm, u, do1);
                acc.value +=
                    measure * (w1[static_cast<size_t>(yi)] - base[static_cast<size_t>(yi)]);
                return;
            }
            case QueryType::Nie: {
                const auto base = propagate(scm, u, {{x, 0}});
                const auto alt = propagate(scm, u, {{x, 1}});
                Assignment do0{{x, 0}};
                for (size_t j = 0; j < med_idx.size(); ++j)
                    do0[spec.dag.name(med_idx[j])] = alt[static_cast<size_t>(med_idx[j])];
                const auto w = propagate(scm, u, do0);
                acc.value +=
                    measure * (w[static_cast<size_t>(yi)] - base[static_cast<size_t>(yi)]);
                return;
            }
            default:
                return;
        }
    });

    if (acc.mass <= 0.0) throw std::runtime_error("oracle: empty conditioning stratum");
    return acc.value / acc.mass;
}

}  // namespace ladder

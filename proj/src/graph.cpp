#include "ladder/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ladder {

Dag::Dag(std::vector<std::string> nodes,
         const std::vector<std::pair<std::string, std::string>>& edges)
    : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw std::invalid_argument("Dag: empty node list");
    std::map<std::string, int> index;
    for (int i = 0; i < size(); ++i) {
        const auto& n = nodes_[static_cast<size_t>(i)];
        if (n.empty()) throw std::invalid_argument("Dag: empty node name");
        if (!index.emplace(n, i).second)
            throw std::invalid_argument("Dag: duplicate node '" + n + "'");
    }
    parents_.assign(nodes_.size(), {});
    children_.assign(nodes_.size(), {});
    for (const auto& [from, to] : edges) {
        auto fi = index.find(from);
        auto ti = index.find(to);
        if (fi == index.end() || ti == index.end())
            throw std::invalid_argument("Dag: edge references unknown node '" +
                                        (fi == index.end() ? from : to) + "'");
        if (fi->second == ti->second)
            throw std::invalid_argument("Dag: self-loop on '" + from + "'");
        if (has_edge(fi->second, ti->second))
            throw std::invalid_argument("Dag: duplicate edge " + from + "->" + to);
        children_[static_cast<size_t>(fi->second)].push_back(ti->second);
        parents_[static_cast<size_t>(ti->second)].push_back(fi->second);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());

    // Kahn's algorithm; failure to consume every node means a cycle.
    std::vector<int> indeg(nodes_.size(), 0);
    for (int v = 0; v < size(); ++v) indeg[static_cast<size_t>(v)] = static_cast<int>(parents(v).size());
    std::deque<int> ready;
    for (int v = 0; v < size(); ++v)
        if (indeg[static_cast<size_t>(v)] == 0) ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        topo_.push_back(v);
        for (int c : children(v))
            if (--indeg[static_cast<size_t>(c)] == 0) ready.push_back(c);
    }
    if (static_cast<int>(topo_.size()) != size())
        throw std::invalid_argument("Dag: graph contains a cycle");
}

bool Dag::contains(const std::string& name) const {
    return std::find(nodes_.begin(), nodes_.end(), name) != nodes_.end();
}

int Dag::index_of(const std::string& name) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), name);
    if (it == nodes_.end())
        throw std::invalid_argument("unknown node '" + name + "'");
    return static_cast<int>(it - nodes_.begin());
}

bool Dag::has_edge(int from, int to) const {
    const auto& c = children_.at(static_cast<size_t>(from));
    return std::find(c.begin(), c.end(), to) != c.end();
}

std::vector<std::pair<std::string, std::string>> Dag::edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (int v = 0; v < size(); ++v)
        for (int c : children(v)) out.emplace_back(name(v), name(c));
    return out;
}

int Dag::edge_count() const {
    int n = 0;
    for (int v = 0; v < size(); ++v) n += static_cast<int>(children(v).size());
    return n;
}

bool Dag::operator==(const Dag& other) const {
    return nodes_ == other.nodes_ && parents_ == other.parents_;
}

namespace {

void collect_reachable(const Dag& dag, int start, bool forward, std::set<int>& out) {
    std::deque<int> queue{start};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : forward ? dag.children(v) : dag.parents(v)) {
            if (out.insert(w).second) queue.push_back(w);
        }
    }
}

}  // namespace

Relatives relatives(const Dag& dag, const std::string& v) {
    int vi = dag.index_of(v);
    Relatives r;
    for (int p : dag.parents(vi)) r.parents.insert(dag.name(p));
    for (int c : dag.children(vi)) r.children.insert(dag.name(c));
    std::set<int> anc, desc;
    collect_reachable(dag, vi, /*forward=*/false, anc);
    collect_reachable(dag, vi, /*forward=*/true, desc);
    for (int a : anc) r.ancestors.insert(dag.name(a));
    for (int d : desc) r.descendants.insert(dag.name(d));
    return r;
}

bool d_separated(const Dag& dag, const std::set<std::string>& a,
                 const std::set<std::string>& b, const std::set<std::string>& s) {
    auto to_indices = [&](const std::set<std::string>& names) {
        std::set<int> out;
        for (const auto& n : names) out.insert(dag.index_of(n));
        return out;
    };
    std::set<int> ai = to_indices(a), bi = to_indices(b), si = to_indices(s);
    for (int v : ai)
        if (bi.count(v) || si.count(v))
            throw std::invalid_argument("d_separated: sets must be pairwise disjoint");
    for (int v : bi)
        if (si.count(v)) throw std::invalid_argument("d_separated: sets must be pairwise disjoint");

    // Ancestors of the conditioning set (inclusive); a collider passes the
    // ball only if it is in this set.
    std::set<int> anc_s(si);
    for (int z : si) collect_reachable(dag, z, /*forward=*/false, anc_s);

    // Bayes-ball states: (node, arrived-from-child?)
    std::vector<std::array<bool, 2>> visited(static_cast<size_t>(dag.size()), {false, false});
    std::deque<std::pair<int, bool>> queue;
    for (int x : ai) queue.emplace_back(x, true);
    while (!queue.empty()) {
        auto [v, from_child] = queue.front();
        queue.pop_front();
        auto& seen = visited[static_cast<size_t>(v)][from_child ? 1 : 0];
        if (seen) continue;
        seen = true;
        if (!si.count(v) && bi.count(v)) return false;
        if (from_child) {
            if (!si.count(v)) {
                for (int p : dag.parents(v)) queue.emplace_back(p, true);
                for (int c : dag.children(v)) queue.emplace_back(c, false);
            }
        } else {
            if (!si.count(v))
                for (int c : dag.children(v)) queue.emplace_back(c, false);
            if (anc_s.count(v))
                for (int p : dag.parents(v)) queue.emplace_back(p, true);
        }
    }
    return true;
}

Dag mutilate(const Dag& dag, const std::set<std::string>& targets) {
    std::set<int> ti;
    for (const auto& t : targets) ti.insert(dag.index_of(t));
    std::vector<std::pair<std::string, std::string>> kept;
    for (int v = 0; v < dag.size(); ++v)
        for (int c : dag.children(v))
            if (!ti.count(c)) kept.emplace_back(dag.name(v), dag.name(c));
    return Dag(dag.nodes(), kept);
}

NodeRole CgteSpec::role(const std::string& node) const {
    if (node == treatment) return NodeRole::Treatment;
    if (node == outcome) return NodeRole::Outcome;
    dag.index_of(node);
    return NodeRole::Other;
}

std::vector<std::string> CgteSpec::observed_nodes() const {
    std::vector<std::string> out;
    for (const auto& n : dag.nodes())
        if (is_observed(n)) out.push_back(n);
    return out;
}

namespace {

CgteSpec make_cgte(std::string name, std::vector<std::string> nodes,
                   std::vector<std::pair<std::string, std::string>> edges,
                   std::string treatment, std::string outcome,
                   std::set<std::string> unobserved) {
    CgteSpec spec{std::move(name), Dag(std::move(nodes), edges), std::move(treatment),
                  std::move(outcome), std::move(unobserved), {}};
    if (spec.treatment == spec.outcome)
        throw std::invalid_argument("CgteSpec: treatment equals outcome");
    if (!spec.is_observed(spec.treatment) || !spec.is_observed(spec.outcome))
        throw std::invalid_argument("CgteSpec: treatment and outcome must be observed");
    const auto desc_x = relatives(spec.dag, spec.treatment).descendants;
    const auto anc_y = relatives(spec.dag, spec.outcome).ancestors;
    for (const auto& n : spec.dag.nodes())
        if (n != spec.treatment && n != spec.outcome && desc_x.count(n) && anc_y.count(n))
            spec.mediators.insert(n);
    return spec;
}

std::vector<CgteSpec> build_catalog() {
    std::vector<CgteSpec> out;
    out.push_back(make_cgte("chain", {"X", "M", "Y"}, {{"X", "M"}, {"M", "Y"}}, "X", "Y", {}));
    out.push_back(make_cgte("collision", {"X", "Y", "C"}, {{"X", "C"}, {"Y", "C"}}, "X", "Y", {}));
    out.push_back(make_cgte("fork", {"X", "Z", "Y"}, {{"Z", "Y"}, {"X", "Y"}}, "X", "Y", {}));
    out.push_back(make_cgte("confounding", {"Z", "X", "Y"},
                            {{"Z", "X"}, {"Z", "Y"}, {"X", "Y"}}, "X", "Y", {}));
    out.push_back(make_cgte("mediation", {"X", "M", "Y"},
                            {{"X", "M"}, {"M", "Y"}, {"X", "Y"}}, "X", "Y", {}));
    out.push_back(make_cgte("diamond", {"X", "A", "B", "Y"},
                            {{"X", "A"}, {"X", "B"}, {"A", "Y"}, {"B", "Y"}}, "X", "Y", {}));
    out.push_back(make_cgte("diamondcut", {"Z", "X", "B", "Y"},
                            {{"Z", "X"}, {"Z", "B"}, {"X", "Y"}, {"B", "Y"}}, "X", "Y", {}));
    out.push_back(make_cgte("IV", {"Z", "U", "X", "Y"},
                            {{"Z", "X"}, {"U", "X"}, {"U", "Y"}, {"X", "Y"}}, "X", "Y", {"U"}));
    out.push_back(make_cgte("arrowhead", {"X", "U", "M", "Y"},
                            {{"X", "M"}, {"X", "Y"}, {"M", "Y"}, {"U", "M"}, {"U", "Y"}},
                            "X", "Y", {"U"}));
    out.push_back(make_cgte("frontdoor", {"U", "X", "M", "Y"},
                            {{"U", "X"}, {"U", "Y"}, {"X", "M"}, {"M", "Y"}}, "X", "Y", {"U"}));
    return out;
}

const std::vector<CgteSpec>& catalog_specs() {
    static const std::vector<CgteSpec> specs = build_catalog();
    return specs;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : catalog_specs()) out.push_back(s.name);
        return out;
    }();
    return names;
}

const CgteSpec& catalog(const std::string& name) {
    for (const auto& s : catalog_specs())
        if (s.name == name) return s;
    std::ostringstream err;
    err << "unknown catalog graph '" << name << "'; valid keys:";
    for (const auto& n : catalog_names()) err << " " << n;
    throw std::invalid_argument(err.str());
}

nlohmann::ordered_json cgte_to_json(const CgteSpec& spec) {
    nlohmann::ordered_json j;
    j["name"] = spec.name;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : spec.dag.nodes()) {
        const char* role = n == spec.treatment ? "treatment"
                         : n == spec.outcome  ? "outcome"
                                              : "other";
        j["nodes"].push_back({{"id", n}, {"role", role}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [from, to] : spec.dag.edges()) j["edges"].push_back({from, to});
    j["unobserved"] = spec.unobserved;
    return j;
}

}  // namespace ladder

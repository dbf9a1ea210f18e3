#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ladder {

enum class NodeRole { Treatment, Outcome, Other };

// Immutable DAG over named binary nodes. Node order is the declaration order
// and doubles as the canonical order for parent bit-patterns.
class Dag {
public:
    Dag(std::vector<std::string> nodes,
        const std::vector<std::pair<std::string, std::string>>& edges);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& name(int v) const { return nodes_.at(static_cast<size_t>(v)); }

    bool contains(const std::string& name) const;
    int index_of(const std::string& name) const;  // throws on unknown node

    bool has_edge(int from, int to) const;
    const std::vector<int>& parents(int v) const { return parents_.at(static_cast<size_t>(v)); }
    const std::vector<int>& children(int v) const { return children_.at(static_cast<size_t>(v)); }
    std::vector<std::pair<std::string, std::string>> edges() const;
    int edge_count() const;

    // Indices in a topological order (parents before children).
    const std::vector<int>& topological_order() const { return topo_; }

    bool operator==(const Dag& other) const;

private:
    std::vector<std::string> nodes_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<int> topo_;
};

struct Relatives {
    std::set<std::string> parents;
    std::set<std::string> children;
    std::set<std::string> ancestors;
    std::set<std::string> descendants;
};

Relatives relatives(const Dag& dag, const std::string& v);

// Standard d-separation via the Bayes-ball reachability algorithm.
// a, b, s must be pairwise disjoint node sets.
bool d_separated(const Dag& dag, const std::set<std::string>& a,
                 const std::set<std::string>& b, const std::set<std::string>& s);

// Copy of the graph with every edge into a node of `targets` removed.
Dag mutilate(const Dag& dag, const std::set<std::string>& targets);

// A causal graph with a designated treatment-effect pair.
struct CgteSpec {
    std::string name;
    Dag dag;
    std::string treatment;
    std::string outcome;
    std::set<std::string> unobserved;
    std::set<std::string> mediators;  // nodes on a directed treatment->outcome path

    NodeRole role(const std::string& node) const;
    bool is_observed(const std::string& node) const { return unobserved.count(node) == 0; }
    std::vector<std::string> observed_nodes() const;
};

const std::vector<std::string>& catalog_names();
const CgteSpec& catalog(const std::string& name);  // throws listing valid keys

nlohmann::ordered_json cgte_to_json(const CgteSpec& spec);

}  // namespace ladder

#pragma once

// Shared helpers for the unit tests: tiny hand-made networks plus seeded
// random model generators used by the engine cross-check properties.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "riskbn/bn.hpp"

namespace riskbn::testing {

inline NodeSpec prior_node(std::string id, double p_true) {
    NodeSpec spec;
    spec.id = std::move(id);
    spec.cpt.rows = {bernoulli_row(p_true)};
    return spec;
}

inline NodeSpec table_node(std::string id, std::vector<std::string> parents,
                           std::vector<double> row_p_true) {
    NodeSpec spec;
    spec.id = std::move(id);
    spec.cpt.parent_ids = std::move(parents);
    for (double p : row_p_true) spec.cpt.rows.push_back(bernoulli_row(p));
    return spec;
}

// A -> B chain: P(A=1) = 0.3, P(B=1|A=0) = 0.1, P(B=1|A=1) = 0.9.
inline BayesianNetwork chain_network() {
    return build_network({
        prior_node("A", 0.3),
        table_node("B", {"A"}, {0.1, 0.9}),
    });
}

// Diamond where both engines are finite but disagree: A feeds B and C, which
// both copy A exactly, and D fires only when B and C are both true.  The exact
// answer is P(D=1) = P(A=1) = 0.3; treating B and C as independent gives 0.09.
inline BayesianNetwork diamond_network() {
    return build_network({
        prior_node("A", 0.3),
        table_node("B", {"A"}, {0.0, 1.0}),
        table_node("C", {"A"}, {0.0, 1.0}),
        table_node("D", {"B", "C"}, {0.0, 0.0, 0.0, 1.0}),
    });
}

// Fork used for do-vs-see comparisons: C confounds A and B.
inline BayesianNetwork fork_network() {
    return build_network({
        prior_node("C", 0.5),
        table_node("A", {"C"}, {0.1, 0.9}),
        table_node("B", {"C"}, {0.2, 0.8}),
    });
}

inline double uniform_probability(std::mt19937& rng) {
    return std::uniform_real_distribution<double>(0.01, 0.99)(rng);
}

// Random DAG: node i may only use earlier nodes as parents, so the result is
// acyclic by construction.  Every CPT entry stays inside [0.01, 0.99].
inline BayesianNetwork random_network(std::mt19937& rng, int max_nodes = 10,
                                      int max_parents = 3) {
    const int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
    std::vector<NodeSpec> specs;
    for (int i = 0; i < n; ++i) {
        NodeSpec spec;
        spec.id = "N" + std::to_string(i);

        std::vector<int> earlier(static_cast<std::size_t>(i));
        for (int j = 0; j < i; ++j) earlier[static_cast<std::size_t>(j)] = j;
        std::shuffle(earlier.begin(), earlier.end(), rng);
        const int limit = std::min(i, max_parents);
        const int k = std::uniform_int_distribution<int>(0, limit)(rng);
        for (int j = 0; j < k; ++j)
            spec.cpt.parent_ids.push_back("N" + std::to_string(earlier[static_cast<std::size_t>(j)]));

        const std::size_t rows = std::size_t{1} << static_cast<std::size_t>(k);
        for (std::size_t r = 0; r < rows; ++r)
            spec.cpt.rows.push_back(bernoulli_row(uniform_probability(rng)));
        specs.push_back(std::move(spec));
    }
    return build_network(specs);
}

// Random polytree: the undirected skeleton is a tree (node i attaches to one
// earlier node), and each edge gets a random direction.
inline BayesianNetwork random_polytree(std::mt19937& rng, int max_nodes = 10) {
    const int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) {
        const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 0)
            parents[static_cast<std::size_t>(i)].push_back(j);
        else
            parents[static_cast<std::size_t>(j)].push_back(i);
    }

    std::vector<NodeSpec> specs;
    for (int i = 0; i < n; ++i) {
        NodeSpec spec;
        spec.id = "P" + std::to_string(i);
        for (int p : parents[static_cast<std::size_t>(i)])
            spec.cpt.parent_ids.push_back("P" + std::to_string(p));
        const std::size_t rows = std::size_t{1}
                                 << parents[static_cast<std::size_t>(i)].size();
        for (std::size_t r = 0; r < rows; ++r)
            spec.cpt.rows.push_back(bernoulli_row(uniform_probability(rng)));
        specs.push_back(std::move(spec));
    }
    return build_network(specs);
}

// Up to max_items observed nodes, never the target.
inline Assignment random_evidence(std::mt19937& rng, const BayesianNetwork& net,
                                  const std::string& target, int max_items) {
    Assignment evidence;
    const int wanted = std::uniform_int_distribution<int>(0, max_items)(rng);
    std::vector<std::size_t> indices(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) indices[i] = i;
    std::shuffle(indices.begin(), indices.end(), rng);
    for (std::size_t i = 0; i < indices.size() && int(evidence.size()) < wanted; ++i) {
        const std::string& id = net.node(indices[i]).id;
        if (id == target) continue;
        evidence[id] = std::uniform_int_distribution<int>(0, 1)(rng);
    }
    return evidence;
}

} // namespace riskbn::testing

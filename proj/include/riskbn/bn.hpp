#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbn/errors.hpp"

namespace riskbn {

// All variables are binary: state 0 = false, state 1 = true.
using StateIndex = int;

inline constexpr StateIndex kFalse = 0;
inline constexpr StateIndex kTrue = 1;

// Row-sum normalization tolerance for CPT validation.
inline constexpr double kRowSumTolerance = 1e-9;

struct CptRow {
    double p_false = 0.0;
    double p_true = 0.0;
};

// The one way a success probability becomes a row, so equal inputs always
// produce bit-identical rows.
inline CptRow bernoulli_row(double p_true) { return {1.0 - p_true, p_true}; }

// Conditional probability table in canonical row order: rows are indexed by the
// parent-state tuple read as a binary number whose most significant bit is the
// FIRST declared parent.  A node with no parents has exactly one row (its prior).
struct Cpt {
    std::vector<std::string> parent_ids;
    std::vector<CptRow> rows;
};

struct NodeSpec {
    std::string id;
    Cpt cpt;
    std::map<std::string, std::string> metadata; // free-form, never interpreted
};

// Row index for a parent-state tuple given in declared parent order.
// Throws ArityMismatch unless exactly one state per declared parent is supplied.
std::size_t cpt_row_index(const Cpt& cpt, std::span<const StateIndex> parent_states);

// Unchecked variant used on pre-validated state tuples.
std::size_t cpt_row_index_unchecked(std::span<const StateIndex> parent_states);

// Maps node id -> state for (possibly partial) variable assignments.
using Assignment = std::map<std::string, StateIndex, std::less<>>;

// A validated directed acyclic model over binary variables.  Instances are
// immutable; all editing flows produce a fresh network via build_network so the
// invariants are re-established on every change.
class BayesianNetwork {
public:
    struct Node {
        std::string id;
        std::vector<std::size_t> parents; // indices into nodes(), declared order
        std::vector<CptRow> rows;         // canonical row order
        std::map<std::string, std::string> metadata;

        bool is_root() const { return parents.empty(); }
    };

    std::size_t size() const { return nodes_.size(); }
    const Node& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    bool contains(std::string_view id) const;
    // Throws UnknownNode when the id is not present.
    std::size_t index_of(std::string_view id) const;

    // Node indices in a deterministic topological order (declaration order is
    // used to break ties), so parents always precede children.
    const std::vector<std::size_t>& topological_order() const { return topo_order_; }

    // Child indices per node, each list in ascending index order.
    const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }

    // Reconstructs the declaration-order spec list (used by editing flows).
    std::vector<NodeSpec> to_specs() const;

private:
    friend BayesianNetwork build_network(const std::vector<NodeSpec>& specs);

    std::vector<Node> nodes_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<std::size_t> topo_order_;
    std::vector<std::vector<std::size_t>> children_;
};

// Validates the specs and assembles the network.
//   - ids must be unique and match [A-Za-z][A-Za-z0-9_]*
//   - every parent id must name another spec in the list
//   - each CPT must have exactly 2^(parent count) rows
//   - every row must be nonnegative and sum to 1 within kRowSumTolerance
//   - the parent graph must be acyclic
BayesianNetwork build_network(const std::vector<NodeSpec>& specs);

// Probability of one complete assignment under the network's factorization.
// Throws IncompleteAssignment (naming the missing nodes) when any node has no
// state, and UnknownNode when the assignment mentions an id outside the network.
double joint_probability(const BayesianNetwork& net, const Assignment& assignment);

// True when both networks declare the same nodes in the same order with the
// same parent lists and bit-identical CPT rows.  Metadata is ignored.
bool model_equal(const BayesianNetwork& a, const BayesianNetwork& b);

} // namespace riskbn

#include "riskbn/inference.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace riskbn {

const char* to_string(InferenceMode mode) {
    switch (mode) {
        case InferenceMode::Enumeration: return "enumeration";
        case InferenceMode::VariableElimination: return "variable-elimination";
        case InferenceMode::ForwardPropagation: return "forward-propagation";
    }
    return "unknown";
}

namespace {

void check_query(const BayesianNetwork& net, const std::string& target,
                 const Assignment& evidence) {
    net.index_of(target);
    for (const auto& [id, state] : evidence) {
        net.index_of(id);
        if (state != kFalse && state != kTrue)
            throw Error(ErrorKind::BadArgument, id + " state must be 0 or 1");
        if (id == target)
            throw Error(ErrorKind::BadArgument,
                        "evidence must not assign the query target " + target);
    }
}

// ---------------------------------------------------------------------------
// Factors for variable elimination.  Values are laid out with the first
// variable in vars as the most significant bit of the value index.

struct Factor {
    std::vector<std::size_t> vars; // ascending network indices
    std::vector<double> values;    // size 2^vars.size()
};

std::size_t value_index(const Factor& f, const std::vector<StateIndex>& states) {
    std::size_t idx = 0;
    for (std::size_t v : f.vars) idx = idx * 2 + static_cast<std::size_t>(states[v]);
    return idx;
}

// One factor per node over {parents, node}, filled from the CPT.
Factor node_factor(const BayesianNetwork& net, std::size_t i) {
    const auto& node = net.node(i);
    Factor f;
    f.vars = node.parents;
    f.vars.push_back(i);
    std::sort(f.vars.begin(), f.vars.end());
    f.values.assign(std::size_t{1} << f.vars.size(), 0.0);

    std::vector<StateIndex> states(net.size(), 0);
    const std::size_t combos = f.values.size();
    for (std::size_t c = 0; c < combos; ++c) {
        for (std::size_t k = 0; k < f.vars.size(); ++k)
            states[f.vars[k]] =
                static_cast<StateIndex>((c >> (f.vars.size() - 1 - k)) & 1);
        std::vector<StateIndex> parent_states;
        parent_states.reserve(node.parents.size());
        for (std::size_t p : node.parents) parent_states.push_back(states[p]);
        const CptRow& row = node.rows[cpt_row_index_unchecked(parent_states)];
        f.values[c] = (states[i] == kTrue) ? row.p_true : row.p_false;
    }
    return f;
}

// Fixes the given variables to their observed states and drops them.
Factor reduce(const Factor& f, const std::vector<StateIndex>& observed) {
    Factor out;
    for (std::size_t v : f.vars)
        if (observed[v] < 0) out.vars.push_back(v);
    if (out.vars.size() == f.vars.size()) return f;

    out.values.assign(std::size_t{1} << out.vars.size(), 0.0);
    std::vector<StateIndex> states(observed.size(), 0);
    for (std::size_t v : f.vars)
        if (observed[v] >= 0) states[v] = observed[v];
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        for (std::size_t k = 0; k < out.vars.size(); ++k)
            states[out.vars[k]] =
                static_cast<StateIndex>((c >> (out.vars.size() - 1 - k)) & 1);
        out.values[c] = f.values[value_index(f, states)];
    }
    return out;
}

Factor multiply(const Factor& a, const Factor& b, std::size_t total_vars) {
    Factor out;
    out.vars.resize(a.vars.size() + b.vars.size());
    auto end = std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(),
                              b.vars.end(), out.vars.begin());
    out.vars.erase(end, out.vars.end());
    out.values.assign(std::size_t{1} << out.vars.size(), 0.0);

    std::vector<StateIndex> states(total_vars, 0);
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        for (std::size_t k = 0; k < out.vars.size(); ++k)
            states[out.vars[k]] =
                static_cast<StateIndex>((c >> (out.vars.size() - 1 - k)) & 1);
        out.values[c] = a.values[value_index(a, states)] *
                        b.values[value_index(b, states)];
    }
    return out;
}

Factor sum_out(const Factor& f, std::size_t var, std::size_t total_vars) {
    Factor out;
    for (std::size_t v : f.vars)
        if (v != var) out.vars.push_back(v);
    out.values.assign(std::size_t{1} << out.vars.size(), 0.0);

    std::vector<StateIndex> states(total_vars, 0);
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        for (std::size_t k = 0; k < out.vars.size(); ++k)
            states[out.vars[k]] =
                static_cast<StateIndex>((c >> (out.vars.size() - 1 - k)) & 1);
        states[var] = kFalse;
        const double lo = f.values[value_index(f, states)];
        states[var] = kTrue;
        const double hi = f.values[value_index(f, states)];
        out.values[c] = lo + hi;
    }
    return out;
}

// Minimum-degree elimination order over the interaction graph induced by the
// factors, excluding the target; ties go to the lexicographically smaller id.
std::vector<std::size_t> elimination_order(const BayesianNetwork& net,
                                           const std::vector<Factor>& factors,
                                           std::size_t target) {
    std::vector<std::set<std::size_t>> adj(net.size());
    std::set<std::size_t> remaining;
    for (const Factor& f : factors)
        for (std::size_t v : f.vars) remaining.insert(v);
    for (const Factor& f : factors)
        for (std::size_t a : f.vars)
            for (std::size_t b : f.vars)
                if (a != b) adj[a].insert(b);

    std::vector<std::size_t> order;
    remaining.erase(target);
    while (!remaining.empty()) {
        std::size_t best = *remaining.begin();
        std::size_t best_degree = adj[best].size();
        for (std::size_t v : remaining) {
            const std::size_t deg = adj[v].size();
            if (deg < best_degree ||
                (deg == best_degree && net.node(v).id < net.node(best).id))
                { best = v; best_degree = deg; }
        }
        order.push_back(best);
        for (std::size_t a : adj[best])
            for (std::size_t b : adj[best])
                if (a != b) adj[a].insert(b);
        for (std::size_t a : adj[best]) adj[a].erase(best);
        remaining.erase(best);
    }
    return order;
}

} // namespace

Distribution query_enumeration(const BayesianNetwork& net, const std::string& target,
                               const Assignment& evidence) {
    check_query(net, target, evidence);

    const std::size_t n = net.size();
    const std::size_t target_idx = net.index_of(target);
    std::vector<StateIndex> states(n, -1);
    for (const auto& [id, state] : evidence) states[net.index_of(id)] = state;

    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < n; ++i)
        if (states[i] < 0) free_vars.push_back(i);

    double mass[2] = {0.0, 0.0};
    const std::size_t combos = std::size_t{1} << free_vars.size();
    std::vector<StateIndex> parent_states;
    for (std::size_t c = 0; c < combos; ++c) {
        for (std::size_t k = 0; k < free_vars.size(); ++k)
            states[free_vars[k]] = static_cast<StateIndex>((c >> k) & 1);
        double prob = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& node = net.node(i);
            parent_states.clear();
            for (std::size_t p : node.parents) parent_states.push_back(states[p]);
            const CptRow& row = node.rows[cpt_row_index_unchecked(parent_states)];
            prob *= (states[i] == kTrue) ? row.p_true : row.p_false;
        }
        mass[states[target_idx]] += prob;
    }

    const double norm = mass[0] + mass[1];
    if (norm <= 0.0)
        throw Error(ErrorKind::ZeroProbabilityEvidence,
                    "evidence has probability zero");
    return {mass[0] / norm, mass[1] / norm};
}

Distribution query_ve(const BayesianNetwork& net, const std::string& target,
                      const Assignment& evidence) {
    check_query(net, target, evidence);

    const std::size_t target_idx = net.index_of(target);
    std::vector<StateIndex> observed(net.size(), -1);
    for (const auto& [id, state] : evidence) observed[net.index_of(id)] = state;

    std::vector<Factor> factors;
    factors.reserve(net.size());
    for (std::size_t i = 0; i < net.size(); ++i)
        factors.push_back(reduce(node_factor(net, i), observed));

    for (std::size_t var : elimination_order(net, factors, target_idx)) {
        Factor product;
        product.values = {1.0};
        std::vector<Factor> rest;
        for (Factor& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), var))
                product = multiply(product, f, net.size());
            else
                rest.push_back(std::move(f));
        }
        rest.push_back(sum_out(product, var, net.size()));
        factors = std::move(rest);
    }

    Factor result;
    result.values = {1.0};
    for (const Factor& f : factors) result = multiply(result, f, net.size());

    std::vector<StateIndex> states(net.size(), 0);
    states[target_idx] = kFalse;
    const double lo = result.values[value_index(result, states)];
    states[target_idx] = kTrue;
    const double hi = result.values[value_index(result, states)];
    const double norm = lo + hi;
    if (norm <= 0.0)
        throw Error(ErrorKind::ZeroProbabilityEvidence,
                    "evidence has probability zero");
    return {lo / norm, hi / norm};
}

std::map<std::string, Distribution> forward_propagate(const BayesianNetwork& net) {
    std::vector<double> p_true(net.size(), 0.0);
    std::vector<double> p_false(net.size(), 0.0);

    for (std::size_t i : net.topological_order()) {
        const auto& node = net.node(i);
        const std::size_t k = node.parents.size();
        double lo = 0.0;
        double hi = 0.0;
        for (std::size_t row = 0; row < node.rows.size(); ++row) {
            double weight = 1.0;
            for (std::size_t b = 0; b < k; ++b) {
                const std::size_t parent = node.parents[b];
                const bool parent_true = ((row >> (k - 1 - b)) & 1) != 0;
                weight *= parent_true ? p_true[parent] : p_false[parent];
            }
            lo += weight * node.rows[row].p_false;
            hi += weight * node.rows[row].p_true;
        }
        p_false[i] = lo;
        p_true[i] = hi;
    }

    std::map<std::string, Distribution> out;
    for (std::size_t i = 0; i < net.size(); ++i)
        out[net.node(i).id] = {p_false[i], p_true[i]};
    return out;
}

std::map<std::string, Distribution> marginals_all(const BayesianNetwork& net,
                                                  InferenceMode mode) {
    if (mode == InferenceMode::ForwardPropagation) return forward_propagate(net);

    std::map<std::string, Distribution> out;
    for (const auto& node : net.nodes()) {
        out[node.id] = (mode == InferenceMode::Enumeration)
                           ? query_enumeration(net, node.id, {})
                           : query_ve(net, node.id, {});
    }
    return out;
}

} // namespace riskbn

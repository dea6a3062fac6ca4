#pragma once

#include <map>
#include <string>

#include "riskbn/bn.hpp"

namespace riskbn {

struct Distribution {
    double p_false = 0.0;
    double p_true = 0.0;
};

enum class InferenceMode {
    Enumeration,           // brute-force joint summation; the reference oracle
    VariableElimination,   // exact, practical for larger networks
    ForwardPropagation,    // top-down pass assuming independent parents
};

const char* to_string(InferenceMode mode);

// P(target | evidence) by summing the full joint.  Exponential in node count;
// kept as the ground-truth engine the faster paths are checked against.
Distribution query_enumeration(const BayesianNetwork& net, const std::string& target,
                               const Assignment& evidence);

// P(target | evidence) by variable elimination.  The elimination order picks
// the minimum-degree variable of the current interaction graph (the moralized
// graph restricted to the surviving variables), breaking ties by node id.
Distribution query_ve(const BayesianNetwork& net, const std::string& target,
                      const Assignment& evidence);

// Marginals for every node by one pass in topological order, treating the
// parents of each node as independent.  Exact on polytrees; approximate when
// parents share an ancestor.  Takes no evidence by design.
std::map<std::string, Distribution> forward_propagate(const BayesianNetwork& net);

// Evidence-free marginals for every node under the chosen engine.
std::map<std::string, Distribution> marginals_all(const BayesianNetwork& net,
                                                  InferenceMode mode);

} // namespace riskbn

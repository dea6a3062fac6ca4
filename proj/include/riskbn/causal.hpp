#pragma once

#include <map>
#include <string>
#include <vector>

#include "riskbn/bn.hpp"

namespace riskbn {

// Forced states for do-style interventions, keyed by node id.
using Intervention = std::map<std::string, StateIndex, std::less<>>;

// Severs every incoming edge of each intervened node and pins the node to its
// forced state with a point-mass prior.  All other CPTs are untouched; the
// result is revalidated from scratch.
BayesianNetwork mutilate(const BayesianNetwork& net, const Intervention& intervention);

// P(target = true) in the mutilated network, by exact inference.
double causal_effect(const BayesianNetwork& net, const std::string& target,
                     const Intervention& intervention);

struct InterventionRow {
    std::string node;
    double posterior_p_true = 0.0; // evidence-free exact marginal of the node
    double do_result = 0.0;        // P(target=1 | do(node=1))
    double baseline_delta = 0.0;   // do_result - baseline P(target=1)
    double posterior_delta = 0.0;      // do_result - posterior_p_true
};

struct InterventionReport {
    std::string target;
    double baseline = 0.0; // exact P(target=1) with no intervention
    std::vector<InterventionRow> rows; // baseline_delta descending
};

// One row per non-target node, each forced true in isolation.
InterventionReport intervention_sweep(const BayesianNetwork& net,
                                      const std::string& target);

} // namespace riskbn

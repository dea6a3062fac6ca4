#pragma once

#include <string>
#include <vector>

#include "riskbn/bn.hpp"
#include "riskbn/inference.hpp"

namespace riskbn {

// Tuning for the one-at-a-time perturbation sweep.  Scores are recomputed with
// exact inference; use_forward switches to the propagation engine for
// comparison experiments.
struct SensitivityConfig {
    std::string target;
    double delta = 0.1;      // nudge applied to each probability, in (0,1)
    double prior_cap = 0.99; // perturbed root priors stop here
    double row_low = 0.01;   // perturbed CPT entries stay inside [row_low, row_high]
    double row_high = 0.99;
    bool use_forward = false;
};

// New network with the root's prior moved to min(p + delta, prior_cap).
BayesianNetwork perturb_prior(const BayesianNetwork& net, const std::string& root,
                              const SensitivityConfig& config);

// New network with one CPT row of a non-root node moved to
// clamp(p + delta, row_low, row_high); every other row is untouched.
BayesianNetwork perturb_cpt_row(const BayesianNetwork& net, const std::string& node,
                                std::size_t row, const SensitivityConfig& config);

enum class NodeRole { Root, Intermediate };

const char* to_string(NodeRole role);

struct SensitivityScore {
    std::string node;
    NodeRole role = NodeRole::Root;
    double score = 0.0; // roots: |perturbed - baseline|; others: mean over rows
};

struct SensitivityReport {
    std::string target;
    double baseline = 0.0;
    double delta = 0.1;
    bool used_forward = false;
    std::vector<SensitivityScore> scores; // descending, ties by id
};

// Perturbs every node one edit at a time (each edit starts again from the
// pristine network) and measures the shift in P(target = true).
SensitivityReport sensitivity_sweep(const BayesianNetwork& net,
                                    const SensitivityConfig& config);

} // namespace riskbn

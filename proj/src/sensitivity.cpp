#include "riskbn/sensitivity.hpp"

#include <algorithm>
#include <cmath>

namespace riskbn {

const char* to_string(NodeRole role) {
    return role == NodeRole::Root ? "root" : "intermediate";
}

namespace {

void check_config(const SensitivityConfig& config) {
    if (!(config.delta > 0.0 && config.delta < 1.0))
        throw Error(ErrorKind::BadArgument, "delta must be in (0, 1)");
    if (!(config.prior_cap > 0.0 && config.prior_cap < 1.0))
        throw Error(ErrorKind::BadArgument, "prior_cap must be in (0, 1)");
    if (!(config.row_low > 0.0 && config.row_low < config.row_high &&
          config.row_high < 1.0))
        throw Error(ErrorKind::BadArgument,
                    "row bounds must satisfy 0 < row_low < row_high < 1");
}

double target_p_true(const BayesianNetwork& net, const SensitivityConfig& config) {
    if (config.use_forward)
        return forward_propagate(net).at(config.target).p_true;
    return query_ve(net, config.target, {}).p_true;
}

} // namespace

BayesianNetwork perturb_prior(const BayesianNetwork& net, const std::string& root,
                              const SensitivityConfig& config) {
    check_config(config);
    const std::size_t idx = net.index_of(root);
    if (!net.node(idx).is_root())
        throw Error(ErrorKind::NotARoot, root);

    std::vector<NodeSpec> specs = net.to_specs();
    const double p = specs[idx].cpt.rows[0].p_true;
    specs[idx].cpt.rows[0] = bernoulli_row(std::min(p + config.delta, config.prior_cap));
    return build_network(specs);
}

BayesianNetwork perturb_cpt_row(const BayesianNetwork& net, const std::string& node,
                                std::size_t row, const SensitivityConfig& config) {
    check_config(config);
    const std::size_t idx = net.index_of(node);
    if (net.node(idx).is_root())
        throw Error(ErrorKind::NotIntermediate, node);
    if (row >= net.node(idx).rows.size())
        throw Error(ErrorKind::BadRowIndex,
                    node + " row " + std::to_string(row));

    std::vector<NodeSpec> specs = net.to_specs();
    const double p = specs[idx].cpt.rows[row].p_true;
    const double moved = std::clamp(p + config.delta, config.row_low, config.row_high);
    specs[idx].cpt.rows[row] = bernoulli_row(moved);
    return build_network(specs);
}

SensitivityReport sensitivity_sweep(const BayesianNetwork& net,
                                    const SensitivityConfig& config) {
    check_config(config);
    net.index_of(config.target);

    SensitivityReport report;
    report.target = config.target;
    report.delta = config.delta;
    report.used_forward = config.use_forward;
    report.baseline = target_p_true(net, config);

    for (const auto& node : net.nodes()) {
        SensitivityScore entry;
        entry.node = node.id;
        if (node.is_root()) {
            entry.role = NodeRole::Root;
            const BayesianNetwork moved = perturb_prior(net, node.id, config);
            entry.score = std::abs(target_p_true(moved, config) - report.baseline);
        } else {
            entry.role = NodeRole::Intermediate;
            double total = 0.0;
            for (std::size_t r = 0; r < node.rows.size(); ++r) {
                const BayesianNetwork moved = perturb_cpt_row(net, node.id, r, config);
                total += std::abs(target_p_true(moved, config) - report.baseline);
            }
            entry.score = total / static_cast<double>(node.rows.size());
        }
        report.scores.push_back(std::move(entry));
    }

    std::sort(report.scores.begin(), report.scores.end(),
              [](const SensitivityScore& a, const SensitivityScore& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.node < b.node;
              });
    return report;
}

} // namespace riskbn

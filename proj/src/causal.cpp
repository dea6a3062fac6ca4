#include "riskbn/causal.hpp"

#include <algorithm>

#include "riskbn/inference.hpp"

namespace riskbn {

BayesianNetwork mutilate(const BayesianNetwork& net, const Intervention& intervention) {
    if (intervention.empty())
        throw Error(ErrorKind::BadArgument, "intervention must set at least one node");
    for (const auto& [id, state] : intervention) {
        net.index_of(id);
        if (state != kFalse && state != kTrue)
            throw Error(ErrorKind::BadArgument, id + " state must be 0 or 1");
    }

    std::vector<NodeSpec> specs = net.to_specs();
    for (NodeSpec& spec : specs) {
        auto it = intervention.find(spec.id);
        if (it == intervention.end()) continue;
        spec.cpt.parent_ids.clear();
        spec.cpt.rows = {it->second == kTrue ? CptRow{0.0, 1.0} : CptRow{1.0, 0.0}};
    }
    return build_network(specs);
}

double causal_effect(const BayesianNetwork& net, const std::string& target,
                     const Intervention& intervention) {
    net.index_of(target);
    if (intervention.count(target))
        throw Error(ErrorKind::BadArgument,
                    "intervention must not set the query target " + target);
    const BayesianNetwork cut = mutilate(net, intervention);
    return query_ve(cut, target, {}).p_true;
}

InterventionReport intervention_sweep(const BayesianNetwork& net,
                                      const std::string& target) {
    net.index_of(target);

    InterventionReport report;
    report.target = target;
    report.baseline = query_ve(net, target, {}).p_true;

    for (const auto& node : net.nodes()) {
        if (node.id == target) continue;
        InterventionRow row;
        row.node = node.id;
        row.posterior_p_true = query_ve(net, node.id, {}).p_true;
        row.do_result = causal_effect(net, target, {{node.id, kTrue}});
        row.baseline_delta = row.do_result - report.baseline;
        row.posterior_delta = row.do_result - row.posterior_p_true;
        report.rows.push_back(std::move(row));
    }

    std::sort(report.rows.begin(), report.rows.end(),
              [](const InterventionRow& a, const InterventionRow& b) {
                  if (a.baseline_delta != b.baseline_delta)
                      return a.baseline_delta > b.baseline_delta;
                  return a.node < b.node;
              });
    return report;
}

} // namespace riskbn

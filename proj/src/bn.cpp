#include "riskbn/bn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>
#include <sstream>

namespace riskbn {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DuplicateNodeId: return "DuplicateNodeId";
        case ErrorKind::InvalidNodeId: return "InvalidNodeId";
        case ErrorKind::UnknownParent: return "UnknownParent";
        case ErrorKind::BadCptShape: return "BadCptShape";
        case ErrorKind::UnnormalizedRow: return "UnnormalizedRow";
        case ErrorKind::CycleDetected: return "CycleDetected";
        case ErrorKind::UnknownNode: return "UnknownNode";
        case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::ZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
        case ErrorKind::EvidenceUnsupported: return "EvidenceUnsupported";
        case ErrorKind::BadStrideLetter: return "BadStrideLetter";
        case ErrorKind::BadSegmentCount: return "BadSegmentCount";
        case ErrorKind::NonNumericThreatNumber: return "NonNumericThreatNumber";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnresolvedChild: return "UnresolvedChild";
        case ErrorKind::MultipleRoots: return "MultipleRoots";
        case ErrorKind::NoRoot: return "NoRoot";
        case ErrorKind::BadOverrideLength: return "BadOverrideLength";
        case ErrorKind::NotARoot: return "NotARoot";
        case ErrorKind::NotIntermediate: return "NotIntermediate";
        case ErrorKind::BadRowIndex: return "BadRowIndex";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorKind::BadArgument: return "BadArgument";
    }
    return "UnknownError";
}

namespace {

bool valid_node_id(std::string_view id) {
    if (id.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(id.front()))) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

std::size_t cpt_row_index_unchecked(std::span<const StateIndex> parent_states) {
    std::size_t row = 0;
    for (StateIndex s : parent_states) row = row * 2 + static_cast<std::size_t>(s);
    return row;
}

std::size_t cpt_row_index(const Cpt& cpt, std::span<const StateIndex> parent_states) {
    if (parent_states.size() != cpt.parent_ids.size()) {
        std::ostringstream msg;
        msg << "expected " << cpt.parent_ids.size() << " parent state(s), got "
            << parent_states.size();
        throw Error(ErrorKind::ArityMismatch, msg.str());
    }
    for (StateIndex s : parent_states) {
        if (s != kFalse && s != kTrue)
            throw Error(ErrorKind::BadArgument, "parent state must be 0 or 1");
    }
    return cpt_row_index_unchecked(parent_states);
}

bool BayesianNetwork::contains(std::string_view id) const {
    return index_.find(id) != index_.end();
}

std::size_t BayesianNetwork::index_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw Error(ErrorKind::UnknownNode, std::string(id));
    return it->second;
}

std::vector<NodeSpec> BayesianNetwork::to_specs() const {
    std::vector<NodeSpec> specs;
    specs.reserve(nodes_.size());
    for (const Node& n : nodes_) {
        NodeSpec spec;
        spec.id = n.id;
        for (std::size_t p : n.parents) spec.cpt.parent_ids.push_back(nodes_[p].id);
        spec.cpt.rows = n.rows;
        spec.metadata = n.metadata;
        specs.push_back(std::move(spec));
    }
    return specs;
}

BayesianNetwork build_network(const std::vector<NodeSpec>& specs) {
    if (specs.empty())
        throw Error(ErrorKind::BadArgument, "network needs at least one node");

    BayesianNetwork net;
    net.nodes_.reserve(specs.size());

    for (std::size_t i = 0; i < specs.size(); ++i) {
        const NodeSpec& spec = specs[i];
        if (!valid_node_id(spec.id))
            throw Error(ErrorKind::InvalidNodeId, "'" + spec.id + "'");
        if (!net.index_.emplace(spec.id, i).second)
            throw Error(ErrorKind::DuplicateNodeId, spec.id);
        BayesianNetwork::Node node;
        node.id = spec.id;
        node.rows = spec.cpt.rows;
        node.metadata = spec.metadata;
        net.nodes_.push_back(std::move(node));
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        const NodeSpec& spec = specs[i];
        BayesianNetwork::Node& node = net.nodes_[i];
        for (const std::string& pid : spec.cpt.parent_ids) {
            auto it = net.index_.find(pid);
            if (it == net.index_.end())
                throw Error(ErrorKind::UnknownParent,
                            spec.id + " references '" + pid + "'");
            node.parents.push_back(it->second);
        }

        const std::size_t expected_rows = std::size_t{1} << node.parents.size();
        if (node.rows.size() != expected_rows) {
            std::ostringstream msg;
            msg << spec.id << ": expected " << expected_rows << " row(s), got "
                << node.rows.size();
            throw Error(ErrorKind::BadCptShape, msg.str());
        }

        for (std::size_t r = 0; r < node.rows.size(); ++r) {
            const CptRow& row = node.rows[r];
            const double sum = row.p_false + row.p_true;
            if (row.p_false < 0.0 || row.p_true < 0.0 ||
                std::abs(sum - 1.0) > kRowSumTolerance) {
                std::ostringstream msg;
                msg << spec.id << " row " << r;
                throw Error(ErrorKind::UnnormalizedRow, msg.str());
            }
        }
    }

    // Kahn's algorithm, visiting ready nodes in declaration order so the
    // resulting topological order is deterministic.
    std::vector<std::size_t> indegree(net.nodes_.size(), 0);
    net.children_.assign(net.nodes_.size(), {});
    for (std::size_t i = 0; i < net.nodes_.size(); ++i) {
        indegree[i] = net.nodes_[i].parents.size();
        for (std::size_t p : net.nodes_[i].parents) net.children_[p].push_back(i);
    }
    for (auto& kids : net.children_) std::sort(kids.begin(), kids.end());

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < net.nodes_.size(); ++i)
        if (indegree[i] == 0) ready.push(i);

    net.topo_order_.reserve(net.nodes_.size());
    while (!ready.empty()) {
        const std::size_t u = ready.top();
        ready.pop();
        net.topo_order_.push_back(u);
        for (std::size_t v : net.children_[u])
            if (--indegree[v] == 0) ready.push(v);
    }
    if (net.topo_order_.size() != net.nodes_.size()) {
        std::string participant;
        for (std::size_t i = 0; i < net.nodes_.size(); ++i) {
            if (indegree[i] > 0 &&
                (participant.empty() || net.nodes_[i].id < participant))
                participant = net.nodes_[i].id;
        }
        throw Error(ErrorKind::CycleDetected, "involving " + participant);
    }

    return net;
}

double joint_probability(const BayesianNetwork& net, const Assignment& assignment) {
    for (const auto& [id, state] : assignment) {
        if (!net.contains(id))
            throw Error(ErrorKind::UnknownNode, id);
        if (state != kFalse && state != kTrue)
            throw Error(ErrorKind::BadArgument, id + " state must be 0 or 1");
    }

    std::vector<StateIndex> states(net.size(), -1);
    for (const auto& [id, state] : assignment) states[net.index_of(id)] = state;

    std::string missing;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (states[i] < 0) {
            if (!missing.empty()) missing += ", ";
            missing += net.node(i).id;
        }
    }
    if (!missing.empty())
        throw Error(ErrorKind::IncompleteAssignment, "missing " + missing);

    double prob = 1.0;
    std::vector<StateIndex> parent_states;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& node = net.node(i);
        parent_states.clear();
        for (std::size_t p : node.parents) parent_states.push_back(states[p]);
        const CptRow& row = node.rows[cpt_row_index_unchecked(parent_states)];
        prob *= (states[i] == kTrue) ? row.p_true : row.p_false;
    }
    return prob;
}

bool model_equal(const BayesianNetwork& a, const BayesianNetwork& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& na = a.node(i);
        const auto& nb = b.node(i);
        if (na.id != nb.id) return false;
        if (na.parents.size() != nb.parents.size()) return false;
        for (std::size_t p = 0; p < na.parents.size(); ++p)
            if (a.node(na.parents[p]).id != b.node(nb.parents[p]).id) return false;
        if (na.rows.size() != nb.rows.size()) return false;
        for (std::size_t r = 0; r < na.rows.size(); ++r)
            if (na.rows[r].p_false != nb.rows[r].p_false ||
                na.rows[r].p_true != nb.rows[r].p_true)
                return false;
    }
    return true;
}

} // namespace riskbn

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "riskbn/bn.hpp"

namespace riskbn {

enum class StrideCategory {
    Spoofing,
    Tampering,
    Repudiation,
    InformationDisclosure,
    DenialOfService,
    ElevationOfPrivilege,
};

char stride_letter(StrideCategory category);
const char* to_string(StrideCategory category);
std::optional<StrideCategory> stride_from_letter(char letter);

// Threat identifiers follow <letter>_<interaction>_<number>_<description>,
// e.g. "S_OBC_1_ProcessImpersonation".
struct ThreatId {
    StrideCategory category = StrideCategory::Spoofing;
    std::string interaction;
    int number = 0;
    std::string description;

    std::string text() const;
};

ThreatId parse_threat_id(std::string_view text);

// Ratings on the 1..3 scale used to seed leaf priors.
struct DreadScore {
    int reproducibility = 1;
    int exploitability = 1;
    int discoverability = 1;
};

struct DreadWeights {
    double exploitability = 0.5;
    double discoverability = 0.3;
    double reproducibility = 0.2;
};

// Likelihood = wE*(E/3) + wD*(D/3) + wR*(R/3), rounded to two decimals so the
// resulting priors are stable, human-readable probabilities.
double dread_likelihood(const DreadScore& score, const DreadWeights& weights = {});

enum class GateKind { And, Or };

const char* to_string(GateKind kind);

struct LeafNode {
    ThreatId threat;
    DreadScore dread;
};

struct GateNode {
    GateKind kind = GateKind::Or;
    std::vector<std::string> children; // declared order = CPT parent order
    // Probability of the gate firing per canonical parent-state row; when
    // absent the gate uses the strict AND/OR truth table.
    std::optional<std::vector<double>> cpt_override;
};

struct AttackTreeNode {
    std::string name; // leaf: canonical threat-id text; gate: its identifier
    std::variant<LeafNode, GateNode> content;

    bool is_leaf() const { return std::holds_alternative<LeafNode>(content); }
    const LeafNode& leaf() const { return std::get<LeafNode>(content); }
    const GateNode& gate() const { return std::get<GateNode>(content); }
};

// A rooted, acyclic goal structure.  Shared subtrees are allowed: one node may
// be referenced by several gates, so this is a DAG presented in tree syntax.
struct AttackTree {
    std::vector<AttackTreeNode> nodes; // declaration order
    std::size_t root = 0;              // index of the unique unreferenced gate

    const AttackTreeNode* find(std::string_view name) const;
};

// Parses the textual tree format:
//   # comment
//   leaf T_OBC_2_CommandTampering dread(R=2, E=2, D=2)
//   gate Outcome OR { A, B } cpt [0.05, 0.30, 0.20, 0.60]
// Commas between children are optional.  Gates may appear before the nodes
// they reference.  The root is the unique gate never referenced as a child.
AttackTree parse_attack_tree(std::string_view source);

// Rewrites the tree as a network: leaves become prior nodes with
// p_true = dread_likelihood(score); gates become CPT nodes over their children,
// using the override when present and the strict truth table otherwise.
BayesianNetwork transform_to_bn(const AttackTree& tree);

// Advisory messages for overrides that are non-monotone or sit oddly with the
// declared gate kind.  Never an error; an empty result means nothing to note.
std::vector<std::string> lint_gate_overrides(const AttackTree& tree);

} // namespace riskbn

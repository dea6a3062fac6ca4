#pragma once

#include <string>

#include "riskbn/attack_tree.hpp"
#include "riskbn/bn.hpp"

namespace riskbn {

// Built-in in-vehicle-infotainment (IVI) threat model: ten rated leaf threats
// feeding eight gates, with Safety_Critical_System_Compromise at the top.
// The network and the tree source describe the same model; the network is
// assembled directly from the numeric tables so the tree-to-network transform
// can be checked against it.

inline constexpr const char* kIviModelName = "ivi";
inline constexpr const char* kIviTarget = "Safety_Critical_System_Compromise";

const std::string& ivi_tree_source();
AttackTree ivi_attack_tree();
BayesianNetwork ivi_network();

} // namespace riskbn

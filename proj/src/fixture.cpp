#include "riskbn/fixture.hpp"

#include <initializer_list>

namespace riskbn {

namespace {

NodeSpec leaf(const char* id, double prior, const char* dread, const char* stride,
              const char* mitre) {
    NodeSpec spec;
    spec.id = id;
    spec.cpt.rows = {bernoulli_row(prior)};
    spec.metadata["dread"] = dread;
    spec.metadata["stride"] = stride;
    spec.metadata["mitre"] = mitre;
    return spec;
}

NodeSpec gate(const char* id, const char* kind, std::initializer_list<const char*> parents,
              std::initializer_list<double> rows) {
    NodeSpec spec;
    spec.id = id;
    for (const char* p : parents) spec.cpt.parent_ids.emplace_back(p);
    for (double p : rows) spec.cpt.rows.push_back(bernoulli_row(p));
    spec.metadata["gate"] = kind;
    return spec;
}

} // namespace

BayesianNetwork ivi_network() {
    std::vector<NodeSpec> specs;

    specs.push_back(leaf("T_BluetoothtoOBC_26_UnauthorizedControl", 0.67,
                         "R=2,E=2,D=2", "Tampering", "T1546"));
    specs.push_back(leaf("D_BluetoothtoOBC_24_OverloadAttack", 0.73,
                         "R=3,E=2,D=2", "DenialOfService", "T1499"));
    specs.push_back(leaf("D_WiFitoOBC_16_ServiceDenial", 0.73,
                         "R=3,E=2,D=2", "DenialOfService", "T1498"));
    specs.push_back(leaf("T_WiFitoOBC_18_DataAlteration", 0.83,
                         "R=2,E=3,D=2", "Tampering", "T1565.001"));
    specs.push_back(leaf("I_CBtoOBC_33_InfoSniffing", 0.67,
                         "R=2,E=2,D=2", "InformationDisclosure", "T1040"));
    specs.push_back(leaf("T_CBtoOBC_34_MessageAlteration", 0.67,
                         "R=2,E=2,D=2", "Tampering", "T1565.002"));
    specs.push_back(leaf("R_OBC_3_MaliciousExploitation", 0.67,
                         "R=2,E=2,D=2", "Repudiation", "T1203"));
    specs.push_back(leaf("T_OBC_2_CommandTampering", 0.67,
                         "R=2,E=2,D=2", "Tampering", "T1565"));
    specs.push_back(leaf("I_OBC_4_PrivacyBreach", 0.67,
                         "R=2,E=2,D=2", "InformationDisclosure", "T1530"));
    specs.push_back(leaf("E_OBC_6_PrivilegedOperations", 0.77,
                         "R=2,E=2,D=3", "ElevationOfPrivilege", "T1078"));

    specs.push_back(gate("I_BluetoothtoOBC_25_DataSniffing", "OR",
                         {"T_BluetoothtoOBC_26_UnauthorizedControl",
                          "D_BluetoothtoOBC_24_OverloadAttack"},
                         {0.20, 0.60, 0.80, 0.90}));
    specs.back().metadata["stride"] = "InformationDisclosure";
    specs.back().metadata["mitre"] = "T1040";

    specs.push_back(gate("I_WiFitoOBC_17_CredentialTheft", "OR",
                         {"D_WiFitoOBC_16_ServiceDenial",
                          "T_WiFitoOBC_18_DataAlteration"},
                         {0.08, 0.70, 0.25, 0.90}));
    specs.back().metadata["stride"] = "InformationDisclosure";
    specs.back().metadata["mitre"] = "T1555";

    specs.push_back(gate("S_OBC_1_ProcessImpersonation", "OR",
                         {"R_OBC_3_MaliciousExploitation", "T_OBC_2_CommandTampering"},
                         {0.10, 0.85, 0.85, 0.98}));
    specs.back().metadata["stride"] = "Spoofing";
    specs.back().metadata["mitre"] = "T1055.012";

    specs.push_back(gate("D_OBC_5_ServiceDisruption", "OR",
                         {"E_OBC_6_PrivilegedOperations", "I_OBC_4_PrivacyBreach"},
                         {0.20, 0.60, 0.85, 0.95}));
    specs.back().metadata["stride"] = "DenialOfService";

    specs.push_back(gate("Initial_Recon", "OR",
                         {"I_BluetoothtoOBC_25_DataSniffing",
                          "I_WiFitoOBC_17_CredentialTheft"},
                         {0.10, 0.75, 0.75, 0.95}));

    specs.push_back(gate("CAN_Control", "AND",
                         {"I_CBtoOBC_33_InfoSniffing", "S_OBC_1_ProcessImpersonation",
                          "T_CBtoOBC_34_MessageAlteration"},
                         {0.05, 0.30, 0.20, 0.60, 0.15, 0.70, 0.50, 0.95}));

    specs.push_back(gate("Disrupt_Vehicle_Functionality", "OR",
                         {"D_OBC_5_ServiceDisruption", "T_OBC_2_CommandTampering"},
                         {0.10, 0.75, 0.80, 0.95}));

    specs.push_back(gate("Safety_Critical_System_Compromise", "OR",
                         {"CAN_Control", "Initial_Recon",
                          "Disrupt_Vehicle_Functionality"},
                         {0.05, 0.80, 0.75, 0.95, 0.75, 0.95, 0.95, 0.99}));

    return build_network(specs);
}

const std::string& ivi_tree_source() {
    static const std::string source = R"(# In-vehicle infotainment threat model.
# Ten rated leaf threats feed eight gates; the root gate models a
# safety-critical system compromise.

leaf T_BluetoothtoOBC_26_UnauthorizedControl dread(R=2, E=2, D=2)
leaf D_BluetoothtoOBC_24_OverloadAttack      dread(R=3, E=2, D=2)
leaf D_WiFitoOBC_16_ServiceDenial            dread(R=3, E=2, D=2)
leaf T_WiFitoOBC_18_DataAlteration           dread(R=2, E=3, D=2)
leaf I_CBtoOBC_33_InfoSniffing               dread(R=2, E=2, D=2)
leaf T_CBtoOBC_34_MessageAlteration          dread(R=2, E=2, D=2)
leaf R_OBC_3_MaliciousExploitation           dread(R=2, E=2, D=2)
leaf T_OBC_2_CommandTampering                dread(R=2, E=2, D=2)
leaf I_OBC_4_PrivacyBreach                   dread(R=2, E=2, D=2)
leaf E_OBC_6_PrivilegedOperations            dread(R=2, E=2, D=3)

gate I_BluetoothtoOBC_25_DataSniffing OR {
    T_BluetoothtoOBC_26_UnauthorizedControl,
    D_BluetoothtoOBC_24_OverloadAttack
} cpt [0.20, 0.60, 0.80, 0.90]

gate I_WiFitoOBC_17_CredentialTheft OR {
    D_WiFitoOBC_16_ServiceDenial,
    T_WiFitoOBC_18_DataAlteration
} cpt [0.08, 0.70, 0.25, 0.90]

gate S_OBC_1_ProcessImpersonation OR {
    R_OBC_3_MaliciousExploitation,
    T_OBC_2_CommandTampering
} cpt [0.10, 0.85, 0.85, 0.98]

gate D_OBC_5_ServiceDisruption OR {
    E_OBC_6_PrivilegedOperations,
    I_OBC_4_PrivacyBreach
} cpt [0.20, 0.60, 0.85, 0.95]

gate Initial_Recon OR {
    I_BluetoothtoOBC_25_DataSniffing,
    I_WiFitoOBC_17_CredentialTheft
} cpt [0.10, 0.75, 0.75, 0.95]

gate CAN_Control AND {
    I_CBtoOBC_33_InfoSniffing,
    S_OBC_1_ProcessImpersonation,
    T_CBtoOBC_34_MessageAlteration
} cpt [0.05, 0.30, 0.20, 0.60, 0.15, 0.70, 0.50, 0.95]

gate Disrupt_Vehicle_Functionality OR {
    D_OBC_5_ServiceDisruption,
    T_OBC_2_CommandTampering
} cpt [0.10, 0.75, 0.80, 0.95]

gate Safety_Critical_System_Compromise OR {
    CAN_Control,
    Initial_Recon,
    Disrupt_Vehicle_Functionality
} cpt [0.05, 0.80, 0.75, 0.95, 0.75, 0.95, 0.95, 0.99]
)";
    return source;
}

AttackTree ivi_attack_tree() { return parse_attack_tree(ivi_tree_source()); }

} // namespace riskbn

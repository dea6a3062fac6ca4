#include <doctest.h>

#include <random>
#include <string>

#include "riskbn/attack_tree.hpp"
#include "riskbn/fixture.hpp"
#include "riskbn/inference.hpp"
#include "support.hpp"

using namespace riskbn;

namespace {

template <typename Fn>
ErrorKind caught_kind(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a riskbn::Error");
    return ErrorKind::BadArgument;
}

constexpr const char* kTinyTree = R"(
# smallest useful model: two rated leaves under one gate
leaf S_OBC_1_ProcessImpersonation dread(R=2, E=2, D=2)
leaf T_OBC_2_CommandTampering     dread(R=2, E=3, D=1)
gate Goal OR { S_OBC_1_ProcessImpersonation, T_OBC_2_CommandTampering }
)";

} // namespace

TEST_CASE("threat ids parse into their four segments") {
    const ThreatId id = parse_threat_id("S_OBC_1_ProcessImpersonation");
    CHECK(id.category == StrideCategory::Spoofing);
    CHECK(id.interaction == "OBC");
    CHECK(id.number == 1);
    CHECK(id.description == "ProcessImpersonation");
    CHECK(id.text() == "S_OBC_1_ProcessImpersonation");

    CHECK(parse_threat_id("E_OBC_6_PrivilegedOperations").category ==
          StrideCategory::ElevationOfPrivilege);
}

TEST_CASE("threat ids reject every malformed shape with its own kind") {
    CHECK(caught_kind([] { parse_threat_id("X_OBC_1_Bad"); }) ==
          ErrorKind::BadStrideLetter);
    CHECK(caught_kind([] { parse_threat_id("SS_OBC_1_Bad"); }) ==
          ErrorKind::BadStrideLetter);
    CHECK(caught_kind([] { parse_threat_id("S_OBC_1"); }) ==
          ErrorKind::BadSegmentCount);
    CHECK(caught_kind([] { parse_threat_id("S_OBC_1_Extra_Tail"); }) ==
          ErrorKind::BadSegmentCount);
    CHECK(caught_kind([] { parse_threat_id("S__1_Bad"); }) ==
          ErrorKind::BadSegmentCount);
    CHECK(caught_kind([] { parse_threat_id("S_OBC_x_Bad"); }) ==
          ErrorKind::NonNumericThreatNumber);
    CHECK(caught_kind([] { parse_threat_id("S_OB-C_1_Bad"); }) ==
          ErrorKind::SyntaxError);
}

TEST_CASE("random well-formed threat ids survive a parse/render round trip") {
    std::mt19937 rng(2024);
    const char letters[] = {'S', 'T', 'R', 'I', 'D', 'E'};
    auto segment = [&rng] {
        static const std::string alphabet =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
        const int len = std::uniform_int_distribution<int>(1, 12)(rng);
        std::string out;
        for (int i = 0; i < len; ++i)
            out += alphabet[std::uniform_int_distribution<std::size_t>(
                0, alphabet.size() - 1)(rng)];
        return out;
    };
    for (int trial = 0; trial < 100; ++trial) {
        std::string text(1, letters[std::uniform_int_distribution<int>(0, 5)(rng)]);
        text += "_" + segment();
        text += "_" + std::to_string(std::uniform_int_distribution<int>(0, 999)(rng));
        text += "_" + segment();
        const ThreatId id = parse_threat_id(text);
        CHECK(id.text() == text);
    }
}

TEST_CASE("dread likelihoods reproduce the canonical rating table") {
    CHECK(dread_likelihood({2, 2, 2}) == doctest::Approx(0.67).epsilon(1e-12));
    CHECK(dread_likelihood({3, 2, 2}) == doctest::Approx(0.73).epsilon(1e-12));
    CHECK(dread_likelihood({2, 3, 2}) == doctest::Approx(0.83).epsilon(1e-12));
    CHECK(dread_likelihood({2, 2, 3}) == doctest::Approx(0.77).epsilon(1e-12));
    CHECK(dread_likelihood({3, 3, 3}) == doctest::Approx(1.00).epsilon(1e-12));
    CHECK(dread_likelihood({1, 1, 1}) == doctest::Approx(0.33).epsilon(1e-12));
}

TEST_CASE("dread likelihood is bounded, two-decimal and monotone") {
    for (int r = 1; r <= 3; ++r)
        for (int e = 1; e <= 3; ++e)
            for (int d = 1; d <= 3; ++d) {
                const double p = dread_likelihood({r, e, d});
                CHECK(p >= 0.33);
                CHECK(p <= 1.00);
                // Two decimals exactly: scaling by 100 gives an integer.
                CHECK(p * 100.0 == doctest::Approx(std::round(p * 100.0)).epsilon(1e-9));
                // Raising any single score never lowers the likelihood.
                if (r < 3) CHECK(dread_likelihood({r + 1, e, d}) >= p);
                if (e < 3) CHECK(dread_likelihood({r, e + 1, d}) >= p);
                if (d < 3) CHECK(dread_likelihood({r, e, d + 1}) >= p);
            }
}

TEST_CASE("dread weights are configurable and validated") {
    const DreadWeights exploit_only{1.0, 0.0, 0.0};
    CHECK(dread_likelihood({1, 3, 1}, exploit_only) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dread_likelihood({3, 1, 3}, exploit_only) ==
          doctest::Approx(0.33).epsilon(1e-12));

    CHECK(caught_kind([] { dread_likelihood({0, 2, 2}); }) == ErrorKind::BadArgument);
    CHECK(caught_kind([] { dread_likelihood({2, 4, 2}); }) == ErrorKind::BadArgument);
    CHECK(caught_kind([] {
        dread_likelihood({2, 2, 2}, DreadWeights{0.5, 0.3, 0.1});
    }) == ErrorKind::BadArgument);
    CHECK(caught_kind([] {
        dread_likelihood({2, 2, 2}, DreadWeights{1.5, -0.3, -0.2});
    }) == ErrorKind::BadArgument);
}

TEST_CASE("the tree parser reads leaves, gates, comments and overrides") {
    const AttackTree tree = parse_attack_tree(kTinyTree);
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].is_leaf());
    CHECK(tree.nodes[1].is_leaf());
    CHECK(!tree.nodes[2].is_leaf());
    CHECK(tree.nodes[tree.root].name == "Goal");

    const LeafNode& tampering = tree.nodes[1].leaf();
    CHECK(tampering.dread.reproducibility == 2);
    CHECK(tampering.dread.exploitability == 3);
    CHECK(tampering.dread.discoverability == 1);

    const GateNode& goal = tree.nodes[2].gate();
    CHECK(goal.kind == GateKind::Or);
    REQUIRE(goal.children.size() == 2);
    CHECK(goal.children[0] == "S_OBC_1_ProcessImpersonation");
    CHECK(!goal.cpt_override.has_value());

    CHECK(tree.find("Goal") != nullptr);
    CHECK(tree.find("Missing") == nullptr);
}

TEST_CASE("dread keys may come in any order but each exactly once") {
    const char* reordered = R"(
leaf S_A_1_X dread(D=3, R=1, E=2)
gate G AND { S_A_1_X }
)";
    const AttackTree tree = parse_attack_tree(reordered);
    const LeafNode& leaf = tree.nodes[0].leaf();
    CHECK(leaf.dread.reproducibility == 1);
    CHECK(leaf.dread.exploitability == 2);
    CHECK(leaf.dread.discoverability == 3);

    CHECK(caught_kind([] {
        parse_attack_tree("leaf S_A_1_X dread(R=1, R=2, D=3)\ngate G OR { S_A_1_X }");
    }) == ErrorKind::SyntaxError);
    CHECK(caught_kind([] {
        parse_attack_tree("leaf S_A_1_X dread(R=1, E=2)\ngate G OR { S_A_1_X }");
    }) == ErrorKind::SyntaxError);
}

TEST_CASE("children may be separated by commas or just whitespace") {
    const char* with_commas = R"(
leaf S_A_1_X dread(R=2, E=2, D=2)
leaf T_B_2_Y dread(R=2, E=2, D=2)
gate G OR { S_A_1_X, T_B_2_Y }
)";
    const char* without = R"(
leaf S_A_1_X dread(R=2, E=2, D=2)
leaf T_B_2_Y dread(R=2, E=2, D=2)
gate G OR { S_A_1_X T_B_2_Y }
)";
    CHECK(model_equal(transform_to_bn(parse_attack_tree(with_commas)),
                      transform_to_bn(parse_attack_tree(without))));
}

TEST_CASE("structural problems are rejected with precise kinds") {
    CHECK(caught_kind([] {
        parse_attack_tree("leaf S_A_1_X dread(R=2, E=2, D=2)\n"
                          "leaf S_A_1_X dread(R=2, E=2, D=2)\n"
                          "gate G OR { S_A_1_X }");
    }) == ErrorKind::DuplicateNodeId);

    CHECK(caught_kind([] { parse_attack_tree("gate G OR { Ghost }"); }) ==
          ErrorKind::UnresolvedChild);

    CHECK(caught_kind([] {
        parse_attack_tree("leaf S_A_1_X dread(R=2, E=2, D=2)\n"
                          "gate G OR { S_A_1_X } cpt [0.1, 0.9, 0.5]");
    }) == ErrorKind::BadOverrideLength);

    // Two gates, neither referenced: no unique root.
    CHECK(caught_kind([] {
        parse_attack_tree("leaf S_A_1_X dread(R=2, E=2, D=2)\n"
                          "gate G OR { S_A_1_X }\n"
                          "gate H OR { S_A_1_X }");
    }) == ErrorKind::MultipleRoots);

    // Only leaves: nothing can serve as the root.
    CHECK(caught_kind([] {
        parse_attack_tree("leaf S_A_1_X dread(R=2, E=2, D=2)");
    }) == ErrorKind::NoRoot);

    // Root exists but a reference loop sits underneath it.
    CHECK(caught_kind([] {
        parse_attack_tree("gate Root OR { A }\n"
                          "gate A OR { B }\n"
                          "gate B OR { A }");
    }) == ErrorKind::CycleDetected);

    CHECK(caught_kind([] { parse_attack_tree("gate G OR { }"); }) ==
          ErrorKind::SyntaxError);
    CHECK(caught_kind([] { parse_attack_tree("leaf S_A_1_X dread(R=9, E=2, D=2)\n"
                                             "gate G OR { S_A_1_X }"); }) ==
          ErrorKind::BadArgument);
    CHECK(caught_kind([] { parse_attack_tree("nonsense"); }) ==
          ErrorKind::SyntaxError);
    CHECK(caught_kind([] { parse_attack_tree("gate G XOR { A }"); }) ==
          ErrorKind::SyntaxError);
    CHECK(caught_kind([] {
        parse_attack_tree("gate G OR { A A }\nleaf A dread(R=1, E=1, D=1)");
    }) == ErrorKind::SyntaxError);
}

TEST_CASE("one node may feed several gates") {
    const char* shared = R"(
leaf T_OBC_2_CommandTampering dread(R=2, E=2, D=2)
leaf E_OBC_6_PrivilegedOperations dread(R=2, E=2, D=3)
gate Left OR { T_OBC_2_CommandTampering, E_OBC_6_PrivilegedOperations }
gate Right OR { T_OBC_2_CommandTampering }
gate Top AND { Left, Right }
)";
    const AttackTree tree = parse_attack_tree(shared);
    CHECK(tree.nodes[tree.root].name == "Top");
    const BayesianNetwork net = transform_to_bn(tree);
    // The shared leaf is the parent of both gates.
    const std::size_t leaf_idx = net.index_of("T_OBC_2_CommandTampering");
    CHECK(net.children(leaf_idx).size() == 2);
}

TEST_CASE("strict gates use their boolean truth tables") {
    const char* strict = R"(
leaf S_A_1_X dread(R=3, E=3, D=3)
leaf T_B_2_Y dread(R=3, E=3, D=3)
gate All AND { S_A_1_X, T_B_2_Y }
gate Root OR { All }
)";
    const BayesianNetwork net = transform_to_bn(parse_attack_tree(strict));
    const auto& and_node = net.node(net.index_of("All"));
    REQUIRE(and_node.rows.size() == 4);
    CHECK(and_node.rows[0].p_true == 0.0);
    CHECK(and_node.rows[1].p_true == 0.0);
    CHECK(and_node.rows[2].p_true == 0.0);
    CHECK(and_node.rows[3].p_true == 1.0);

    // With certain leaves, the whole chain is certain.
    CHECK(query_ve(net, "Root", {}).p_true == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strict OR fires unless every child is quiet") {
    std::vector<NodeSpec> specs = {
        riskbn::testing::prior_node("A", 0.0),
        riskbn::testing::prior_node("B", 0.0),
        riskbn::testing::table_node("Either", {"A", "B"}, {0.0, 1.0, 1.0, 1.0}),
    };
    const BayesianNetwork net = build_network(specs);
    CHECK(query_ve(net, "Either", {}).p_true == doctest::Approx(0.0).epsilon(1e-12));

    const char* or_gate = R"(
leaf S_A_1_X dread(R=1, E=1, D=1)
gate Root OR { S_A_1_X }
)";
    const BayesianNetwork from_tree = transform_to_bn(parse_attack_tree(or_gate));
    const auto& root_node = from_tree.node(from_tree.index_of("Root"));
    REQUIRE(root_node.rows.size() == 2);
    CHECK(root_node.rows[0].p_true == 0.0);
    CHECK(root_node.rows[1].p_true == 1.0);
}

TEST_CASE("the transform keeps counts, roles and ratings") {
    const AttackTree tree = parse_attack_tree(kTinyTree);
    const BayesianNetwork net = transform_to_bn(tree);

    CHECK(net.size() == 3); // two leaves + one gate
    for (const auto& node : net.nodes()) {
        if (node.id == "Goal") {
            CHECK(!node.is_root());
            CHECK(node.metadata.at("gate") == "OR");
            REQUIRE(node.parents.size() == 2);
            CHECK(net.node(node.parents[0]).id == "S_OBC_1_ProcessImpersonation");
            CHECK(net.node(node.parents[1]).id == "T_OBC_2_CommandTampering");
        } else {
            CHECK(node.is_root());
        }
    }

    // dread(R=2, E=2, D=2) -> 0.67; dread(R=2, E=3, D=1) -> 0.73
    const auto& spoof = net.node(net.index_of("S_OBC_1_ProcessImpersonation"));
    CHECK(spoof.rows[0].p_true == doctest::Approx(0.67).epsilon(1e-12));
    CHECK(spoof.metadata.at("dread") == "R=2,E=2,D=2");
    CHECK(spoof.metadata.at("stride") == "Spoofing");
    const auto& tamper = net.node(net.index_of("T_OBC_2_CommandTampering"));
    CHECK(tamper.rows[0].p_true == doctest::Approx(0.73).epsilon(1e-12));
    CHECK(tamper.metadata.at("stride") == "Tampering");
}

TEST_CASE("lint flags overrides that contradict their gate kind") {
    // Adding a true child drops the firing probability: non-monotone.
    const char* backwards = R"(
leaf S_A_1_X dread(R=2, E=2, D=2)
leaf T_B_2_Y dread(R=2, E=2, D=2)
gate G OR { S_A_1_X, T_B_2_Y } cpt [0.5, 0.2, 0.6, 0.9]
)";
    const auto notes = lint_gate_overrides(parse_attack_tree(backwards));
    REQUIRE(!notes.empty());
    bool found_monotone_note = false;
    bool found_or_note = false;
    for (const auto& note : notes) {
        if (note.find("non-monotone") != std::string::npos) found_monotone_note = true;
        if (note.find("OR kind") != std::string::npos) found_or_note = true;
    }
    CHECK(found_monotone_note);
    CHECK(found_or_note);

    // An AND gate that mostly fires off a single child.
    const char* leaky_and = R"(
leaf S_A_1_X dread(R=2, E=2, D=2)
leaf T_B_2_Y dread(R=2, E=2, D=2)
gate G AND { S_A_1_X, T_B_2_Y } cpt [0.05, 0.80, 0.10, 0.95]
)";
    const auto and_notes = lint_gate_overrides(parse_attack_tree(leaky_and));
    REQUIRE(!and_notes.empty());
    bool found_single_child = false;
    for (const auto& note : and_notes)
        if (note.find("single child") != std::string::npos) found_single_child = true;
    CHECK(found_single_child);

    // Strict gates and tidy overrides have nothing to report.
    CHECK(lint_gate_overrides(parse_attack_tree(kTinyTree)).empty());
}

TEST_CASE("the bundled model parses clean and matches its direct construction") {
    const AttackTree tree = ivi_attack_tree();
    CHECK(tree.nodes.size() == 18);
    CHECK(tree.nodes[tree.root].name == kIviTarget);
    CHECK(lint_gate_overrides(tree).empty());

    const BayesianNetwork from_tree = transform_to_bn(tree);
    const BayesianNetwork direct = ivi_network();
    CHECK(model_equal(from_tree, direct));

    // Ten rated leaves, eight gates; the AND gate keeps its declared kind.
    std::size_t roots = 0;
    for (const auto& node : direct.nodes()) roots += node.is_root() ? 1 : 0;
    CHECK(roots == 10);
    CHECK(direct.node(direct.index_of("CAN_Control")).metadata.at("gate") == "AND");
    CHECK(direct.node(direct.index_of("Initial_Recon")).metadata.at("gate") == "OR");
}

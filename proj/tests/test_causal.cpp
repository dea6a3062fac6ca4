#include <doctest.h>

#include <cmath>

#include "riskbn/causal.hpp"
#include "riskbn/fixture.hpp"
#include "riskbn/inference.hpp"
#include "support.hpp"

using namespace riskbn;
using namespace riskbn::testing;

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

} // namespace

TEST_CASE("mutilate severs incoming edges and pins the node") {
    const BayesianNetwork net = chain_network();
    const BayesianNetwork cut = mutilate(net, {{"B", kTrue}});

    const auto& b = cut.node(cut.index_of("B"));
    CHECK(b.is_root());
    REQUIRE(b.rows.size() == 1);
    CHECK(b.rows[0].p_true == 1.0);
    CHECK(b.rows[0].p_false == 0.0);

    // Upstream nodes keep their tables; the original network is untouched.
    CHECK(cut.node(cut.index_of("A")).rows[0].p_true == 0.3);
    CHECK(!net.node(net.index_of("B")).is_root());

    const BayesianNetwork cleared = mutilate(net, {{"B", kFalse}});
    CHECK(cleared.node(cleared.index_of("B")).rows[0].p_true == 0.0);
}

TEST_CASE("mutilate validates the intervention") {
    const BayesianNetwork net = chain_network();
    CHECK(caught_kind([&] { mutilate(net, {}); }) == ErrorKind::BadArgument);
    CHECK(caught_kind([&] { mutilate(net, {{"Z", 1}}); }) == ErrorKind::UnknownNode);
    CHECK(caught_kind([&] { mutilate(net, {{"A", 5}}); }) == ErrorKind::BadArgument);
}

TEST_CASE("forcing a cause propagates; forcing an effect does not flow back") {
    const BayesianNetwork net = chain_network();

    // B copies nothing here, but P(B=1 | do(A=1)) is just the A=1 row.
    CHECK(causal_effect(net, "B", {{"A", kTrue}}) ==
          doctest::Approx(0.9).epsilon(1e-12));
    CHECK(causal_effect(net, "B", {{"A", kFalse}}) ==
          doctest::Approx(0.1).epsilon(1e-12));

    // Forcing the child tells us nothing new about the parent.
    CHECK(causal_effect(net, "A", {{"B", kTrue}}) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("intervening differs from observing under a confounder") {
    const BayesianNetwork net = fork_network();

    // Seeing A=1 raises belief in the confounder C and therefore in B.
    const double seen = query_ve(net, "B", {{"A", 1}}).p_true;
    CHECK(seen == doctest::Approx(0.74).epsilon(1e-12));

    // Forcing A=1 severs C -> A, so B keeps its marginal.
    const double forced = causal_effect(net, "B", {{"A", kTrue}});
    CHECK(forced == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("causal_effect rejects a target inside the intervention") {
    const BayesianNetwork net = chain_network();
    CHECK(caught_kind([&] { causal_effect(net, "B", {{"B", 1}}); }) ==
          ErrorKind::BadArgument);
    CHECK(caught_kind([&] { causal_effect(net, "Z", {{"A", 1}}); }) ==
          ErrorKind::UnknownNode);
}

TEST_CASE("multi-node interventions pin every listed node") {
    const BayesianNetwork net = diamond_network();
    // With both mid nodes forced true, D fires regardless of A.
    CHECK(causal_effect(net, "D", {{"B", kTrue}, {"C", kTrue}}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(causal_effect(net, "D", {{"B", kTrue}, {"C", kFalse}}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the sweep ranks nodes by how far they push the target") {
    const BayesianNetwork net = diamond_network();
    const InterventionReport report = intervention_sweep(net, "D");

    CHECK(report.target == "D");
    CHECK(report.baseline == doctest::Approx(0.3).epsilon(1e-12));
    REQUIRE(report.rows.size() == 3); // A, B, C; never the target itself

    for (const auto& row : report.rows) {
        CHECK(row.node != "D");
        CHECK(row.do_result ==
              doctest::Approx(causal_effect(net, "D", {{row.node, kTrue}}))
                  .epsilon(1e-12));
        CHECK(row.baseline_delta ==
              doctest::Approx(row.do_result - report.baseline).epsilon(1e-12));
        CHECK(row.posterior_delta ==
              doctest::Approx(row.do_result - row.posterior_p_true).epsilon(1e-12));
    }

    // do(A=1) makes D certain; do(B=1) leaves P(D) = P(C=1) = 0.3, same for C.
    CHECK(report.rows[0].node == "A");
    CHECK(report.rows[0].do_result == doctest::Approx(1.0).epsilon(1e-12));
    // Equal deltas fall back to lexicographic order.
    CHECK(report.rows[1].node == "B");
    CHECK(report.rows[2].node == "C");
}

TEST_CASE("sweep rows on the bundled model stay internally consistent") {
    const BayesianNetwork net = ivi_network();
    const InterventionReport report = intervention_sweep(net, kIviTarget);

    REQUIRE(report.rows.size() == net.size() - 1);
    CHECK(report.baseline == doctest::Approx(0.934754).epsilon(1e-4));

    // Descending order of effect on the target.
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        CHECK(report.rows[i - 1].baseline_delta >= report.rows[i].baseline_delta);

    // Forcing the strongest contributor true lifts the target the most.
    CHECK(report.rows[0].node == "CAN_Control");

    for (const auto& row : report.rows) {
        CHECK(row.posterior_delta ==
              doctest::Approx(row.do_result - row.posterior_p_true).epsilon(1e-12));
        // Every single intervention raises this monotone model's target.
        CHECK(row.baseline_delta > 0.0);
    }
}

#include <doctest.h>

#include "sbdv/harness.hpp"

using namespace sbdv;

namespace {

ProtocolConfig base_config(int t, int n, std::uint64_t seed) {
    ProtocolConfig config;
    config.t = t;
    config.n = n;
    config.suite = SuiteKind::transparent_large;
    config.seed = seed;
    return config;
}

}  // namespace

TEST_CASE("honest runs complete with two accepts") {
    for (auto [t, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 3}, {3, 5}}) {
        Transcript transcript = run(base_config(t, n, 21));
        REQUIRE_FALSE(transcript.aborted);
        REQUIRE(transcript.decisions.size() == 2);
        CHECK(transcript.decisions[0].first == "bob");
        CHECK(transcript.decisions[1].first == "cindy");
        CHECK(transcript.decisions[0].second.accept);
        CHECK(transcript.decisions[1].second.accept);
    }
}

TEST_CASE("transcripts are byte-deterministic and parse back") {
    ProtocolConfig config = base_config(2, 3, 42);
    std::string first = run(config).to_text();
    for (int i = 0; i < 2; ++i) CHECK(run(config).to_text() == first);

    // different seed, different bytes
    CHECK(run(base_config(2, 3, 43)).to_text() != first);

    Transcript parsed = Transcript::from_text(first);
    CHECK(parsed.to_text() == first);
    CHECK_FALSE(parsed.aborted);
}

TEST_CASE("explicit signer subsets are honored") {
    ProtocolConfig config = base_config(2, 3, 5);
    config.signers = SignerSet{{2, 3}};
    RunResult r = run_detailed(config);
    REQUIRE(r.transcript.sigma.has_value());
    CHECK(r.transcript.sigma->participants.indices == std::vector<int>{2, 3});
    for (const auto& [who, d] : r.transcript.decisions) CHECK(d.accept);
}

TEST_CASE("fault: bad vss subshare aborts naming the dealer") {
    for (int dealer = 1; dealer <= 3; ++dealer) {
        Transcript t = run(base_config(2, 3, 31), FaultSpec{FaultKind::bad_vss_subshare, dealer});
        CHECK(t.aborted);
        CHECK(t.abort_stage == "secret-share-generation");
        CHECK(t.abort_culprit == std::to_string(dealer));
        CHECK_FALSE(t.sigma.has_value());
    }
}

TEST_CASE("fault: bad proxy subshare aborts naming the dealer") {
    Transcript t = run(base_config(2, 3, 32), FaultSpec{FaultKind::bad_proxy_subshare, 2});
    CHECK(t.aborted);
    CHECK(t.abort_stage == "proxy-share-generation");
    CHECK(t.abort_culprit == "2");
}

TEST_CASE("fault: bad partial signature aborts at the clerk") {
    Transcript t = run(base_config(2, 3, 33), FaultSpec{FaultKind::bad_partial_sig, 2});
    CHECK(t.aborted);
    CHECK(t.abort_stage == "proxy-signature-generation");
    CHECK(t.abort_culprit == "2");
}

TEST_CASE("fault: bad y share survives until verification, then both reject") {
    Transcript t = run(base_config(2, 3, 34), FaultSpec{FaultKind::bad_y_share, 1});
    CHECK_FALSE(t.aborted);
    REQUIRE(t.decisions.size() == 2);
    for (const auto& [who, d] : t.decisions) {
        CHECK_FALSE(d.accept);
        CHECK(d.reason == RejectReason::pairing_inequality);
    }
}

TEST_CASE("fault: small quorum rejects at verification") {
    Transcript t = run(base_config(3, 5, 35), FaultSpec{FaultKind::small_quorum, 0});
    CHECK_FALSE(t.aborted);
    for (const auto& [who, d] : t.decisions) CHECK_FALSE(d.accept);
}

TEST_CASE("fault: wrong verifier key rejects; honest peer still accepts") {
    Transcript t = run(base_config(2, 3, 36), FaultSpec{FaultKind::wrong_verifier_key, 0});
    CHECK_FALSE(t.aborted);
    REQUIRE(t.decisions.size() == 2);
    CHECK(t.decisions[0].first == "eve");
    CHECK_FALSE(t.decisions[0].second.accept);
    CHECK(t.decisions[1].first == "cindy");
    CHECK(t.decisions[1].second.accept);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(run(base_config(3, 2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(run(base_config(0, 1, 0)), std::invalid_argument);

    ProtocolConfig dup = base_config(2, 3, 0);
    dup.proxies = {"p1", "p1", "p2"};
    CHECK_THROWS_AS(run(dup), std::invalid_argument);

    ProtocolConfig spacey = base_config(1, 1, 0);
    spacey.alice = "no spaces allowed";
    CHECK_THROWS_AS(run(spacey), std::invalid_argument);

    ProtocolConfig bad_signers = base_config(2, 3, 0);
    bad_signers.signers = SignerSet{{1}};
    CHECK_THROWS_AS(run(bad_signers), std::invalid_argument);

    CHECK_THROWS_AS(run(base_config(1, 1, 0), FaultSpec{FaultKind::small_quorum, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(run(base_config(2, 3, 0), FaultSpec{FaultKind::bad_vss_subshare, 9}),
                    std::invalid_argument);

    // desk suite caps the group size at q = 11
    ProtocolConfig big = base_config(2, 12, 0);
    big.suite = SuiteKind::transparent_desk;
    std::vector<std::string> names;
    CHECK_THROWS_AS(run(big), std::invalid_argument);
}

TEST_CASE("confinement audit: honest runs are clean") {
    for (auto [t, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}}) {
        Transcript transcript = run(base_config(t, n, 51));
        CHECK(confinement_audit(transcript).clean());
    }
    // fault runs stay clean too: faults corrupt values, not confinement
    Transcript t = run(base_config(2, 3, 52), FaultSpec{FaultKind::bad_partial_sig, 1});
    CHECK(confinement_audit(t).clean());
}

TEST_CASE("confinement audit: misrouted secrets are flagged") {
    Transcript transcript = run(base_config(2, 3, 53));

    Transcript leaked = transcript;
    leaked.events.push_back(
        Event{"hold", {{"party", "P3"}, {"kind", "vss_subshare"}, {"dealer", "2"}, {"recipient", "1"}}});
    AuditReport report = confinement_audit(leaked);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "vss_subshare[2->1] held by P3");

    Transcript alice_grab = transcript;
    alice_grab.events.push_back(
        Event{"hold", {{"party", "alice"}, {"kind", "vss_share"}, {"owner", "2"}}});
    alice_grab.events.push_back(
        Event{"hold", {{"party", "alice"}, {"kind", "proxy_key_share"}, {"owner", "1"}}});
    alice_grab.events.push_back(
        Event{"hold", {{"party", "alice"}, {"kind", "id_secret_key"}, {"owner", "p1"}}});
    CHECK(confinement_audit(alice_grab).violations.size() == 3);

    Transcript stolen_master = transcript;
    stolen_master.events.push_back(Event{"hold", {{"party", "P1"}, {"kind", "master_key"}}});
    AuditReport master_report = confinement_audit(stolen_master);
    REQUIRE(master_report.violations.size() == 1);
    CHECK(master_report.violations[0] == "master key held by P1");
}

TEST_CASE("every publish is a registry write; sends are point-to-point") {
    Transcript transcript = run(base_config(2, 3, 54));
    int publishes = 0, sends = 0;
    for (const Event& e : transcript.events) {
        if (e.kind == "publish") {
            ++publishes;
            CHECK(e.field("stage").has_value());
            CHECK(e.field("party").has_value());
            CHECK(e.field("label").has_value());
            CHECK(e.field("value").has_value());
        } else if (e.kind == "send") {
            ++sends;
            CHECK(e.field("from").has_value());
            CHECK(e.field("to").has_value());
            CHECK(e.field("from") != e.field("to"));
        }
    }
    // P_pub, 6 public keys, n*t VSS commitments, n U_i, n*(t-1) proxy
    // commitments, n C_i, sigma
    CHECK(publishes == 1 + 6 + 6 + 3 + 3 + 3 + 1);
    CHECK(sends > 0);
}

#include <doctest.h>

#include "sbdv/delegation.hpp"
#include "sbdv/harness.hpp"
#include "sbdv/thsign.hpp"

using namespace sbdv;

namespace {

G1Elem tg1(const Bigint& x) { return G1Elem{x, 0, false}; }

// Desk fixture: q=11, s=4, H1(alice)=7, H1(p1)=2, H2=5 everywhere.
struct Fixture {
    SystemParams params;
    MasterKey master;
    KeyPair alice;
    KeyPair p1;
    Warrant warrant;

    Fixture() : params(make_fixture_params()), master{4, 3} {
        alice = extract(params, master, Identity{"alice"});
        p1 = extract(params, master, Identity{"p1"});
        warrant.alice_id = "alice";
        warrant.proxy_ids = {"p1"};
        warrant.t = 1;
        warrant.x = 4;
        warrant.terms = "desk";
    }

    static SystemParams make_fixture_params() {
        PairingSuite suite = make_transparent_suite(transparent_desk_params());
        FixedScalars rng({Bigint(4)});
        SystemParams params = setup(suite, rng).first;
        params.hash.h1_override = [](const Bytes& id, const Bigint&) {
            return id == bn::str_bytes("alice") ? Scalar(7) : Scalar(2);
        };
        params.hash.h2_override = [](const Bytes&, const G1Elem&, const Bigint&) {
            return Scalar(5);
        };
        return params;
    }
};

}  // namespace

TEST_CASE("sign_warrant: desk fixture values") {
    Fixture fx;
    CHECK(fx.alice.q_id == 7);
    CHECK(fx.alice.s_id == tg1(10));

    FixedScalars rng({Bigint(2)});  // r_w
    DelegationSig w = sign_warrant(fx.params, fx.alice, fx.warrant, rng);
    CHECK(w.u_w == tg1(3));  // 2*7 mod 11
    CHECK(w.v_w == tg1(4));  // (2+5)*10 mod 11

    // invariant: e(P_pub, V_w) = e(P, U_w + h_w Q_A P) = 2^5 = 9 mod 23
    CHECK(fx.params.suite.pair(fx.params.p_pub, w.v_w) == G2Elem{9, 0});
    CHECK(verify_warrant(fx.params, fx.alice.q_id, fx.warrant, w));
}

TEST_CASE("verify_warrant: tampering rejects") {
    Fixture fx;
    FixedScalars rng({Bigint(2)});
    DelegationSig w = sign_warrant(fx.params, fx.alice, fx.warrant, rng);

    DelegationSig bad = w;
    bad.v_w = fx.params.suite.g1_add(w.v_w, fx.params.suite.generator());
    CHECK_FALSE(verify_warrant(fx.params, fx.alice.q_id, fx.warrant, bad));  // 2^9 != 2^5 mod 23
}

TEST_CASE("annihilating nonce: r_w + h_w = 0 mod q still verifies") {
    Fixture fx;
    fx.params.hash.h2_override = [](const Bytes&, const G1Elem&, const Bigint&) {
        return Scalar(9);
    };
    FixedScalars rng({Bigint(2)});  // 2 + 9 = 11 = 0 mod 11
    DelegationSig w = sign_warrant(fx.params, fx.alice, fx.warrant, rng);
    CHECK(w.v_w == fx.params.suite.g1_identity());
    CHECK(verify_warrant(fx.params, fx.alice.q_id, fx.warrant, w));
}

TEST_CASE("warrant round trip and exact tamper rejection at large q") {
    const PairingSuite& suite = shared_suite(SuiteKind::transparent_large);
    auto [params, master] = setup(suite, bn::str_bytes("warrant"));
    KeyPair alice = extract(params, master, Identity{"alice"});
    Warrant warrant;
    warrant.alice_id = "alice";
    warrant.proxy_ids = {"p1", "p2"};
    warrant.t = 2;
    warrant.x = 17;
    warrant.terms = "large-q";

    for (int i = 0; i < 20; ++i) {
        DelegationSig w = sign_warrant(params, alice, warrant, bn::str_bytes("s" + std::to_string(i)));
        CHECK(verify_warrant(params, alice.q_id, warrant, w));

        DelegationSig bad_u = w;
        bad_u.u_w = suite.g1_add(w.u_w, suite.generator());
        CHECK_FALSE(verify_warrant(params, alice.q_id, warrant, bad_u));

        DelegationSig bad_v = w;
        bad_v.v_w = suite.g1_add(w.v_w, suite.generator());
        CHECK_FALSE(verify_warrant(params, alice.q_id, warrant, bad_v));

        Warrant altered = warrant;
        altered.terms = "large-q altered";
        CHECK_FALSE(verify_warrant(params, alice.q_id, altered, w));
    }
}

TEST_CASE("derive_proxy_secret: desk fixture and refusal") {
    Fixture fx;
    CHECK(fx.p1.q_id == 2);
    CHECK(fx.p1.s_id == tg1(6));  // 3*2 mod 11

    FixedScalars rng({Bigint(2)});
    DelegationSig w = sign_warrant(fx.params, fx.alice, fx.warrant, rng);
    ProxySecret s1 = derive_proxy_secret(fx.params, fx.p1, 1, fx.alice.q_id, fx.warrant, w);
    CHECK(s1.s_i == tg1(10));  // 6 + 4

    // public check: e(P_pub, S_1) = B_10 = e(P, U_w + (Q_P1 + h_w Q_A) P) = 2^7 = 13
    CHECK(fx.params.suite.pair(fx.params.p_pub, s1.s_i) == G2Elem{13, 0});
    CHECK(proxy_b0(fx.params, w, 5, fx.alice.q_id, fx.p1.q_id) == G2Elem{13, 0});

    DelegationSig bad = w;
    bad.v_w = fx.params.suite.g1_add(w.v_w, fx.params.suite.generator());
    CHECK_THROWS_AS(derive_proxy_secret(fx.params, fx.p1, 1, fx.alice.q_id, fx.warrant, bad),
                    std::invalid_argument);
}

TEST_CASE("derive_proxy_secret: identity V_w degenerates to S_IDi") {
    Fixture fx;
    fx.params.hash.h2_override = [](const Bytes&, const G1Elem&, const Bigint&) {
        return Scalar(9);
    };
    FixedScalars rng({Bigint(2)});
    DelegationSig w = sign_warrant(fx.params, fx.alice, fx.warrant, rng);
    REQUIRE(w.v_w == fx.params.suite.g1_identity());
    ProxySecret s1 = derive_proxy_secret(fx.params, fx.p1, 1, fx.alice.q_id, fx.warrant, w);
    CHECK(s1.s_i == fx.p1.s_id);
}

TEST_CASE("deal_proxy: desk fixture") {
    Fixture fx;
    FixedScalars rng({Bigint(2)});
    DelegationSig w = sign_warrant(fx.params, fx.alice, fx.warrant, rng);
    ProxySecret s1{1, tg1(10)};

    FixedScalars coeffs({Bigint(6)});  // b_11 = 6 * P
    auto [poly, com] = deal_proxy(fx.params, s1, 2, 2, fx.warrant, w, fx.alice.q_id, fx.p1.q_id,
                                  coeffs);
    CHECK(poly.constant == tg1(10));
    CHECK(poly.b == std::vector<G1Elem>{tg1(6)});
    CHECK(com.B[0] == G2Elem{13, 0});
    CHECK(com.B[1] == G2Elem{4, 0});  // e(4, 6) = 2^(24 mod 11) = 4

    // g_1(2) = 10 + 12 = 0: the G1 identity is a legal share value
    CHECK(proxy_subshare(fx.params, poly, 2) == fx.params.suite.g1_identity());

    FixedScalars none({});
    auto [poly1, com1] = deal_proxy(fx.params, s1, 1, 2, fx.warrant, w, fx.alice.q_id, fx.p1.q_id,
                                    none);
    CHECK(poly1.b.empty());
    CHECK(com1.B.size() == 1);

    FixedScalars dummy({Bigint(1)});
    CHECK_THROWS_AS(
        deal_proxy(fx.params, s1, 3, 2, fx.warrant, w, fx.alice.q_id, fx.p1.q_id, dummy),
        std::invalid_argument);
    CHECK_THROWS_AS(
        deal_proxy(fx.params, s1, 2, 11, fx.warrant, w, fx.alice.q_id, fx.p1.q_id, dummy),
        std::invalid_argument);
}

TEST_CASE("verify_proxy_subshare: desk fixture, tamper, threshold-1") {
    Fixture fx;
    ProxyCommitments com{1, {G2Elem{13, 0}, G2Elem{4, 0}}};

    // share g_1(2) = identity: e(4, 0) = 1 and 13 * 4^2 = 208 = 1 mod 23
    CHECK(verify_proxy_subshare(fx.params, fx.params.suite.g1_identity(), 2, com));
    CHECK_FALSE(verify_proxy_subshare(fx.params, tg1(1), 2, com));  // 2^4 = 16 != 1

    ProxyCommitments only_b0{1, {G2Elem{13, 0}}};
    CHECK(verify_proxy_subshare(fx.params, tg1(10), 1, only_b0));   // e(4,10) = 13 = B_0
    CHECK_FALSE(verify_proxy_subshare(fx.params, tg1(9), 1, only_b0));
}

TEST_CASE("combine_proxy_shares: desk fixture and degenerate sums") {
    Fixture fx;
    ProxyPolynomial g1{1, 1, tg1(10), {tg1(6)}};
    ProxyKeyShare key = combine_proxy_shares(fx.params, 1, {{1, proxy_subshare(fx.params, g1, 1)}});
    CHECK(key.sk == tg1(5));          // 16 mod 11
    CHECK(key.c == G2Elem{6, 0});     // e(4, 5) = 2^9 = 512 = 6 mod 23

    // all dealers share the identity-constant polynomial
    ProxyKeyShare zero = combine_proxy_shares(
        fx.params, 1,
        {{1, fx.params.suite.g1_identity()}, {2, fx.params.suite.g1_identity()}});
    CHECK(zero.sk == fx.params.suite.g1_identity());
    CHECK(zero.c == fx.params.suite.g2_unit());

    CHECK_THROWS_AS(combine_proxy_shares(fx.params, 1, {{1, tg1(1)}, {1, tg1(2)}}),
                    std::invalid_argument);
}

TEST_CASE("proxy key shares reconstruct sum of proxy secrets over any t-subset") {
    const PairingSuite& suite = shared_suite(SuiteKind::transparent_large);
    auto [params, master] = setup(suite, bn::str_bytes("reconstruct"));
    const Bigint& q = suite.q();
    const int t = 2, n = 3;

    Warrant warrant;
    warrant.alice_id = "alice";
    warrant.proxy_ids = {"p1", "p2", "p3"};
    warrant.t = t;
    warrant.x = 5;
    warrant.terms = "rc";
    KeyPair alice = extract(params, master, Identity{"alice"});
    DelegationSig w = sign_warrant(params, alice, warrant, bn::str_bytes("w"));

    const Scalar h_w = h2(params, warrant.encode(), w.u_w);
    std::vector<KeyPair> signers;
    std::vector<ProxyPolynomial> polys;
    std::vector<ProxyCommitments> coms;
    Scalar expected = 0;  // dlog of sum S_IDPk + n * V_w
    Drbg rng(bn::str_bytes("deal-proxy"));
    for (int i = 1; i <= n; ++i) {
        KeyPair kp = extract(params, master, Identity{warrant.proxy_ids[i - 1]});
        signers.push_back(kp);
        ProxySecret secret = derive_proxy_secret(params, kp, i, alice.q_id, warrant, w);
        // public check of the proxy secret against the recomputed B_0
        CHECK(suite.pair(params.p_pub, secret.s_i) ==
              proxy_b0(params, w, h_w, alice.q_id, kp.q_id));
        auto [poly, com] = deal_proxy(params, secret, t, n, warrant, w, alice.q_id, kp.q_id, rng);
        polys.push_back(poly);
        coms.push_back(com);
        expected = bn::addm(expected, suite.dlog(kp.s_id), q);
    }
    expected = bn::addm(expected, bn::mulm(Bigint(n), suite.dlog(w.v_w), q), q);

    std::map<int, ProxyKeyShare> keys;
    for (int i = 1; i <= n; ++i) {
        std::vector<std::pair<int, G1Elem>> inbox;
        for (int k = 1; k <= n; ++k) {
            G1Elem share = proxy_subshare(params, polys[k - 1], i);
            CHECK(verify_proxy_subshare(params, share, i, coms[k - 1]));
            CHECK_FALSE(
                verify_proxy_subshare(params, suite.g1_add(share, suite.generator()), i,
                                      coms[k - 1]));
            inbox.emplace_back(k, share);
        }
        keys.emplace(i, combine_proxy_shares(params, i, inbox));
    }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            LagrangeCoeffs eta = lagrange_at_zero(q, SignerSet{{a, b}});
            Scalar acc = 0;
            for (int i : {a, b})
                acc = bn::addm(acc, bn::mulm(eta.at(i), suite.dlog(keys.at(i).sk), q), q);
            CHECK(acc == expected);
        }
}

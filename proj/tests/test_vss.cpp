#include <doctest.h>

#include "sbdv/harness.hpp"
#include "sbdv/thsign.hpp"
#include "sbdv/vss.hpp"

using namespace sbdv;

namespace {

G1Elem tg1(const Bigint& x) { return G1Elem{x, 0, false}; }

SystemParams desk_params() {
    PairingSuite suite = make_transparent_suite(transparent_desk_params());
    FixedScalars rng({Bigint(4)});
    return setup(suite, rng).first;
}

// test-side polynomial oracle: plain power-sum evaluation mod q
Scalar eval_oracle(const std::vector<Scalar>& coeffs, int x, const Bigint& q) {
    Scalar acc = 0;
    Bigint xp = 1;
    for (const Scalar& c : coeffs) {
        acc = bn::addm(acc, bn::mulm(c, xp, q), q);
        xp = bn::mulm(xp, x, q);
    }
    return acc;
}

}  // namespace

TEST_CASE("deal: desk fixtures and preconditions") {
    SystemParams params = desk_params();

    FixedScalars rng({Bigint(3), Bigint(2)});
    auto [poly, com] = deal(params, 2, 3, 1, rng);
    CHECK(poly.coeffs == std::vector<Scalar>{3, 2});
    CHECK(com.a == std::vector<G1Elem>{tg1(3), tg1(2)});

    FixedScalars rng1({Bigint(5)});
    auto [poly1, com1] = deal(params, 1, 3, 2, rng1);
    CHECK(poly1.coeffs == std::vector<Scalar>{5});
    CHECK(com1.a == std::vector<G1Elem>{tg1(5)});

    FixedScalars dummy({Bigint(1)});
    CHECK_THROWS_AS(deal(params, 3, 2, 1, dummy), std::invalid_argument);   // t > n
    CHECK_THROWS_AS(deal(params, 2, 11, 1, dummy), std::invalid_argument);  // n >= q
    CHECK_THROWS_AS(deal(params, 2, 3, 4, dummy), std::invalid_argument);   // dealer out of range
}

TEST_CASE("subshare: evaluation against the oracle") {
    SystemParams params = desk_params();
    DealerPolynomial poly{1, 5, {3, 2}};  // f = 3 + 2x

    CHECK(subshare(params, poly, 5).value == 2);  // 13 mod 11
    CHECK(subshare(params, poly, 1).value == 5);
    CHECK(eval_oracle(poly.coeffs, 5, params.suite.q()) == 2);
    CHECK(eval_oracle(poly.coeffs, 1, params.suite.q()) == 5);

    // x = 0 is never issued; the secret is the constant term
    CHECK_THROWS_AS(subshare(params, poly, 0), std::invalid_argument);
    CHECK(poly.coeffs[0] == 3);
    CHECK_THROWS_AS(subshare(params, poly, 6), std::invalid_argument);
}

TEST_CASE("verify_subshare: desk fixture, tamper, threshold-1") {
    SystemParams params = desk_params();
    FeldmanCommitments com{1, {tg1(3), tg1(2)}};

    CHECK(verify_subshare(params, SubShare{1, 5, 2}, com));       // A_0 + 5 A_1 = 13 = 2
    CHECK_FALSE(verify_subshare(params, SubShare{1, 5, 3}, com));  // tampered value
    CHECK_FALSE(verify_subshare(params, SubShare{2, 5, 2}, com));  // dealer mismatch

    FeldmanCommitments const_com{1, {tg1(5)}};
    for (int j = 1; j <= 4; ++j) {
        CHECK(verify_subshare(params, SubShare{1, j, 5}, const_com));
        CHECK_FALSE(verify_subshare(params, SubShare{1, j, 6}, const_com));
    }
}

TEST_CASE("combine_shares: desk fixture") {
    SystemParams params = desk_params();
    // f1 = 3 + 2x, f2 = 1 + 4x
    DealerPolynomial f1{1, 2, {3, 2}};
    DealerPolynomial f2{2, 2, {1, 4}};

    SecretShare r1 = combine_shares(params, 1, {subshare(params, f1, 1), subshare(params, f2, 1)});
    CHECK(r1.r == 10);  // 5 + 5
    CHECK(r1.u == tg1(10));

    SecretShare r2 = combine_shares(params, 2, {subshare(params, f1, 2), subshare(params, f2, 2)});
    CHECK(r2.r == 5);  // 7 + 9 = 16
    CHECK(r2.u == tg1(5));

    // single dealer with a constant polynomial
    DealerPolynomial c5{1, 3, {5}};
    for (int i = 1; i <= 3; ++i)
        CHECK(combine_shares(params, i, {subshare(params, c5, i)}).r == 5);

    CHECK_THROWS_AS(combine_shares(params, 1, {subshare(params, f1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(
        combine_shares(params, 1, {subshare(params, f1, 1), subshare(params, f1, 1)}),
        std::invalid_argument);
}

TEST_CASE("feldman completeness and soundness") {
    const PairingSuite& suite = shared_suite(SuiteKind::transparent_large);
    auto [params, master] = setup(suite, bn::str_bytes("vss"));
    Drbg rng(bn::str_bytes("deal"));
    for (auto [t, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}}) {
        for (int dealer = 1; dealer <= n; ++dealer) {
            auto [poly, com] = deal(params, t, n, dealer, rng);
            for (int j = 1; j <= n; ++j) {
                SubShare share = subshare(params, poly, j);
                CHECK(share.value == eval_oracle(poly.coeffs, j, suite.q()));
                CHECK(verify_subshare(params, share, com));
                SubShare bad = share;
                bad.value = bn::addm(bad.value, 1, suite.q());
                CHECK_FALSE(verify_subshare(params, bad, com));
            }
        }
    }
}

TEST_CASE("interpolation consistency across t-subsets") {
    const PairingSuite& suite = shared_suite(SuiteKind::transparent_large);
    auto [params, master] = setup(suite, bn::str_bytes("interp"));
    const Bigint& q = suite.q();
    Drbg rng(bn::str_bytes("interp-deal"));

    const int t = 3, n = 5;
    std::vector<DealerPolynomial> polys;
    Scalar secret_sum = 0;
    for (int k = 1; k <= n; ++k) {
        auto [poly, com] = deal(params, t, n, k, rng);
        polys.push_back(poly);
        secret_sum = bn::addm(secret_sum, poly.coeffs[0], q);
    }
    std::map<int, SecretShare> shares;
    for (int i = 1; i <= n; ++i) {
        std::vector<SubShare> inbox;
        for (const auto& poly : polys) inbox.push_back(subshare(params, poly, i));
        shares.emplace(i, combine_shares(params, i, inbox));
        CHECK(shares.at(i).u == suite.g1_mul(shares.at(i).r, suite.generator()));
    }
    // every t-subset reconstructs the joint constant term exactly
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                SignerSet d{{a, b, c}};
                LagrangeCoeffs eta = lagrange_at_zero(q, d);
                Scalar acc = 0;
                for (int i : d.indices) acc = bn::addm(acc, bn::mulm(eta.at(i), shares.at(i).r, q), q);
                CHECK(acc == secret_sum);
            }
}

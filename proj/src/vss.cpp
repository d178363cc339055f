#include "sbdv/vss.hpp"

#include <algorithm>
#include <stdexcept>

namespace sbdv {

namespace {

void check_threshold(const SystemParams& params, int t, int n) {
    if (t < 1 || n < 1 || t > n) throw std::invalid_argument("vss: need 1 <= t <= n");
    if (Bigint(n) >= params.suite.q())
        throw std::invalid_argument("vss: n must be below the group order");
}

Scalar eval_poly(const std::vector<Scalar>& coeffs, int x, const Bigint& q) {
    // Horner, highest power first.
    Scalar acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = bn::addm(bn::mulm(acc, x, q), *it, q);
    return acc;
}

}  // namespace

std::pair<DealerPolynomial, FeldmanCommitments> deal(const SystemParams& params, int t, int n,
                                                     int dealer, ScalarRng& rng) {
    check_threshold(params, t, n);
    if (dealer < 1 || dealer > n) throw std::invalid_argument("vss: dealer index out of range");
    DealerPolynomial poly{dealer, n, {}};
    FeldmanCommitments com{dealer, {}};
    poly.coeffs.reserve(t);
    com.a.reserve(t);
    for (int l = 0; l < t; ++l) {
        poly.coeffs.push_back(rng.uniform_nonzero(params.suite.q()));
        com.a.push_back(params.suite.g1_mul(poly.coeffs.back(), params.suite.generator()));
    }
    return {poly, com};
}

std::pair<DealerPolynomial, FeldmanCommitments> deal(const SystemParams& params, int t, int n,
                                                     int dealer, const Bytes& seed) {
    Drbg rng(seed, "vss.deal");
    return deal(params, t, n, dealer, rng);
}

SubShare subshare(const SystemParams& params, const DealerPolynomial& poly, int j) {
    if (j < 1 || j > poly.n) throw std::invalid_argument("vss: recipient index out of range");
    return SubShare{poly.dealer, j, eval_poly(poly.coeffs, j, params.suite.q())};
}

bool verify_subshare(const SystemParams& params, const SubShare& share,
                     const FeldmanCommitments& commitments) {
    if (share.dealer != commitments.dealer) return false;
    if (share.recipient < 1) return false;
    if (share.value < 0 || share.value >= params.suite.q()) return false;
    const Bigint& q = params.suite.q();
    G1Elem lhs = params.suite.g1_mul(share.value, params.suite.generator());
    std::vector<std::pair<Scalar, G1Elem>> terms;
    terms.reserve(commitments.a.size());
    Scalar jk = 1;
    for (const G1Elem& a : commitments.a) {
        terms.emplace_back(jk, a);
        jk = bn::mulm(jk, share.recipient, q);
    }
    return lhs == params.suite.g1_lincomb(terms);
}

SecretShare combine_shares(const SystemParams& params, int holder,
                           const std::vector<SubShare>& shares) {
    if (shares.empty()) throw std::invalid_argument("vss: no subshares");
    std::vector<bool> seen(shares.size() + 1, false);
    Scalar r = 0;
    for (const SubShare& s : shares) {
        if (s.recipient != holder)
            throw std::invalid_argument("vss: subshare addressed to a different holder");
        if (s.dealer < 1 || s.dealer > static_cast<int>(shares.size()) || seen[s.dealer])
            throw std::invalid_argument("vss: dealer missing or duplicated");
        seen[s.dealer] = true;
        r = bn::addm(r, s.value, params.suite.q());
    }
    return SecretShare{holder, r, params.suite.g1_mul(r, params.suite.generator())};
}

}  // namespace sbdv

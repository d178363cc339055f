#include "sbdv/delegation.hpp"

#include <stdexcept>

namespace sbdv {

Bytes Warrant::encode() const {
    // Length-prefixed field list; stable across load/store round trips.
    Bytes out;
    auto put = [&out](const Bytes& field) {
        const std::uint32_t len = static_cast<std::uint32_t>(field.size());
        for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
        out.insert(out.end(), field.begin(), field.end());
    };
    put(bn::str_bytes(alice_id));
    put(bn::str_bytes(std::to_string(proxy_ids.size())));
    for (const std::string& id : proxy_ids) put(bn::str_bytes(id));
    put(bn::str_bytes(std::to_string(t)));
    put(bn::str_bytes(bn::to_dec(x)));
    put(bn::str_bytes(terms));
    return out;
}

DelegationSig sign_warrant(const SystemParams& params, const KeyPair& alice, const Warrant& warrant,
                           ScalarRng& rng) {
    if (warrant.proxy_ids.empty())
        throw std::invalid_argument("sign_warrant: warrant must name the proxy group");
    const Bigint& q = params.suite.q();
    Scalar r_w = rng.uniform_nonzero(q);
    G1Elem u_w = params.suite.g1_mul(bn::mulm(r_w, alice.q_id, q), params.suite.generator());
    Scalar h_w = h2(params, warrant.encode(), u_w);
    G1Elem v_w = params.suite.g1_mul(bn::addm(r_w, h_w, q), alice.s_id);
    return DelegationSig{u_w, v_w};
}

DelegationSig sign_warrant(const SystemParams& params, const KeyPair& alice, const Warrant& warrant,
                           const Bytes& seed) {
    Drbg rng(seed, "delegation.sign_warrant");
    return sign_warrant(params, alice, warrant, rng);
}

bool verify_warrant(const SystemParams& params, const Scalar& q_ida, const Warrant& warrant,
                    const DelegationSig& sig) {
    if (!params.suite.g1_valid(sig.u_w) || !params.suite.g1_valid(sig.v_w)) return false;
    const Bigint& q = params.suite.q();
    Scalar h_w = h2(params, warrant.encode(), sig.u_w);
    G2Elem lhs = params.suite.pair(params.p_pub, sig.v_w);
    G1Elem rhs_arg = params.suite.g1_add(
        sig.u_w, params.suite.g1_mul(bn::mulm(h_w, q_ida, q), params.suite.generator()));
    return lhs == params.suite.pair(params.suite.generator(), rhs_arg);
}

ProxySecret derive_proxy_secret(const SystemParams& params, const KeyPair& self, int owner,
                                const Scalar& q_ida, const Warrant& warrant,
                                const DelegationSig& sig) {
    if (!verify_warrant(params, q_ida, warrant, sig))
        throw std::invalid_argument("derive_proxy_secret: warrant signature rejected");
    return ProxySecret{owner, params.suite.g1_add(self.s_id, sig.v_w)};
}

G2Elem proxy_b0(const SystemParams& params, const DelegationSig& sig, const Scalar& h_w,
                const Scalar& q_ida, const Scalar& q_idpi) {
    const Bigint& q = params.suite.q();
    Scalar k = bn::addm(q_idpi, bn::mulm(h_w, q_ida, q), q);
    G1Elem arg = params.suite.g1_add(sig.u_w, params.suite.g1_mul(k, params.suite.generator()));
    return params.suite.pair(params.suite.generator(), arg);
}

std::pair<ProxyPolynomial, ProxyCommitments> deal_proxy(const SystemParams& params,
                                                        const ProxySecret& secret, int t, int n,
                                                        const Warrant& warrant,
                                                        const DelegationSig& sig,
                                                        const Scalar& q_ida, const Scalar& q_idpi,
                                                        ScalarRng& rng) {
    if (t < 1 || n < 1 || t > n) throw std::invalid_argument("deal_proxy: need 1 <= t <= n");
    if (Bigint(n) >= params.suite.q())
        throw std::invalid_argument("deal_proxy: n must be below the group order");
    ProxyPolynomial poly{secret.owner, n, secret.s_i, {}};
    ProxyCommitments com{secret.owner, {}};
    Scalar h_w = h2(params, warrant.encode(), sig.u_w);
    com.B.push_back(proxy_b0(params, sig, h_w, q_ida, q_idpi));
    for (int l = 1; l < t; ++l) {
        // Random G1 coefficients, sampled as nonzero scalars times P.
        G1Elem b = params.suite.g1_mul(rng.uniform_nonzero(params.suite.q()), params.suite.generator());
        poly.b.push_back(b);
        com.B.push_back(params.suite.pair(params.p_pub, b));
    }
    return {poly, com};
}

G1Elem proxy_subshare(const SystemParams& params, const ProxyPolynomial& poly, int j) {
    if (j < 1 || j > poly.n) throw std::invalid_argument("proxy_subshare: recipient out of range");
    const Bigint& q = params.suite.q();
    std::vector<std::pair<Scalar, G1Elem>> terms;
    terms.emplace_back(1, poly.constant);
    Scalar jl = 1;
    for (const G1Elem& b : poly.b) {
        jl = bn::mulm(jl, j, q);
        terms.emplace_back(jl, b);
    }
    return params.suite.g1_lincomb(terms);
}

bool verify_proxy_subshare(const SystemParams& params, const G1Elem& share, int holder,
                           const ProxyCommitments& commitments) {
    if (!params.suite.g1_valid(share) || holder < 1) return false;
    const Bigint& q = params.suite.q();
    G2Elem lhs = params.suite.pair(params.p_pub, share);
    std::vector<std::pair<G2Elem, Scalar>> terms;
    terms.reserve(commitments.B.size());
    Scalar ik = 1;
    for (const G2Elem& B : commitments.B) {
        terms.emplace_back(B, ik);
        ik = bn::mulm(ik, holder, q);
    }
    return lhs == params.suite.gt_prodpow(terms);
}

ProxyKeyShare combine_proxy_shares(const SystemParams& params, int holder,
                                   const std::vector<std::pair<int, G1Elem>>& shares) {
    if (shares.empty()) throw std::invalid_argument("combine_proxy_shares: no shares");
    std::vector<bool> seen(shares.size() + 1, false);
    G1Elem sk = params.suite.g1_identity();
    for (const auto& [dealer, share] : shares) {
        if (dealer < 1 || dealer > static_cast<int>(shares.size()) || seen[dealer])
            throw std::invalid_argument("combine_proxy_shares: dealer missing or duplicated");
        seen[dealer] = true;
        sk = params.suite.g1_add(sk, share);
    }
    return ProxyKeyShare{holder, sk, params.suite.pair(params.p_pub, sk)};
}

}  // namespace sbdv

#pragma once

#include <string>
#include <vector>

#include "sbdv/idkgc.hpp"

namespace sbdv {

// Delegation terms. The proxy identity order fixes the party indices 1..n;
// x carries the verifier-pair product Q_IDB * Q_IDC so that a designated
// verifier need not know the other verifier's identity.
struct Warrant {
    std::string alice_id;
    std::vector<std::string> proxy_ids;
    int t = 0;
    Scalar x;
    std::string terms;

    /// Canonical bytes m_w, the hash input for H2/H3.
    Bytes encode() const;
};

struct DelegationSig {
    G1Elem u_w;  // r_w * Q_IDA * P
    G1Elem v_w;  // (r_w + h_w) * S_IDA
};

struct ProxySecret {
    int owner = 0;
    G1Elem s_i;  // S_IDi + V_w
};

// G1-valued sharing polynomial g_i(x) = S_i + sum_{l>=1} x^l * b_il.
struct ProxyPolynomial {
    int dealer = 0;
    int n = 0;
    G1Elem constant;
    std::vector<G1Elem> b;  // b[l-1] holds b_il for l = 1..t-1
};

struct ProxyCommitments {
    int dealer = 0;
    std::vector<G2Elem> B;  // B[0] = e(P, U_w + (Q_IDPi + h_w*Q_IDA)P); B[l] = e(P_pub, b_il)
};

struct ProxyKeyShare {
    int holder = 0;
    G1Elem sk;  // SK_Pi
    G2Elem c;   // e(P_pub, SK_Pi), published
};

DelegationSig sign_warrant(const SystemParams& params, const KeyPair& alice, const Warrant& warrant,
                           ScalarRng& rng);
DelegationSig sign_warrant(const SystemParams& params, const KeyPair& alice, const Warrant& warrant,
                           const Bytes& seed);

bool verify_warrant(const SystemParams& params, const Scalar& q_ida, const Warrant& warrant,
                    const DelegationSig& sig);

/// Re-runs warrant verification and throws std::invalid_argument when it
/// rejects; no proxy secret is derivable from an unverified warrant.
ProxySecret derive_proxy_secret(const SystemParams& params, const KeyPair& self, int owner,
                                const Scalar& q_ida, const Warrant& warrant,
                                const DelegationSig& sig);

/// Public commitment B_i0; each receiving party recomputes it locally.
G2Elem proxy_b0(const SystemParams& params, const DelegationSig& sig, const Scalar& h_w,
                const Scalar& q_ida, const Scalar& q_idpi);

std::pair<ProxyPolynomial, ProxyCommitments> deal_proxy(const SystemParams& params,
                                                        const ProxySecret& secret, int t, int n,
                                                        const Warrant& warrant,
                                                        const DelegationSig& sig,
                                                        const Scalar& q_ida, const Scalar& q_idpi,
                                                        ScalarRng& rng);

G1Elem proxy_subshare(const SystemParams& params, const ProxyPolynomial& poly, int j);

bool verify_proxy_subshare(const SystemParams& params, const G1Elem& share, int holder,
                           const ProxyCommitments& commitments);

/// shares maps dealer index -> g_dealer(holder); one entry per dealer 1..n.
ProxyKeyShare combine_proxy_shares(const SystemParams& params, int holder,
                                   const std::vector<std::pair<int, G1Elem>>& shares);

}  // namespace sbdv

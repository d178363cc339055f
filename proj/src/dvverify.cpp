#include "sbdv/dvverify.hpp"

#include <set>

namespace sbdv {

std::string reject_reason_tag(RejectReason reason) {
    switch (reason) {
        case RejectReason::none: return "none";
        case RejectReason::malformed_participants: return "malformed-participants";
        case RejectReason::registry_missing: return "registry-missing";
        case RejectReason::u_mismatch: return "u-mismatch";
        case RejectReason::pairing_inequality: return "pairing-inequality";
    }
    return "unknown";
}

Scalar recover_peer(const Bigint& q, const Scalar& q_self, const Scalar& x) {
    if (bn::mod(q_self, q) == 0) throw std::invalid_argument("recover_peer: zero verifier hash");
    return bn::mulm(bn::invmod(bn::mod(q_self, q), q), x, q);
}

G2Elem compute_y_star(const SystemParams& params, const KeyPair& self, const Scalar& q_peer,
                      const SignerSet& d, const LagrangeCoeffs& eta,
                      const std::map<int, G1Elem>& registry_u,
                      const std::map<int, Scalar>& proxy_q) {
    const Bigint& q = params.suite.q();
    std::vector<std::pair<Scalar, G1Elem>> terms;
    for (int i : d.indices) {
        auto eta_it = eta.find(i);
        auto u_it = registry_u.find(i);
        auto q_it = proxy_q.find(i);
        if (eta_it == eta.end() || u_it == registry_u.end() || q_it == proxy_q.end())
            throw std::invalid_argument("compute_y_star: missing registry entry for signer " +
                                        std::to_string(i));
        terms.emplace_back(bn::mulm(eta_it->second, q_it->second, q), u_it->second);
    }
    G1Elem left = params.suite.g1_mul(q_peer, self.s_id);
    return params.suite.pair(left, params.suite.g1_lincomb(terms));
}

Decision verify(const SystemParams& params, const AggregateSignature& sigma, const Scalar& q_ida,
                const std::map<int, Scalar>& proxy_q, const KeyPair& self, const Scalar& x,
                const std::map<int, G1Elem>& registry_u) {
    (void)q_ida;  // the final equation binds Alice through V_w alone
    const Bigint& q = params.suite.q();

    // Participant sanity: distinct indices inside [1, n], n consistent with
    // the warrant's proxy list.
    const std::vector<int>& d = sigma.participants.indices;
    if (d.empty() || sigma.n < 1 ||
        sigma.m_w.proxy_ids.size() != static_cast<std::size_t>(sigma.n) ||
        proxy_q.size() != static_cast<std::size_t>(sigma.n))
        return Decision{false, RejectReason::malformed_participants};
    std::set<int> distinct(d.begin(), d.end());
    if (distinct.size() != d.size() || *distinct.begin() < 1 || *distinct.rbegin() > sigma.n)
        return Decision{false, RejectReason::malformed_participants};

    for (int i : d)
        if (registry_u.find(i) == registry_u.end())
            return Decision{false, RejectReason::registry_missing};

    LagrangeCoeffs eta = lagrange_at_zero(q, sigma.participants);

    // U is redundant given the registry; recompute and insist they agree.
    std::vector<std::pair<Scalar, G1Elem>> u_terms;
    for (int i : d) u_terms.emplace_back(eta.at(i), registry_u.at(i));
    G1Elem u = params.suite.g1_lincomb(u_terms);
    if (!(u == sigma.u)) return Decision{false, RejectReason::u_mismatch};

    Scalar q_peer = recover_peer(q, self.q_id, x);
    G2Elem y_star = compute_y_star(params, self, q_peer, sigma.participants, eta, registry_u, proxy_q);
    Scalar h = h3(params, sigma.m, u, y_star);

    Scalar q_sum = 0;
    for (const auto& [idx, q_idp] : proxy_q) q_sum = bn::addm(q_sum, q_idp, q);

    G2Elem lhs = params.suite.pair(params.p_pub, sigma.v);
    G1Elem rhs_arg = params.suite.g1_add(
        u, params.suite.g1_mul(bn::mulm(bn::mod(Bigint(sigma.n), q), h, q), sigma.v_w));
    G2Elem rhs = params.suite.g2_mul(
        params.suite.pair(params.p_pub, rhs_arg),
        params.suite.g2_pow(
            params.suite.pair(params.suite.generator(),
                              params.suite.g1_mul(q_sum, params.suite.generator())),
            h));
    if (!(lhs == rhs)) return Decision{false, RejectReason::pairing_inequality};
    return Decision{true, RejectReason::none};
}

}  // namespace sbdv

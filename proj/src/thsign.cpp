#include "sbdv/thsign.hpp"

#include <set>

namespace sbdv {

LagrangeCoeffs lagrange_at_zero(const Bigint& q, const SignerSet& d) {
    if (d.indices.empty()) throw std::invalid_argument("lagrange_at_zero: empty signer set");
    std::set<int> distinct(d.indices.begin(), d.indices.end());
    if (distinct.size() != d.indices.size())
        throw std::invalid_argument("lagrange_at_zero: duplicate indices");
    LagrangeCoeffs eta;
    for (int i : d.indices) {
        if (i < 1 || bn::mod(Bigint(i), q) == 0)
            throw std::invalid_argument("lagrange_at_zero: index is zero mod q");
        Scalar num = 1, den = 1;
        for (int j : d.indices) {
            if (j == i) continue;
            num = bn::mulm(num, j, q);
            den = bn::mulm(den, bn::subm(Bigint(j), Bigint(i), q), q);
        }
        eta[i] = bn::mulm(num, bn::invmod(den, q), q);
    }
    return eta;
}

Scalar compute_x(const Bigint& q, const Scalar& q_idb, const Scalar& q_idc) {
    if (bn::mod(q_idb, q) == 0 || bn::mod(q_idc, q) == 0)
        throw std::invalid_argument("compute_x: verifier hash must be nonzero");
    return bn::mulm(q_idb, q_idc, q);
}

YShare make_y_share(const SystemParams& params, int i, const G1Elem& s_idpi, const Scalar& r_i,
                    const Scalar& x) {
    G1Elem xp = params.suite.g1_mul(x, params.suite.generator());
    G2Elem g_v = params.suite.pair(xp, s_idpi);
    return YShare{i, g_v, params.suite.g2_pow(g_v, r_i)};
}

SignContext build_context(const SystemParams& params, const Bytes& m, const Scalar& x,
                          const SignerSet& d, const LagrangeCoeffs& eta,
                          const std::map<int, G1Elem>& u_shares,
                          const std::map<int, G2Elem>& y_shares) {
    std::vector<std::pair<Scalar, G1Elem>> u_terms;
    std::vector<std::pair<G2Elem, Scalar>> y_terms;
    for (int i : d.indices) {
        auto eta_it = eta.find(i);
        auto u_it = u_shares.find(i);
        auto y_it = y_shares.find(i);
        if (eta_it == eta.end() || u_it == u_shares.end() || y_it == y_shares.end())
            throw std::invalid_argument("build_context: missing data for signer " + std::to_string(i));
        u_terms.emplace_back(eta_it->second, u_it->second);
        y_terms.emplace_back(y_it->second, eta_it->second);
    }
    SignContext ctx;
    ctx.m = m;
    ctx.x = x;
    ctx.d = d;
    ctx.eta = eta;
    ctx.u = params.suite.g1_lincomb(u_terms);
    ctx.y = params.suite.gt_prodpow(y_terms);
    ctx.h = h3(params, m, ctx.u, ctx.y);
    return ctx;
}

PartialSignature partial_sign(const SystemParams& params, const SignContext& ctx, int i,
                              const G1Elem& u_i, const G1Elem& sk_pi) {
    G1Elem v_i = params.suite.g1_add(u_i, params.suite.g1_mul(ctx.h, sk_pi));
    return PartialSignature{i, u_i, v_i};
}

bool clerk_verify_partial(const SystemParams& params, const PartialSignature& sig,
                          const G2Elem& c_i, const Scalar& h) {
    if (!params.suite.g1_valid(sig.u_i) || !params.suite.g1_valid(sig.v_i)) return false;
    G2Elem lhs = params.suite.pair(params.p_pub, sig.v_i);
    G2Elem rhs = params.suite.g2_mul(params.suite.pair(params.p_pub, sig.u_i),
                                     params.suite.g2_pow(c_i, h));
    return lhs == rhs;
}

AggregateSignature aggregate(const SystemParams& params, const SignContext& ctx,
                             const Warrant& warrant, const G1Elem& v_w,
                             const std::vector<PartialSignature>& partials,
                             const std::map<int, G2Elem>& commitments, int n) {
    std::vector<std::pair<Scalar, G1Elem>> v_terms;
    for (const PartialSignature& sig : partials) {
        auto c_it = commitments.find(sig.index);
        if (c_it == commitments.end())
            throw std::invalid_argument("aggregate: no registry commitment for signer " +
                                        std::to_string(sig.index));
        if (!clerk_verify_partial(params, sig, c_it->second, ctx.h))
            throw ProtocolAbort("proxy-signature-generation", sig.index,
                                "aggregate: partial signature rejected for signer " +
                                    std::to_string(sig.index));
        auto eta_it = ctx.eta.find(sig.index);
        if (eta_it == ctx.eta.end())
            throw std::invalid_argument("aggregate: signer outside the signing set");
        v_terms.emplace_back(eta_it->second, sig.v_i);
    }
    if (partials.size() != ctx.d.size())
        throw std::invalid_argument("aggregate: expected one partial per signer");
    AggregateSignature sigma;
    sigma.m = ctx.m;
    sigma.v_w = v_w;
    sigma.m_w = warrant;
    sigma.u = ctx.u;
    sigma.v = params.suite.g1_lincomb(v_terms);
    sigma.participants = ctx.d;
    sigma.n = n;
    return sigma;
}

}  // namespace sbdv

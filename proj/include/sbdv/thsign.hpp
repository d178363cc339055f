#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "sbdv/delegation.hpp"

namespace sbdv {

/// Raised when a protocol check fails mid-run; carries the stage and the
/// party the failed check points at.
class ProtocolAbort : public std::runtime_error {
public:
    ProtocolAbort(std::string stage, int culprit, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)), culprit_(culprit) {}
    const std::string& stage() const { return stage_; }
    int culprit() const { return culprit_; }

private:
    std::string stage_;
    int culprit_;
};

struct SignerSet {
    std::vector<int> indices;  // distinct, each in [1, n]
    std::size_t size() const { return indices.size(); }
};

using LagrangeCoeffs = std::map<int, Scalar>;

/// Coefficients eta_i = prod_{j != i} j / (j - i) mod q; their sum is 1.
LagrangeCoeffs lagrange_at_zero(const Bigint& q, const SignerSet& d);

/// X = Q_IDB * Q_IDC mod q; rejects zero inputs.
Scalar compute_x(const Bigint& q, const Scalar& q_idb, const Scalar& q_idc);

struct YShare {
    int index = 0;
    G2Elem g_v;  // e(X*P, S_IDPi)
    G2Elem y;    // g_v ^ r_i
};

YShare make_y_share(const SystemParams& params, int i, const G1Elem& s_idpi, const Scalar& r_i,
                    const Scalar& x);

struct SignContext {
    Bytes m;
    Scalar x;
    SignerSet d;
    LagrangeCoeffs eta;
    G1Elem u;   // sum eta_i * U_i
    G2Elem y;   // prod Y_i ^ eta_i
    Scalar h;   // H3(m, U, Y)
};

SignContext build_context(const SystemParams& params, const Bytes& m, const Scalar& x,
                          const SignerSet& d, const LagrangeCoeffs& eta,
                          const std::map<int, G1Elem>& u_shares,
                          const std::map<int, G2Elem>& y_shares);

struct PartialSignature {
    int index = 0;
    G1Elem u_i;
    G1Elem v_i;  // U_i + H * SK_Pi
};

PartialSignature partial_sign(const SystemParams& params, const SignContext& ctx, int i,
                              const G1Elem& u_i, const G1Elem& sk_pi);

bool clerk_verify_partial(const SystemParams& params, const PartialSignature& sig,
                          const G2Elem& c_i, const Scalar& h);

struct AggregateSignature {
    Bytes m;
    G1Elem v_w;
    Warrant m_w;
    G1Elem u;
    G1Elem v;  // sum eta_i * V_i
    SignerSet participants;
    int n = 0;
};

/// Clerk fold: re-validates every partial against the registry commitments
/// and throws ProtocolAbort naming the first offender.
AggregateSignature aggregate(const SystemParams& params, const SignContext& ctx,
                             const Warrant& warrant, const G1Elem& v_w,
                             const std::vector<PartialSignature>& partials,
                             const std::map<int, G2Elem>& commitments, int n);

}  // namespace sbdv

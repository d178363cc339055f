#pragma once

#include <map>
#include <string>

#include "sbdv/thsign.hpp"

namespace sbdv {

enum class RejectReason {
    none,
    malformed_participants,
    registry_missing,
    u_mismatch,
    pairing_inequality,
};

struct Decision {
    bool accept = false;
    RejectReason reason = RejectReason::none;  // set iff !accept
};

std::string reject_reason_tag(RejectReason reason);

/// Q_peer = Q_self^-1 * X mod q.
Scalar recover_peer(const Bigint& q, const Scalar& q_self, const Scalar& x);

/// Y* = e(Q_peer * S_self, sum eta_i * Q_IDPi * U_i). Both designated
/// verifiers obtain the same value: Q_IDC * S_IDB = s^-1 * X * P = Q_IDB * S_IDC.
G2Elem compute_y_star(const SystemParams& params, const KeyPair& self, const Scalar& q_peer,
                      const SignerSet& d, const LagrangeCoeffs& eta,
                      const std::map<int, G1Elem>& registry_u,
                      const std::map<int, Scalar>& proxy_q);

/// Full verification pipeline. U is recomputed from the registry and checked
/// against sigma.u; the threshold is enforced algebraically by the final
/// pairing equation, not by a participant-count test.
Decision verify(const SystemParams& params, const AggregateSignature& sigma, const Scalar& q_ida,
                const std::map<int, Scalar>& proxy_q, const KeyPair& self, const Scalar& x,
                const std::map<int, G1Elem>& registry_u);

}  // namespace sbdv

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbdv/dvverify.hpp"
#include "sbdv/vss.hpp"

namespace sbdv {

enum class SuiteKind { transparent_desk, transparent_large, curve };

std::string suite_kind_name(SuiteKind kind);
SuiteKind suite_kind_from_name(const std::string& name);

/// Shared immutable suite instances; parameter search runs once per kind.
const PairingSuite& shared_suite(SuiteKind kind);

struct ProtocolConfig {
    int t = 0;
    int n = 0;
    SuiteKind suite = SuiteKind::transparent_large;
    std::string alice = "alice";
    std::string bob = "bob";
    std::string cindy = "cindy";
    std::vector<std::string> proxies;  // defaults to p1..pn
    Bytes message = bn::str_bytes("demo message");
    std::string warrant_terms = "threshold-proxy-demo";
    std::uint64_t seed = 0;
    std::optional<SignerSet> signers;  // defaults to 1..t
};

enum class FaultKind {
    bad_vss_subshare,    // aborts at the Feldman check, naming the dealer
    bad_proxy_subshare,  // aborts at the proxy-share check, naming the dealer
    bad_partial_sig,     // aborts at the clerk check, naming the signer
    bad_y_share,         // undetected until verification; both verifiers reject
    small_quorum,        // t-1 signers; verification rejects
    wrong_verifier_key,  // random non-designated key in the bob slot; rejects
};

struct FaultSpec {
    FaultKind kind;
    int target = 0;  // party index where the kind applies
};

struct Event {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;

    std::string line() const;
    std::optional<std::string> field(const std::string& key) const;
};

struct Transcript {
    std::vector<Event> events;
    std::optional<AggregateSignature> sigma;
    std::vector<std::pair<std::string, Decision>> decisions;
    bool aborted = false;
    std::string abort_stage;
    std::string abort_culprit;

    /// Canonical line-delimited form; byte-identical for equal (config, fault).
    std::string to_text() const;
    static Transcript from_text(const std::string& text);
};

/// Everything a driver or test may want to inspect after a run. The
/// transcript alone is the protocol-level product.
struct RunResult {
    Transcript transcript;
    SystemParams params;
    MasterKey master;
    std::map<std::string, KeyPair> keys;
    Warrant warrant;
    DelegationSig delegation;
    std::map<int, SecretShare> shares;
    std::map<int, ProxyKeyShare> proxy_keys;
    std::map<int, G1Elem> registry_u;
    std::map<int, G2Elem> registry_c;
    std::map<int, Scalar> proxy_q;
    std::optional<SignContext> sign_ctx;
};

RunResult run_detailed(const ProtocolConfig& config, const std::optional<FaultSpec>& fault = {});
Transcript run(const ProtocolConfig& config, const std::optional<FaultSpec>& fault = {});

struct AuditReport {
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

/// Access-control scan over the hold events: the master key stays at the
/// KGC, Alice never holds proxy-side secrets, shares and signing keys stay
/// with their owners, subshares stay on their dealer-recipient edge.
AuditReport confinement_audit(const Transcript& transcript);

}  // namespace sbdv

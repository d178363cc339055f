#include "sbdv/harness.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sbdv {

namespace {

const char* kStageSetup = "setup";
const char* kStageKeygen = "key-generation";
const char* kStageVss = "secret-share-generation";
const char* kStageProxyShare = "proxy-share-generation";
const char* kStageSign = "proxy-signature-generation";
const char* kStageVerify = "verification";

bool clean_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '.' || c == '_' || c == '-' || c == '@';
        if (!ok) return false;
    }
    return true;
}

std::string short_digest(const Bytes& data) {
    auto d = sha256(data);
    return bn::to_hex(Bytes(d.begin(), d.begin() + 8));
}

Bytes seed_bytes(std::uint64_t seed) {
    Bytes b(8);
    for (int i = 0; i < 8; ++i) b[7 - i] = static_cast<std::uint8_t>(seed >> (8 * i));
    return b;
}

std::string party_label(int index) { return "P" + std::to_string(index); }

// Event log + registry with write-once publishes.
class Recorder {
public:
    explicit Recorder(Transcript& t) : t_(t) {}

    void stage(const std::string& name) { emit("stage", {{"name", name}}); }

    void publish(const std::string& stage, const std::string& party, const std::string& label,
                 const std::string& value) {
        const std::string key = stage + "/" + party + "/" + label;
        if (!registry_.insert(key).second)
            throw std::logic_error("registry: duplicate publication " + key);
        emit("publish", {{"stage", stage}, {"party", party}, {"label", label}, {"value", value}});
    }

    void send(const std::string& stage, const std::string& from, const std::string& to,
              const std::string& label, const Bytes& payload) {
        if (from == to) return;  // party-local hand-off, not a channel message
        emit("send", {{"stage", stage},
                      {"from", from},
                      {"to", to},
                      {"label", label},
                      {"digest", short_digest(payload)}});
    }

    void hold(const std::string& party, const std::string& kind,
              const std::vector<std::pair<std::string, std::string>>& extra) {
        std::vector<std::pair<std::string, std::string>> fields{{"party", party}, {"kind", kind}};
        fields.insert(fields.end(), extra.begin(), extra.end());
        emit("hold", fields);
    }

    void check(const std::string& stage, const std::string& party, const std::string& what,
               bool accepted) {
        emit("check", {{"stage", stage},
                       {"party", party},
                       {"what", what},
                       {"outcome", accepted ? "accept" : "reject"}});
    }

    void abort(const std::string& stage, const std::string& culprit, const std::string& reason) {
        emit("abort", {{"stage", stage}, {"culprit", culprit}, {"reason", reason}});
        t_.aborted = true;
        t_.abort_stage = stage;
        t_.abort_culprit = culprit;
    }

    void decision(const std::string& verifier, const Decision& d) {
        emit("decision", {{"verifier", verifier},
                          {"outcome", d.accept ? "accept" : "reject"},
                          {"reason", reject_reason_tag(d.reason)}});
        t_.decisions.emplace_back(verifier, d);
    }

private:
    void emit(std::string kind, std::vector<std::pair<std::string, std::string>> fields) {
        t_.events.push_back(Event{std::move(kind), std::move(fields)});
    }

    Transcript& t_;
    std::set<std::string> registry_;
};

bool has_fault(const std::optional<FaultSpec>& fault, FaultKind kind) {
    return fault && fault->kind == kind;
}

void validate_config(const ProtocolConfig& config, const std::optional<FaultSpec>& fault,
                     const Bigint& q) {
    if (config.t < 1 || config.n < 1 || config.t > config.n)
        throw std::invalid_argument("harness: need 1 <= t <= n");
    if (Bigint(config.n) >= q) throw std::invalid_argument("harness: n must be below the group order");
    std::vector<std::string> names{config.alice, config.bob, config.cindy};
    for (const auto& p : config.proxies) names.push_back(p);
    std::set<std::string> uniq;
    for (const auto& name : names) {
        if (!clean_token(name)) throw std::invalid_argument("harness: identity has unusable characters");
        if (!uniq.insert(name).second) throw std::invalid_argument("harness: duplicate identity");
    }
    if (config.signers) {
        const auto& d = config.signers->indices;
        std::set<int> dd(d.begin(), d.end());
        if (d.size() != static_cast<std::size_t>(config.t) || dd.size() != d.size() ||
            *dd.begin() < 1 || *dd.rbegin() > config.n)
            throw std::invalid_argument("harness: signer set must be t distinct indices in 1..n");
    }
    if (fault) {
        switch (fault->kind) {
            case FaultKind::bad_vss_subshare:
            case FaultKind::bad_proxy_subshare:
                if (config.n < 2) throw std::invalid_argument("harness: subshare faults need n >= 2");
                if (fault->target < 1 || fault->target > config.n)
                    throw std::invalid_argument("harness: fault target out of range");
                break;
            case FaultKind::bad_partial_sig:
            case FaultKind::bad_y_share:
                break;  // target resolved against the signer set below
            case FaultKind::small_quorum:
                if (config.t < 2) throw std::invalid_argument("harness: small_quorum needs t >= 2");
                break;
            case FaultKind::wrong_verifier_key:
                break;
        }
    }
}

}  // namespace

std::string suite_kind_name(SuiteKind kind) {
    switch (kind) {
        case SuiteKind::transparent_desk: return "transparent-desk";
        case SuiteKind::transparent_large: return "transparent";
        case SuiteKind::curve: return "curve";
    }
    return "unknown";
}

SuiteKind suite_kind_from_name(const std::string& name) {
    if (name == "transparent-desk") return SuiteKind::transparent_desk;
    if (name == "transparent") return SuiteKind::transparent_large;
    if (name == "curve") return SuiteKind::curve;
    throw std::invalid_argument("unknown suite: " + name);
}

const PairingSuite& shared_suite(SuiteKind kind) {
    switch (kind) {
        case SuiteKind::transparent_desk: {
            static const PairingSuite desk = make_transparent_suite(transparent_desk_params());
            return desk;
        }
        case SuiteKind::transparent_large: {
            static const PairingSuite large = make_transparent_suite(find_transparent_params(62));
            return large;
        }
        case SuiteKind::curve: {
            static const PairingSuite curve = make_curve_suite(find_curve_params(160));
            return curve;
        }
    }
    throw std::invalid_argument("unknown suite kind");
}

std::string Event::line() const {
    std::string out = kind;
    for (const auto& [k, v] : fields) {
        out += ' ';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

std::optional<std::string> Event::field(const std::string& key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return std::nullopt;
}

std::string Transcript::to_text() const {
    std::string out;
    for (const Event& e : events) {
        out += e.line();
        out += '\n';
    }
    return out;
}

Transcript Transcript::from_text(const std::string& text) {
    Transcript t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Event e;
        ls >> e.kind;
        std::string tok;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("transcript: malformed event field: " + tok);
            e.fields.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }
        if (e.kind == "abort") {
            t.aborted = true;
            t.abort_stage = e.field("stage").value_or("");
            t.abort_culprit = e.field("culprit").value_or("");
        }
        t.events.push_back(std::move(e));
    }
    return t;
}

RunResult run_detailed(const ProtocolConfig& config_in, const std::optional<FaultSpec>& fault) {
    ProtocolConfig config = config_in;
    if (config.proxies.empty())
        for (int i = 1; i <= config.n; ++i) config.proxies.push_back("p" + std::to_string(i));
    if (config.proxies.size() != static_cast<std::size_t>(config.n))
        throw std::invalid_argument("harness: proxy identity list must have n entries");

    const PairingSuite& suite = shared_suite(config.suite);
    validate_config(config, fault, suite.q());

    const Bytes seed = seed_bytes(config.seed);
    auto party_rng = [&seed](const std::string& party, const std::string& stage) {
        return Drbg(seed, party + ":" + stage);
    };

    RunResult out{Transcript{}, SystemParams{suite, suite.g1_identity(), HashFamily{}}, MasterKey{},
                  {}, Warrant{}, DelegationSig{}, {}, {}, {}, {}, {}, {}};
    Recorder rec(out.transcript);
    const Bigint& q = suite.q();

    // -- setup ---------------------------------------------------------------
    rec.stage(kStageSetup);
    {
        Drbg rng = party_rng("kgc", kStageSetup);
        auto [params, master] = setup(suite, rng);
        out.params = params;
        out.master = master;
    }
    rec.hold("kgc", "master_key", {});
    rec.publish(kStageSetup, "kgc", "P_pub", bn::to_hex(suite.g1_bytes(out.params.p_pub)));

    // -- key generation --------------------------------------------------------
    rec.stage(kStageKeygen);
    std::vector<std::string> identities{config.alice};
    for (const auto& p : config.proxies) identities.push_back(p);
    identities.push_back(config.bob);
    identities.push_back(config.cindy);
    for (const std::string& id : identities) {
        KeyPair kp = extract(out.params, out.master, Identity{id});
        out.keys.emplace(id, kp);
        rec.hold("kgc", "id_secret_key", {{"owner", id}});
        rec.publish(kStageKeygen, "kgc", "Q." + id, bn::to_dec(kp.q_id));
        rec.send(kStageKeygen, "kgc", id, "S_ID", suite.g1_bytes(kp.s_id));
        rec.hold(id, "id_secret_key", {{"owner", id}});
    }
    for (int i = 1; i <= config.n; ++i) out.proxy_q[i] = out.keys.at(config.proxies[i - 1]).q_id;

    // -- secret share generation ----------------------------------------------
    rec.stage(kStageVss);
    std::map<int, DealerPolynomial> vss_polys;
    std::map<int, FeldmanCommitments> vss_coms;
    std::map<int, std::vector<SubShare>> vss_inbox;
    for (int i = 1; i <= config.n; ++i) {
        Drbg rng = party_rng(party_label(i), kStageVss);
        auto [poly, com] = deal(out.params, config.t, config.n, i, rng);
        vss_polys.emplace(i, poly);
        vss_coms.emplace(i, com);
        for (int l = 0; l < config.t; ++l)
            rec.publish(kStageVss, party_label(i), "A." + std::to_string(i) + "." + std::to_string(l),
                        bn::to_hex(suite.g1_bytes(com.a[l])));
        for (int j = 1; j <= config.n; ++j) {
            SubShare share = subshare(out.params, poly, j);
            rec.hold(party_label(i), "vss_subshare",
                     {{"dealer", std::to_string(i)}, {"recipient", std::to_string(j)}});
            if (has_fault(fault, FaultKind::bad_vss_subshare) && fault->target == i &&
                j == (i % config.n) + 1)
                share.value = bn::addm(share.value, 1, q);
            if (j != i)
                rec.send(kStageVss, party_label(i), party_label(j), "f_" + std::to_string(i),
                         suite.scalar_bytes(share.value));
            vss_inbox[j].push_back(share);
            if (j != i)
                rec.hold(party_label(j), "vss_subshare",
                         {{"dealer", std::to_string(i)}, {"recipient", std::to_string(j)}});
        }
    }
    for (int j = 1; j <= config.n; ++j) {
        for (const SubShare& share : vss_inbox[j]) {
            if (share.dealer == j) continue;
            const bool ok = verify_subshare(out.params, share, vss_coms.at(share.dealer));
            rec.check(kStageVss, party_label(j),
                      "vss-subshare." + std::to_string(share.dealer) + "-" + std::to_string(j), ok);
            if (!ok) {
                rec.abort(kStageVss, std::to_string(share.dealer), "feldman-check-failed");
                return out;
            }
        }
    }
    for (int i = 1; i <= config.n; ++i) {
        SecretShare share = combine_shares(out.params, i, vss_inbox[i]);
        out.shares.emplace(i, share);
        out.registry_u.emplace(i, share.u);
        rec.hold(party_label(i), "vss_share", {{"owner", std::to_string(i)}});
        rec.publish(kStageVss, party_label(i), "U." + std::to_string(i),
                    bn::to_hex(suite.g1_bytes(share.u)));
    }

    // -- proxy share generation -------------------------------------------------
    rec.stage(kStageProxyShare);
    const Scalar q_ida = out.keys.at(config.alice).q_id;
    out.warrant.alice_id = config.alice;
    out.warrant.proxy_ids = config.proxies;
    out.warrant.t = config.t;
    out.warrant.x = compute_x(q, out.keys.at(config.bob).q_id, out.keys.at(config.cindy).q_id);
    out.warrant.terms = config.warrant_terms;
    {
        Drbg rng = party_rng(config.alice, kStageProxyShare);
        out.delegation = sign_warrant(out.params, out.keys.at(config.alice), out.warrant, rng);
    }
    {
        Bytes payload = out.warrant.encode();
        Bytes uw = suite.g1_bytes(out.delegation.u_w);
        Bytes vw = suite.g1_bytes(out.delegation.v_w);
        payload.insert(payload.end(), uw.begin(), uw.end());
        payload.insert(payload.end(), vw.begin(), vw.end());
        for (int i = 1; i <= config.n; ++i)
            rec.send(kStageProxyShare, config.alice, party_label(i), "warrant", payload);
    }

    std::map<int, ProxyPolynomial> proxy_polys;
    std::map<int, ProxyCommitments> proxy_coms;
    std::map<int, std::vector<std::pair<int, G1Elem>>> proxy_inbox;
    for (int i = 1; i <= config.n; ++i) {
        const bool warrant_ok = verify_warrant(out.params, q_ida, out.warrant, out.delegation);
        rec.check(kStageProxyShare, party_label(i), "warrant-signature", warrant_ok);
        if (!warrant_ok) {
            rec.abort(kStageProxyShare, config.alice, "warrant-rejected");
            return out;
        }
        ProxySecret secret = derive_proxy_secret(out.params, out.keys.at(config.proxies[i - 1]), i,
                                                 q_ida, out.warrant, out.delegation);
        rec.hold(party_label(i), "proxy_secret", {{"owner", std::to_string(i)}});
        Drbg rng = party_rng(party_label(i), kStageProxyShare);
        auto [poly, com] = deal_proxy(out.params, secret, config.t, config.n, out.warrant,
                                      out.delegation, q_ida, out.proxy_q.at(i), rng);
        proxy_polys.emplace(i, poly);
        proxy_coms.emplace(i, com);
        for (int l = 1; l < config.t; ++l)
            rec.publish(kStageProxyShare, party_label(i),
                        "B." + std::to_string(i) + "." + std::to_string(l),
                        bn::to_hex(suite.g2_bytes(com.B[l])));
        for (int j = 1; j <= config.n; ++j) {
            G1Elem share = proxy_subshare(out.params, poly, j);
            rec.hold(party_label(i), "proxy_subshare",
                     {{"dealer", std::to_string(i)}, {"recipient", std::to_string(j)}});
            if (has_fault(fault, FaultKind::bad_proxy_subshare) && fault->target == i &&
                j == (i % config.n) + 1)
                share = suite.g1_add(share, suite.generator());
            if (j != i) {
                rec.send(kStageProxyShare, party_label(i), party_label(j), "g_" + std::to_string(i),
                         suite.g1_bytes(share));
                rec.hold(party_label(j), "proxy_subshare",
                         {{"dealer", std::to_string(i)}, {"recipient", std::to_string(j)}});
            }
            proxy_inbox[j].emplace_back(i, share);
        }
    }
    const Scalar h_w = h2(out.params, out.warrant.encode(), out.delegation.u_w);
    for (int j = 1; j <= config.n; ++j) {
        for (const auto& [dealer, share] : proxy_inbox[j]) {
            if (dealer == j) continue;
            // Receivers recompute the dealt B_0 locally instead of trusting it.
            ProxyCommitments com = proxy_coms.at(dealer);
            com.B[0] = proxy_b0(out.params, out.delegation, h_w, q_ida, out.proxy_q.at(dealer));
            const bool ok = verify_proxy_subshare(out.params, share, j, com);
            rec.check(kStageProxyShare, party_label(j),
                      "proxy-subshare." + std::to_string(dealer) + "-" + std::to_string(j), ok);
            if (!ok) {
                rec.abort(kStageProxyShare, std::to_string(dealer), "proxy-share-check-failed");
                return out;
            }
        }
    }
    for (int i = 1; i <= config.n; ++i) {
        ProxyKeyShare key = combine_proxy_shares(out.params, i, proxy_inbox[i]);
        out.proxy_keys.emplace(i, key);
        out.registry_c.emplace(i, key.c);
        rec.hold(party_label(i), "proxy_key_share", {{"owner", std::to_string(i)}});
        rec.publish(kStageProxyShare, party_label(i), "C." + std::to_string(i),
                    bn::to_hex(suite.g2_bytes(key.c)));
    }

    // -- proxy signature generation ---------------------------------------------
    rec.stage(kStageSign);
    SignerSet d;
    if (config.signers)
        d = *config.signers;
    else
        for (int i = 1; i <= config.t; ++i) d.indices.push_back(i);
    std::sort(d.indices.begin(), d.indices.end());
    if (has_fault(fault, FaultKind::small_quorum)) d.indices.pop_back();

    int fault_signer = 0;
    if (has_fault(fault, FaultKind::bad_partial_sig) || has_fault(fault, FaultKind::bad_y_share)) {
        fault_signer = fault->target;
        if (std::find(d.indices.begin(), d.indices.end(), fault_signer) == d.indices.end())
            throw std::invalid_argument("harness: fault target must sit in the signer set");
    }

    const std::string clerk = party_label(d.indices.front());
    LagrangeCoeffs eta = lagrange_at_zero(q, d);
    std::map<int, G1Elem> round1_u;
    std::map<int, G2Elem> round1_y;
    for (int i : d.indices) {
        YShare ys = make_y_share(out.params, i, out.keys.at(config.proxies[i - 1]).s_id,
                                 out.shares.at(i).r, out.warrant.x);
        if (has_fault(fault, FaultKind::bad_y_share) && i == fault_signer)
            ys.y = suite.g2_mul(ys.y, suite.pair(suite.generator(), suite.generator()));
        round1_u.emplace(i, out.registry_u.at(i));
        round1_y.emplace(i, ys.y);
        Bytes round1 = suite.g1_bytes(out.registry_u.at(i));
        Bytes yb = suite.g2_bytes(ys.y);
        round1.insert(round1.end(), yb.begin(), yb.end());
        rec.send(kStageSign, party_label(i), clerk, "round1." + std::to_string(i), round1);
    }
    SignContext ctx =
        build_context(out.params, config.message, out.warrant.x, d, eta, round1_u, round1_y);
    out.sign_ctx = ctx;
    for (int i : d.indices)
        rec.send(kStageSign, clerk, party_label(i), "round2.H", suite.scalar_bytes(ctx.h));

    std::vector<PartialSignature> partials;
    for (int i : d.indices) {
        PartialSignature part =
            partial_sign(out.params, ctx, i, out.registry_u.at(i), out.proxy_keys.at(i).sk);
        if (has_fault(fault, FaultKind::bad_partial_sig) && i == fault_signer)
            part.v_i = suite.g1_add(part.v_i, suite.generator());
        rec.send(kStageSign, party_label(i), clerk, "partial." + std::to_string(i),
                 suite.g1_bytes(part.v_i));
        partials.push_back(part);
    }
    for (const PartialSignature& part : partials)
        rec.check(kStageSign, clerk, "partial." + std::to_string(part.index),
                  clerk_verify_partial(out.params, part, out.registry_c.at(part.index), ctx.h));
    try {
        out.transcript.sigma = aggregate(out.params, ctx, out.warrant, out.delegation.v_w, partials,
                                         out.registry_c, config.n);
    } catch (const ProtocolAbort& abort) {
        rec.abort(kStageSign, std::to_string(abort.culprit()), "partial-signature-rejected");
        return out;
    }
    {
        const AggregateSignature& sigma = *out.transcript.sigma;
        Bytes blob = suite.g1_bytes(sigma.u);
        Bytes vb = suite.g1_bytes(sigma.v);
        blob.insert(blob.end(), vb.begin(), vb.end());
        rec.publish(kStageSign, clerk, "sigma", bn::to_hex(blob));
    }

    // -- verification -------------------------------------------------------------
    rec.stage(kStageVerify);
    auto run_verifier = [&](const std::string& label, const KeyPair& kp) {
        Decision decision = verify(out.params, *out.transcript.sigma, q_ida, out.proxy_q, kp,
                                   out.warrant.x, out.registry_u);
        rec.decision(label, decision);
    };
    if (has_fault(fault, FaultKind::wrong_verifier_key)) {
        Drbg rng = party_rng("eve", kStageVerify);
        KeyPair eve{Identity{"eve"}, rng.uniform_nonzero(q),
                    suite.g1_mul(rng.uniform(q), suite.generator())};
        run_verifier("eve", eve);
    } else {
        run_verifier(config.bob, out.keys.at(config.bob));
    }
    run_verifier(config.cindy, out.keys.at(config.cindy));
    return out;
}

Transcript run(const ProtocolConfig& config, const std::optional<FaultSpec>& fault) {
    return run_detailed(config, fault).transcript;
}

AuditReport confinement_audit(const Transcript& transcript) {
    AuditReport report;
    for (const Event& e : transcript.events) {
        if (e.kind != "hold") continue;
        const std::string party = e.field("party").value_or("");
        const std::string kind = e.field("kind").value_or("");
        if (kind == "master_key") {
            if (party != "kgc")
                report.violations.push_back("master key held by " + party);
        } else if (kind == "id_secret_key") {
            const std::string owner = e.field("owner").value_or("");
            if (party != "kgc" && party != owner)
                report.violations.push_back("id_secret_key[" + owner + "] held by " + party);
        } else if (kind == "vss_share" || kind == "proxy_key_share" || kind == "proxy_secret") {
            const std::string owner = e.field("owner").value_or("");
            if (party != party_label(std::atoi(owner.c_str())))
                report.violations.push_back(kind + "[" + owner + "] held by " + party);
        } else if (kind == "vss_subshare" || kind == "proxy_subshare") {
            const std::string dealer = e.field("dealer").value_or("");
            const std::string recipient = e.field("recipient").value_or("");
            if (party != party_label(std::atoi(dealer.c_str())) &&
                party != party_label(std::atoi(recipient.c_str())))
                report.violations.push_back(kind + "[" + dealer + "->" + recipient + "] held by " +
                                            party);
        }
    }
    return report;
}

}  // namespace sbdv

// Command-line front end: one subcommand per protocol stage, plus an
// in-memory demo run and a transcript audit. Artifacts are key/value text
// documents (or JSON with --json); secret-bearing files are only written
// under --insecure-write.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sbdv/artifact.hpp"

namespace fs = std::filesystem;
using namespace sbdv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAbort = 3;

struct Workspace {
    fs::path dir = ".";
    bool json = false;
    bool insecure = false;

    fs::path path_for(const std::string& base) const {
        return dir / (base + (json ? ".json" : ".txt"));
    }

    fs::path resolve(const std::string& base) const {
        fs::path txt = dir / (base + ".txt");
        if (fs::exists(txt)) return txt;
        fs::path js = dir / (base + ".json");
        if (fs::exists(js)) return js;
        throw std::invalid_argument("missing artifact: " + (dir / base).string() + ".{txt,json}");
    }

    Document load(const std::string& base, const std::string& kind) const {
        return Document::load(resolve(base), kind);
    }

    void save(const Document& doc, const std::string& base) const {
        fs::create_directories(path_for(base).parent_path());
        doc.save(path_for(base), json);
    }

    void save_secret(const Document& doc, const std::string& base) const {
        if (!insecure)
            throw std::invalid_argument("refusing to write secret artifact '" + base +
                                        "' without --insecure-write");
        save(doc, base);
    }
};

void add_common(CLI::App* cmd, Workspace& ws) {
    cmd->add_option("--dir", ws.dir, "workspace directory")->capture_default_str();
    cmd->add_flag("--json", ws.json, "write artifacts as JSON");
    cmd->add_flag("--insecure-write", ws.insecure, "allow writing secret material to disk");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(tok);
    return out;
}

std::vector<int> split_csv_ints(const std::string& s) {
    std::vector<int> out;
    for (const std::string& tok : split_csv(s)) out.push_back(std::stoi(tok));
    return out;
}

std::string default_suite() {
    const char* env = std::getenv("SBDV_SUITE");
    return env ? env : "transparent";
}

Bytes seed_material(std::uint64_t seed, const std::string& label) {
    Bytes b;
    for (int i = 7; i >= 0; --i) b.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
    b.insert(b.end(), label.begin(), label.end());
    return b;
}

std::pair<SuiteKind, SystemParams> load_params(const Workspace& ws) {
    return params_from_doc(ws.load("params", "params"));
}

Document load_registry(const Workspace& ws) {
    try {
        return ws.load("registry", "registry");
    } catch (const std::invalid_argument&) {
        return Document("registry");
    }
}

Document registry_with(Document reg, const std::string& key, const std::string& value) {
    if (auto existing = reg.find(key)) {
        if (*existing != value)
            throw std::invalid_argument("registry: conflicting republication of " + key);
        return reg;
    }
    reg.set(key, value);
    return reg;
}

// --- subcommand bodies ------------------------------------------------------

int cmd_setup(const Workspace& ws, const std::string& suite_name, std::uint64_t seed) {
    SuiteKind kind = suite_kind_from_name(suite_name);
    const PairingSuite& suite = shared_suite(kind);
    Drbg rng(seed_material(seed, "kgc:setup"));
    auto [params, master] = setup(suite, rng);
    ws.save(params_doc(kind, params), "params");
    ws.save_secret(masterkey_doc(params, master), "master");
    ws.save(load_registry(ws), "registry");
    std::cout << "params written; suite " << suite_kind_name(kind) << ", q has "
              << bn::bit_length(suite.q()) << " bits\n";
    return kExitOk;
}

int cmd_keygen(const Workspace& ws, const std::string& identity) {
    auto [kind, params] = load_params(ws);
    MasterKey master = masterkey_from_doc(params, ws.load("master", "masterkey"));
    KeyPair kp = extract(params, master, Identity{identity});
    ws.save_secret(keypair_doc(params, kp), "keys/" + identity);
    ws.save(registry_with(load_registry(ws), "Q." + identity, bn::to_dec(kp.q_id)), "registry");
    std::cout << "key extracted for " << identity << "\n";
    return kExitOk;
}

int cmd_vss_deal(const Workspace& ws, int t, int n, std::uint64_t seed) {
    auto [kind, params] = load_params(ws);
    Document reg = load_registry(ws);
    reg = registry_with(std::move(reg), "t", std::to_string(t));
    reg = registry_with(std::move(reg), "n", std::to_string(n));
    for (int i = 1; i <= n; ++i) {
        Drbg rng(seed_material(seed, "P" + std::to_string(i) + ":vss"));
        auto [poly, com] = deal(params, t, n, i, rng);
        Document pd("vss-poly");
        pd.set("dealer", std::to_string(i));
        pd.set("n", std::to_string(n));
        for (int l = 0; l < t; ++l)
            pd.set("a." + std::to_string(l), bn::to_dec(poly.coeffs[l]));
        ws.save_secret(pd, "vss/poly." + std::to_string(i));
        for (int l = 0; l < t; ++l)
            reg = registry_with(std::move(reg),
                                "A." + std::to_string(i) + "." + std::to_string(l),
                                bn::to_hex(params.suite.g1_bytes(com.a[l])));
        for (int j = 1; j <= n; ++j) {
            SubShare share = subshare(params, poly, j);
            Document sd("vss-subshare");
            sd.set("dealer", std::to_string(i));
            sd.set("recipient", std::to_string(j));
            sd.set("value", bn::to_dec(share.value));
            ws.save_secret(sd, "vss/sub." + std::to_string(i) + "." + std::to_string(j));
        }
    }
    ws.save(reg, "registry");
    std::cout << "dealt " << n << " polynomials at threshold " << t << "\n";
    return kExitOk;
}

int cmd_vss_combine(const Workspace& ws) {
    auto [kind, params] = load_params(ws);
    Document reg = load_registry(ws);
    const int t = std::stoi(reg.get("t"));
    const int n = std::stoi(reg.get("n"));
    for (int j = 1; j <= n; ++j) {
        std::vector<SubShare> inbox;
        for (int i = 1; i <= n; ++i) {
            Document sd = ws.load("vss/sub." + std::to_string(i) + "." + std::to_string(j),
                                  "vss-subshare");
            SubShare share{std::stoi(sd.get("dealer")), std::stoi(sd.get("recipient")),
                           bn::from_dec(sd.get("value"))};
            FeldmanCommitments com{i, {}};
            for (int l = 0; l < t; ++l)
                com.a.push_back(params.suite.g1_from_bytes(
                    bn::from_hex(reg.get("A." + std::to_string(i) + "." + std::to_string(l)))));
            if (!verify_subshare(params, share, com))
                throw ProtocolAbort("secret-share-generation", i,
                                    "subshare from dealer " + std::to_string(i) +
                                        " rejected by holder " + std::to_string(j));
            inbox.push_back(share);
        }
        SecretShare share = combine_shares(params, j, inbox);
        Document sh("vss-share");
        sh.set("holder", std::to_string(j));
        sh.set("r", bn::to_dec(share.r));
        sh.set("u", bn::to_hex(params.suite.g1_bytes(share.u)));
        ws.save_secret(sh, "vss/share." + std::to_string(j));
        reg = registry_with(std::move(reg), "U." + std::to_string(j),
                            bn::to_hex(params.suite.g1_bytes(share.u)));
    }
    ws.save(reg, "registry");
    std::cout << "combined " << n << " secret shares\n";
    return kExitOk;
}

int cmd_delegate(const Workspace& ws, const std::string& alice, const std::string& proxies_csv,
                 const std::string& verifiers_csv, const std::string& terms, std::uint64_t seed) {
    auto [kind, params] = load_params(ws);
    Document reg = load_registry(ws);
    KeyPair alice_kp = keypair_from_doc(params, ws.load("keys/" + alice, "keypair"));
    auto verifiers = split_csv(verifiers_csv);
    if (verifiers.size() != 2)
        throw std::invalid_argument("delegate: exactly two designated verifiers required");
    Warrant warrant;
    warrant.alice_id = alice;
    warrant.proxy_ids = split_csv(proxies_csv);
    warrant.t = std::stoi(reg.get("t"));
    warrant.x = compute_x(params.suite.q(), h1(params, Identity{verifiers[0]}),
                          h1(params, Identity{verifiers[1]}));
    warrant.terms = terms;
    if (warrant.proxy_ids.size() != static_cast<std::size_t>(std::stoi(reg.get("n"))))
        throw std::invalid_argument("delegate: proxy list does not match the dealt group size");
    Drbg rng(seed_material(seed, alice + ":delegate"));
    DelegationSig sig = sign_warrant(params, alice_kp, warrant, rng);
    ws.save(warrant_doc(warrant), "warrant");
    ws.save(delegation_doc(params, sig), "delegation");
    std::cout << "warrant signed by " << alice << " for " << warrant.proxy_ids.size()
              << " proxies, threshold " << warrant.t << "\n";
    return kExitOk;
}

int cmd_proxy_share(const Workspace& ws, std::uint64_t seed) {
    auto [kind, params] = load_params(ws);
    Document reg = load_registry(ws);
    Warrant warrant = warrant_from_doc(ws.load("warrant", "warrant"));
    DelegationSig sig = delegation_from_doc(params, ws.load("delegation", "delegation"));
    const int t = warrant.t;
    const int n = static_cast<int>(warrant.proxy_ids.size());
    const Scalar q_ida = h1(params, Identity{warrant.alice_id});
    const Scalar h_w = h2(params, warrant.encode(), sig.u_w);

    std::vector<ProxyPolynomial> polys;
    std::vector<ProxyCommitments> coms;
    for (int i = 1; i <= n; ++i) {
        KeyPair kp = keypair_from_doc(params, ws.load("keys/" + warrant.proxy_ids[i - 1], "keypair"));
        if (!verify_warrant(params, q_ida, warrant, sig))
            throw ProtocolAbort("proxy-share-generation", 0, "warrant signature rejected");
        ProxySecret secret = derive_proxy_secret(params, kp, i, q_ida, warrant, sig);
        Drbg rng(seed_material(seed, "P" + std::to_string(i) + ":proxy-share"));
        auto [poly, com] = deal_proxy(params, secret, t, n, warrant, sig, q_ida, kp.q_id, rng);
        polys.push_back(poly);
        coms.push_back(com);
        for (int l = 1; l < t; ++l)
            reg = registry_with(std::move(reg),
                                "B." + std::to_string(i) + "." + std::to_string(l),
                                bn::to_hex(params.suite.g2_bytes(com.B[l])));
    }
    for (int j = 1; j <= n; ++j) {
        std::vector<std::pair<int, G1Elem>> inbox;
        for (int i = 1; i <= n; ++i) {
            G1Elem share = proxy_subshare(params, polys[i - 1], j);
            ProxyCommitments com = coms[i - 1];
            Scalar q_idpi = h1(params, Identity{warrant.proxy_ids[i - 1]});
            com.B[0] = proxy_b0(params, sig, h_w, q_ida, q_idpi);
            if (i != j && !verify_proxy_subshare(params, share, j, com))
                throw ProtocolAbort("proxy-share-generation", i,
                                    "proxy subshare from dealer " + std::to_string(i) +
                                        " rejected by holder " + std::to_string(j));
            inbox.emplace_back(i, share);
        }
        ProxyKeyShare key = combine_proxy_shares(params, j, inbox);
        Document kd("proxy-key");
        kd.set("holder", std::to_string(j));
        kd.set("sk", bn::to_hex(params.suite.g1_bytes(key.sk)));
        kd.set("c", bn::to_hex(params.suite.g2_bytes(key.c)));
        ws.save_secret(kd, "proxy/key." + std::to_string(j));
        reg = registry_with(std::move(reg), "C." + std::to_string(j),
                            bn::to_hex(params.suite.g2_bytes(key.c)));
    }
    ws.save(reg, "registry");
    std::cout << "proxy signing key shares derived for " << n << " signers\n";
    return kExitOk;
}

int cmd_sign(const Workspace& ws, const std::string& message, const std::string& signers_csv) {
    auto [kind, params] = load_params(ws);
    Document reg = load_registry(ws);
    Warrant warrant = warrant_from_doc(ws.load("warrant", "warrant"));
    DelegationSig sig = delegation_from_doc(params, ws.load("delegation", "delegation"));
    const int n = static_cast<int>(warrant.proxy_ids.size());

    SignerSet d{split_csv_ints(signers_csv)};
    std::sort(d.indices.begin(), d.indices.end());
    LagrangeCoeffs eta = lagrange_at_zero(params.suite.q(), d);

    std::map<int, G1Elem> registry_u;
    std::map<int, G2Elem> registry_c;
    std::map<int, G1Elem> sks;
    std::map<int, G2Elem> yshares;
    for (int i : d.indices) {
        registry_u.emplace(i, params.suite.g1_from_bytes(
                                  bn::from_hex(reg.get("U." + std::to_string(i)))));
        registry_c.emplace(i, params.suite.g2_from_bytes(
                                  bn::from_hex(reg.get("C." + std::to_string(i)))));
        Document sh = ws.load("vss/share." + std::to_string(i), "vss-share");
        Document kd = ws.load("proxy/key." + std::to_string(i), "proxy-key");
        KeyPair kp = keypair_from_doc(params, ws.load("keys/" + warrant.proxy_ids[i - 1], "keypair"));
        sks.emplace(i, params.suite.g1_from_bytes(bn::from_hex(kd.get("sk"))));
        YShare ys = make_y_share(params, i, kp.s_id, bn::from_dec(sh.get("r")), warrant.x);
        yshares.emplace(i, ys.y);
    }
    Bytes m = bn::str_bytes(message);
    SignContext ctx = build_context(params, m, warrant.x, d, eta, registry_u, yshares);
    std::vector<PartialSignature> partials;
    for (int i : d.indices)
        partials.push_back(partial_sign(params, ctx, i, registry_u.at(i), sks.at(i)));
    AggregateSignature sigma = aggregate(params, ctx, warrant, sig.v_w, partials, registry_c, n);
    ws.save(signature_doc(params, sigma), "signature");
    std::cout << "signature aggregated from signers {" << signers_csv << "}\n";
    return kExitOk;
}

int cmd_verify(const Workspace& ws, const std::string& verifier, const std::string& sig_base) {
    auto [kind, params] = load_params(ws);
    Document reg = load_registry(ws);
    Document sig_doc = ws.load(sig_base, "signature");
    KeyPair self = keypair_from_doc(params, ws.load("keys/" + verifier, "keypair"));

    AggregateSignature sigma;
    try {
        sigma = signature_from_doc(params, sig_doc);
    } catch (const std::exception&) {
        // A corrupted signature artifact is a reject, not a usage error.
        Document report("report");
        report.set("verifier", verifier);
        report.set("decision", "reject");
        report.set("reason", "malformed-encoding");
        ws.save(report, "report." + verifier);
        std::cout << verifier << ": reject (malformed-encoding)\n";
        return kExitReject;
    }

    const Scalar q_ida = h1(params, Identity{sigma.m_w.alice_id});
    std::map<int, Scalar> proxy_q;
    for (std::size_t i = 0; i < sigma.m_w.proxy_ids.size(); ++i)
        proxy_q[static_cast<int>(i + 1)] = h1(params, Identity{sigma.m_w.proxy_ids[i]});
    std::map<int, G1Elem> registry_u;
    for (int i : sigma.participants.indices)
        if (auto u = reg.find("U." + std::to_string(i)))
            registry_u.emplace(i, params.suite.g1_from_bytes(bn::from_hex(*u)));

    Decision decision = verify(params, sigma, q_ida, proxy_q, self, sigma.m_w.x, registry_u);

    Document report("report");
    report.set("verifier", verifier);
    auto digest = sha256(bn::str_bytes(signature_doc(params, sigma).to_text()));
    report.set("sigma-digest", bn::to_hex(Bytes(digest.begin(), digest.begin() + 8)));
    report.set("decision", decision.accept ? "accept" : "reject");
    report.set("reason", reject_reason_tag(decision.reason));
    ws.save(report, "report." + verifier);

    std::cout << verifier << ": " << (decision.accept ? "accept" : "reject");
    if (!decision.accept) std::cout << " (" << reject_reason_tag(decision.reason) << ")";
    std::cout << "\n";
    return decision.accept ? kExitOk : kExitReject;
}

int cmd_demo(const std::string& config_path, int t, int n, const std::string& suite_name,
             std::uint64_t seed, const std::string& message, const std::string& fault_name,
             int fault_party, const std::string& transcript_path) {
    ProtocolConfig config;
    if (!config_path.empty()) {
        config = config_from_doc(Document::load(config_path, "config"));
    } else {
        if (t == 0 || n == 0)
            throw std::invalid_argument("demo: give --t and --n, or --config FILE");
        config.t = t;
        config.n = n;
        config.suite = suite_kind_from_name(suite_name);
        config.seed = seed;
    }
    if (!message.empty()) config.message = bn::str_bytes(message);

    std::optional<FaultSpec> fault;
    if (!fault_name.empty()) {
        static const std::map<std::string, FaultKind> kinds{
            {"bad-vss-subshare", FaultKind::bad_vss_subshare},
            {"bad-proxy-subshare", FaultKind::bad_proxy_subshare},
            {"bad-partial-sig", FaultKind::bad_partial_sig},
            {"bad-y-share", FaultKind::bad_y_share},
            {"small-quorum", FaultKind::small_quorum},
            {"wrong-verifier-key", FaultKind::wrong_verifier_key},
        };
        auto it = kinds.find(fault_name);
        if (it == kinds.end()) throw std::invalid_argument("unknown fault kind: " + fault_name);
        fault = FaultSpec{it->second, fault_party};
    }

    Transcript transcript = run(config, fault);
    if (!transcript_path.empty()) {
        std::ofstream out(transcript_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + transcript_path);
        out << transcript.to_text();
    }
    if (transcript.aborted) {
        std::cout << "abort at " << transcript.abort_stage << ": culprit "
                  << transcript.abort_culprit << "\n";
        return kExitAbort;
    }
    bool all_accept = true;
    for (const auto& [verifier, decision] : transcript.decisions) {
        std::cout << verifier << ": " << (decision.accept ? "accept" : "reject");
        if (!decision.accept) std::cout << " (" << reject_reason_tag(decision.reason) << ")";
        std::cout << "\n";
        all_accept = all_accept && decision.accept;
    }
    return all_accept ? kExitOk : kExitReject;
}

int cmd_audit(const std::string& transcript_path) {
    std::ifstream in(transcript_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + transcript_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    AuditReport report = confinement_audit(Transcript::from_text(buf.str()));
    if (report.clean()) {
        std::cout << "no violations\n";
        return kExitOk;
    }
    for (const std::string& v : report.violations) std::cout << "violation: " << v << "\n";
    return kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"identity-based strong bi-designated-verifier threshold proxy signatures"};
    app.require_subcommand(1);

    Workspace ws;
    int t = 0, n = 0, fault_party = 0;
    std::uint64_t seed = 0;
    std::string suite_name = default_suite();
    std::string identity, proxies_csv, verifiers_csv, signers_csv, message, alice = "alice";
    std::string terms = "delegation terms";
    std::string fault_name, transcript_path, sig_base = "signature", verifier;

    auto* c_setup = app.add_subcommand("setup", "generate system parameters and the master key");
    add_common(c_setup, ws);
    c_setup->add_option("--suite", suite_name, "transparent | transparent-desk | curve")
        ->capture_default_str();
    c_setup->add_option("--seed", seed, "deterministic seed")->required();

    auto* c_keygen = app.add_subcommand("keygen", "extract an identity key pair");
    add_common(c_keygen, ws);
    c_keygen->add_option("--identity", identity, "identity string")->required();

    auto* c_vss_deal = app.add_subcommand("vss-deal", "deal the (t,n) secret-sharing polynomials");
    add_common(c_vss_deal, ws);
    c_vss_deal->add_option("--t", t, "threshold")->required();
    c_vss_deal->add_option("--n", n, "group size")->required();
    c_vss_deal->add_option("--seed", seed, "deterministic seed")->required();

    auto* c_vss_combine = app.add_subcommand("vss-combine", "verify subshares and derive r_i, U_i");
    add_common(c_vss_combine, ws);

    auto* c_delegate = app.add_subcommand("delegate", "sign the delegation warrant");
    add_common(c_delegate, ws);
    c_delegate->add_option("--alice", alice, "original signer identity")->capture_default_str();
    c_delegate->add_option("--proxies", proxies_csv, "comma-separated proxy identities")->required();
    c_delegate->add_option("--verifiers", verifiers_csv, "the two designated verifier identities")
        ->required();
    c_delegate->add_option("--terms", terms, "free-form delegation terms")->capture_default_str();
    c_delegate->add_option("--seed", seed, "deterministic seed")->required();

    auto* c_proxy = app.add_subcommand("proxy-share", "derive the proxy signing key shares");
    add_common(c_proxy, ws);
    c_proxy->add_option("--seed", seed, "deterministic seed")->required();

    auto* c_sign = app.add_subcommand("sign", "produce the threshold proxy signature");
    add_common(c_sign, ws);
    c_sign->add_option("--message", message, "message to sign")->required();
    c_sign->add_option("--signers", signers_csv, "comma-separated signer indices")->required();

    auto* c_verify = app.add_subcommand("verify", "designated-verifier check of a signature");
    add_common(c_verify, ws);
    c_verify->add_option("--verifier", verifier, "verifier identity")->required();
    c_verify->add_option("--signature", sig_base, "signature artifact basename")
        ->capture_default_str();

    std::string config_path;
    auto* c_demo = app.add_subcommand("demo", "run the full protocol in memory");
    c_demo->add_option("--config", config_path, "load the run configuration from a file");
    c_demo->add_option("--t", t, "threshold");
    c_demo->add_option("--n", n, "group size");
    c_demo->add_option("--suite", suite_name, "transparent | transparent-desk | curve")
        ->capture_default_str();
    c_demo->add_option("--seed", seed, "deterministic seed");
    c_demo->add_option("--message", message, "message to sign");
    c_demo->add_option("--fault", fault_name,
                       "bad-vss-subshare | bad-proxy-subshare | bad-partial-sig | bad-y-share | "
                       "small-quorum | wrong-verifier-key");
    c_demo->add_option("--fault-party", fault_party, "party index the fault targets");
    c_demo->add_option("--transcript", transcript_path, "write the transcript to this file");

    auto* c_audit = app.add_subcommand("audit", "confinement audit of a transcript");
    c_audit->add_option("--transcript", transcript_path, "transcript file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_setup->parsed()) return cmd_setup(ws, suite_name, seed);
        if (c_keygen->parsed()) return cmd_keygen(ws, identity);
        if (c_vss_deal->parsed()) return cmd_vss_deal(ws, t, n, seed);
        if (c_vss_combine->parsed()) return cmd_vss_combine(ws);
        if (c_delegate->parsed())
            return cmd_delegate(ws, alice, proxies_csv, verifiers_csv, terms, seed);
        if (c_proxy->parsed()) return cmd_proxy_share(ws, seed);
        if (c_sign->parsed()) return cmd_sign(ws, message, signers_csv);
        if (c_verify->parsed()) return cmd_verify(ws, verifier, sig_base);
        if (c_demo->parsed())
            return cmd_demo(config_path, t, n, suite_name, seed, message, fault_name, fault_party,
                            transcript_path);
        if (c_audit->parsed()) return cmd_audit(transcript_path);
    } catch (const ProtocolAbort& e) {
        std::cerr << "protocol abort: " << e.what() << "\n";
        return kExitAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

#include "sbdv/artifact.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sbdv {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

void Document::set(const std::string& key, const std::string& value) {
    if (key.empty() || key.find('=') != std::string::npos || key.find(' ') != std::string::npos)
        throw std::invalid_argument("document: unusable key: " + key);
    if (value.find('\n') != std::string::npos)
        throw std::invalid_argument("document: value must be a single line");
    if (find(key)) throw std::invalid_argument("document: duplicate key: " + key);
    entries_.emplace_back(key, value);
}

const std::string& Document::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw std::invalid_argument("document(" + kind_ + "): missing field: " + key);
}

std::optional<std::string> Document::find(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return std::nullopt;
}

std::string Document::to_text() const {
    std::string out = "sbdv " + kind_ + " v" + std::to_string(version_) + "\n";
    for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
    return out;
}

std::string Document::to_json() const {
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [k, v] : entries_) fields[k] = v;
    nlohmann::ordered_json doc{{"artifact", kind_}, {"version", version_}, {"fields", fields}};
    return doc.dump(2) + "\n";
}

Document Document::parse(const std::string& content) {
    auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(content);
        Document doc(j.at("artifact").get<std::string>(), j.at("version").get<int>());
        for (const auto& [k, v] : j.at("fields").items()) doc.set(k, v.get<std::string>());
        return doc;
    }
    std::istringstream in(content);
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("document: empty input");
    std::istringstream hs(header);
    std::string magic, kind, ver;
    hs >> magic >> kind >> ver;
    if (magic != "sbdv" || kind.empty() || ver.size() < 2 || ver[0] != 'v')
        throw std::invalid_argument("document: bad header: " + header);
    Document doc(kind, std::stoi(ver.substr(1)));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto sep = line.find(" = ");
        if (sep == std::string::npos) throw std::invalid_argument("document: bad line: " + line);
        doc.set(line.substr(0, sep), line.substr(sep + 3));
    }
    return doc;
}

void Document::save(const std::filesystem::path& path, bool as_json) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    out << (as_json ? to_json() : to_text());
}

Document Document::load(const std::filesystem::path& path, const std::string& expected_kind) {
    Document doc = parse(read_file(path));
    if (doc.kind() != expected_kind)
        throw std::invalid_argument(path.string() + ": expected " + expected_kind + " artifact, got " +
                                    doc.kind());
    if (doc.version() != 1)
        throw std::invalid_argument(path.string() + ": unsupported version " +
                                    std::to_string(doc.version()));
    return doc;
}

Document params_doc(SuiteKind kind, const SystemParams& params) {
    Document doc("params");
    doc.set("suite", suite_kind_name(kind));
    if (const auto* t = params.suite.transparent_params()) {
        doc.set("q", bn::to_dec(t->q));
        doc.set("p", bn::to_dec(t->p));
        doc.set("g", bn::to_dec(t->g));
    } else if (const auto* c = params.suite.curve_params()) {
        doc.set("p", bn::to_dec(c->p));
        doc.set("q", bn::to_dec(c->q));
    }
    doc.set("ppub", bn::to_hex(params.suite.g1_bytes(params.p_pub)));
    doc.set("hash", "sha256");
    return doc;
}

std::pair<SuiteKind, SystemParams> params_from_doc(const Document& doc) {
    SuiteKind kind = suite_kind_from_name(doc.get("suite"));
    PairingSuite suite = kind == SuiteKind::curve
                             ? make_curve_suite({bn::from_dec(doc.get("p")), bn::from_dec(doc.get("q"))})
                             : make_transparent_suite(bn::from_dec(doc.get("q")),
                                                      bn::from_dec(doc.get("p")),
                                                      bn::from_dec(doc.get("g")));
    SystemParams params{suite, suite.g1_from_bytes(bn::from_hex(doc.get("ppub"))), HashFamily{}};
    return {kind, params};
}

Document masterkey_doc(const SystemParams& params, const MasterKey& master) {
    (void)params;
    Document doc("masterkey");
    doc.set("s", bn::to_dec(master.s));
    doc.set("sinv", bn::to_dec(master.s_inv));
    return doc;
}

MasterKey masterkey_from_doc(const SystemParams& params, const Document& doc) {
    MasterKey master{bn::from_dec(doc.get("s")), bn::from_dec(doc.get("sinv"))};
    if (bn::mulm(master.s, master.s_inv, params.suite.q()) != 1)
        throw std::invalid_argument("masterkey: s * sinv != 1 mod q");
    return master;
}

Document keypair_doc(const SystemParams& params, const KeyPair& kp) {
    Document doc("keypair");
    doc.set("identity", kp.identity.id);
    doc.set("suite", params.suite.backend() == Backend::curve ? "curve" : "transparent");
    doc.set("q", bn::to_dec(params.suite.q()));
    doc.set("qid", bn::to_dec(kp.q_id));
    doc.set("sid", bn::to_hex(params.suite.g1_bytes(kp.s_id)));
    return doc;
}

KeyPair keypair_from_doc(const SystemParams& params, const Document& doc) {
    if (bn::from_dec(doc.get("q")) != params.suite.q())
        throw std::invalid_argument("keypair: key file belongs to a different suite");
    return KeyPair{Identity{doc.get("identity")}, bn::from_dec(doc.get("qid")),
                   params.suite.g1_from_bytes(bn::from_hex(doc.get("sid")))};
}

Document warrant_doc(const Warrant& warrant) {
    Document doc("warrant");
    doc.set("alice", warrant.alice_id);
    doc.set("n", std::to_string(warrant.proxy_ids.size()));
    for (std::size_t i = 0; i < warrant.proxy_ids.size(); ++i)
        doc.set("proxy." + std::to_string(i + 1), warrant.proxy_ids[i]);
    doc.set("t", std::to_string(warrant.t));
    doc.set("x", bn::to_dec(warrant.x));
    doc.set("terms", warrant.terms);
    return doc;
}

Warrant warrant_from_doc(const Document& doc) {
    Warrant w;
    w.alice_id = doc.get("alice");
    const int n = std::stoi(doc.get("n"));
    for (int i = 1; i <= n; ++i) w.proxy_ids.push_back(doc.get("proxy." + std::to_string(i)));
    w.t = std::stoi(doc.get("t"));
    w.x = bn::from_dec(doc.get("x"));
    w.terms = doc.get("terms");
    return w;
}

Document delegation_doc(const SystemParams& params, const DelegationSig& sig) {
    Document doc("delegation");
    doc.set("uw", bn::to_hex(params.suite.g1_bytes(sig.u_w)));
    doc.set("vw", bn::to_hex(params.suite.g1_bytes(sig.v_w)));
    return doc;
}

DelegationSig delegation_from_doc(const SystemParams& params, const Document& doc) {
    return DelegationSig{params.suite.g1_from_bytes(bn::from_hex(doc.get("uw"))),
                         params.suite.g1_from_bytes(bn::from_hex(doc.get("vw")))};
}

Document signature_doc(const SystemParams& params, const AggregateSignature& sigma) {
    Document doc("signature");
    doc.set("m", bn::to_hex(sigma.m));
    doc.set("vw", bn::to_hex(params.suite.g1_bytes(sigma.v_w)));
    doc.set("u", bn::to_hex(params.suite.g1_bytes(sigma.u)));
    doc.set("v", bn::to_hex(params.suite.g1_bytes(sigma.v)));
    std::string d;
    for (int i : sigma.participants.indices) d += (d.empty() ? "" : ",") + std::to_string(i);
    doc.set("participants", d);
    doc.set("n", std::to_string(sigma.n));
    Document w = warrant_doc(sigma.m_w);
    for (const auto& [k, v] : w.entries()) doc.set("warrant." + k, v);
    return doc;
}

AggregateSignature signature_from_doc(const SystemParams& params, const Document& doc) {
    AggregateSignature sigma;
    sigma.m = bn::from_hex(doc.get("m"));
    sigma.v_w = params.suite.g1_from_bytes(bn::from_hex(doc.get("vw")));
    sigma.u = params.suite.g1_from_bytes(bn::from_hex(doc.get("u")));
    sigma.v = params.suite.g1_from_bytes(bn::from_hex(doc.get("v")));
    std::istringstream ds(doc.get("participants"));
    std::string tok;
    while (std::getline(ds, tok, ',')) sigma.participants.indices.push_back(std::stoi(tok));
    sigma.n = std::stoi(doc.get("n"));
    Document w("warrant");
    for (const auto& [k, v] : doc.entries())
        if (k.rfind("warrant.", 0) == 0) w.set(k.substr(8), v);
    sigma.m_w = warrant_from_doc(w);
    return sigma;
}

Document config_doc(const ProtocolConfig& config) {
    Document doc("config");
    doc.set("t", std::to_string(config.t));
    doc.set("n", std::to_string(config.n));
    doc.set("suite", suite_kind_name(config.suite));
    doc.set("seed", std::to_string(config.seed));
    doc.set("alice", config.alice);
    doc.set("bob", config.bob);
    doc.set("cindy", config.cindy);
    for (std::size_t i = 0; i < config.proxies.size(); ++i)
        doc.set("proxy." + std::to_string(i + 1), config.proxies[i]);
    doc.set("message", bn::to_hex(config.message));
    doc.set("terms", config.warrant_terms);
    if (config.signers) {
        std::string d;
        for (int i : config.signers->indices) d += (d.empty() ? "" : ",") + std::to_string(i);
        doc.set("signers", d);
    }
    return doc;
}

ProtocolConfig config_from_doc(const Document& doc) {
    ProtocolConfig config;
    config.t = std::stoi(doc.get("t"));
    config.n = std::stoi(doc.get("n"));
    config.suite = suite_kind_from_name(doc.get("suite"));
    config.seed = std::stoull(doc.get("seed"));
    if (auto v = doc.find("alice")) config.alice = *v;
    if (auto v = doc.find("bob")) config.bob = *v;
    if (auto v = doc.find("cindy")) config.cindy = *v;
    for (int i = 1; doc.find("proxy." + std::to_string(i)); ++i)
        config.proxies.push_back(doc.get("proxy." + std::to_string(i)));
    if (auto v = doc.find("message")) config.message = bn::from_hex(*v);
    if (auto v = doc.find("terms")) config.warrant_terms = *v;
    if (auto v = doc.find("signers")) {
        SignerSet d;
        std::istringstream in(*v);
        std::string tok;
        while (std::getline(in, tok, ',')) d.indices.push_back(std::stoi(tok));
        config.signers = d;
    }
    return config;
}

}  // namespace sbdv

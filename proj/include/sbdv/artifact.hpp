#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sbdv/harness.hpp"

namespace sbdv {

// Human-readable key/value artifact with a kind/version header. Text form:
//
//   sbdv <kind> v<version>
//   key = value
//
// JSON form carries the same fields under {"artifact", "version", "fields"}.
// Group elements are hex of their canonical bytes; scalars are decimal.
class Document {
public:
    Document() = default;
    explicit Document(std::string kind, int version = 1)
        : kind_(std::move(kind)), version_(version) {}

    const std::string& kind() const { return kind_; }
    int version() const { return version_; }

    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    std::optional<std::string> find(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string to_text() const;
    std::string to_json() const;
    static Document parse(const std::string& content);

    void save(const std::filesystem::path& path, bool as_json) const;
    static Document load(const std::filesystem::path& path, const std::string& expected_kind);

private:
    std::string kind_;
    int version_ = 1;
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Codecs between protocol values and documents.

Document params_doc(SuiteKind kind, const SystemParams& params);
std::pair<SuiteKind, SystemParams> params_from_doc(const Document& doc);

Document masterkey_doc(const SystemParams& params, const MasterKey& master);
MasterKey masterkey_from_doc(const SystemParams& params, const Document& doc);

Document keypair_doc(const SystemParams& params, const KeyPair& kp);
KeyPair keypair_from_doc(const SystemParams& params, const Document& doc);

Document warrant_doc(const Warrant& warrant);
Warrant warrant_from_doc(const Document& doc);

Document delegation_doc(const SystemParams& params, const DelegationSig& sig);
DelegationSig delegation_from_doc(const SystemParams& params, const Document& doc);

Document signature_doc(const SystemParams& params, const AggregateSignature& sigma);
AggregateSignature signature_from_doc(const SystemParams& params, const Document& doc);

Document config_doc(const ProtocolConfig& config);
ProtocolConfig config_from_doc(const Document& doc);

}  // namespace sbdv

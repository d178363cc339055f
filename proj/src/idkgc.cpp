#include "sbdv/idkgc.hpp"

#include <stdexcept>

namespace sbdv {

std::pair<SystemParams, MasterKey> setup(const PairingSuite& suite, ScalarRng& rng) {
    MasterKey master;
    master.s = rng.uniform_nonzero(suite.q());
    master.s_inv = bn::invmod(master.s, suite.q());
    SystemParams params{suite, suite.g1_mul(master.s, suite.generator()), HashFamily{}};
    return {params, master};
}

std::pair<SystemParams, MasterKey> setup(const PairingSuite& suite, const Bytes& seed) {
    if (seed.empty()) throw std::invalid_argument("setup: empty seed");
    Drbg rng(seed, "setup");
    return setup(suite, rng);
}

Scalar hash_to_scalar(const SystemParams& params, HashTag tag, const std::vector<Bytes>& parts) {
    const std::size_t arity = static_cast<std::size_t>(tag);
    if (parts.size() != arity)
        throw std::invalid_argument("hash_to_scalar: arity mismatch for tag");
    const Bigint& q = params.suite.q();

    Bytes preimage = bn::str_bytes(params.hash.tags[arity - 1]);
    for (const Bytes& part : parts) {
        const std::uint32_t len = static_cast<std::uint32_t>(part.size());
        for (int i = 3; i >= 0; --i)
            preimage.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
        preimage.insert(preimage.end(), part.begin(), part.end());
    }

    auto digest = sha256(preimage);
    Scalar out = bn::mod(bn::from_bytes_be(digest.data(), digest.size()), q);
    std::uint8_t counter = 0;
    while (out == 0) {
        Bytes retry(preimage);
        retry.push_back(counter++);
        digest = sha256(retry);
        out = bn::mod(bn::from_bytes_be(digest.data(), digest.size()), q);
    }
    return out;
}

Scalar h1(const SystemParams& params, const Identity& identity) {
    if (identity.id.empty()) throw std::invalid_argument("h1: empty identity");
    Bytes id = bn::str_bytes(identity.id);
    if (params.hash.h1_override) return params.hash.h1_override(id, params.suite.q());
    return hash_to_scalar(params, HashTag::h1, {id});
}

Scalar h2(const SystemParams& params, const Bytes& m, const G1Elem& u) {
    if (params.hash.h2_override) return params.hash.h2_override(m, u, params.suite.q());
    return hash_to_scalar(params, HashTag::h2, {m, params.suite.g1_bytes(u)});
}

Scalar h3(const SystemParams& params, const Bytes& m, const G1Elem& u, const G2Elem& y) {
    if (params.hash.h3_override) return params.hash.h3_override(m, u, y, params.suite.q());
    return hash_to_scalar(params, HashTag::h3,
                          {m, params.suite.g1_bytes(u), params.suite.g2_bytes(y)});
}

KeyPair extract(const SystemParams& params, const MasterKey& master, const Identity& identity) {
    Scalar q_id = h1(params, identity);
    G1Elem s_id = params.suite.g1_mul(bn::mulm(master.s_inv, q_id, params.suite.q()),
                                      params.suite.generator());
    return KeyPair{identity, q_id, s_id};
}

}  // namespace sbdv

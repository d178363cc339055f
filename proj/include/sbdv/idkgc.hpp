#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "sbdv/pairing.hpp"
#include "sbdv/rng.hpp"

namespace sbdv {

enum class HashTag { h1 = 1, h2 = 2, h3 = 3 };

// Digest-based hash family onto Z_q^*: SHA-256 over
// tag || be32(len(part)) || part ..., reduced mod q, re-hashed with an
// appended counter byte while the result is zero.
//
// The h*_override hooks are test seams for reproducing hand-worked
// fixtures; production code leaves them empty.
struct HashFamily {
    std::array<std::string, 3> tags{"SBDV:H1", "SBDV:H2", "SBDV:H3"};
    std::function<Scalar(const Bytes& id, const Bigint& q)> h1_override;
    std::function<Scalar(const Bytes& m, const G1Elem& u, const Bigint& q)> h2_override;
    std::function<Scalar(const Bytes& m, const G1Elem& u, const G2Elem& y, const Bigint& q)> h3_override;
};

struct SystemParams {
    PairingSuite suite;
    G1Elem p_pub;
    HashFamily hash;
};

struct MasterKey {
    Scalar s;      // nonzero
    Scalar s_inv;  // s * s_inv = 1 (mod q)
};

struct Identity {
    std::string id;  // nonempty
};

struct KeyPair {
    Identity identity;
    Scalar q_id;   // H1(identity), nonzero
    G1Elem s_id;   // s^-1 * Q_ID * P
};

std::pair<SystemParams, MasterKey> setup(const PairingSuite& suite, ScalarRng& rng);
std::pair<SystemParams, MasterKey> setup(const PairingSuite& suite, const Bytes& seed);

/// Core hash op over pre-encoded parts; arity is 1/2/3 for H1/H2/H3.
Scalar hash_to_scalar(const SystemParams& params, HashTag tag, const std::vector<Bytes>& parts);

Scalar h1(const SystemParams& params, const Identity& identity);
Scalar h2(const SystemParams& params, const Bytes& m, const G1Elem& u);
Scalar h3(const SystemParams& params, const Bytes& m, const G1Elem& u, const G2Elem& y);

KeyPair extract(const SystemParams& params, const MasterKey& master, const Identity& identity);

}  // namespace sbdv

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sbdv/bn.hpp"

namespace sbdv {

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len);
std::array<std::uint8_t, 32> sha256(const Bytes& data);

/// Source of scalars for key material, nonces and polynomial coefficients.
class ScalarRng {
public:
    virtual ~ScalarRng() = default;
    /// Uniform in [1, q).
    virtual Bigint uniform_nonzero(const Bigint& q) = 0;
    /// Uniform in [0, q).
    virtual Bigint uniform(const Bigint& q) = 0;
};

// Deterministic byte stream: block i is SHA-256(seed || be64(i)).
class Drbg final : public ScalarRng {
public:
    explicit Drbg(Bytes seed);
    Drbg(const Bytes& seed, std::string_view label);

    Bytes bytes(std::size_t n);
    Bigint uniform(const Bigint& q) override;
    Bigint uniform_nonzero(const Bigint& q) override;

private:
    Bytes seed_;
    std::uint64_t block_ = 0;
    std::array<std::uint8_t, 32> buf_{};
    std::size_t pos_ = 32;
};

/// Test seam: replays a fixed list of scalars, throws when exhausted.
class FixedScalars final : public ScalarRng {
public:
    explicit FixedScalars(std::vector<Bigint> values) : values_(std::move(values)) {}
    Bigint uniform_nonzero(const Bigint& q) override;
    Bigint uniform(const Bigint& q) override;

private:
    std::vector<Bigint> values_;
    std::size_t next_ = 0;
};

}  // namespace sbdv

#include "sbdv/rng.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace sbdv {

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len) {
    std::array<std::uint8_t, 32> out{};
    unsigned int outlen = 0;
    if (EVP_Digest(data, len, out.data(), &outlen, EVP_sha256(), nullptr) != 1 || outlen != 32)
        throw std::runtime_error("sha256: digest failure");
    return out;
}

std::array<std::uint8_t, 32> sha256(const Bytes& data) {
    return sha256(data.data(), data.size());
}

Drbg::Drbg(Bytes seed) : seed_(std::move(seed)) {}

Drbg::Drbg(const Bytes& seed, std::string_view label) {
    seed_ = seed;
    seed_.push_back(0x1f);
    seed_.insert(seed_.end(), label.begin(), label.end());
}

Bytes Drbg::bytes(std::size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
        if (pos_ == buf_.size()) {
            Bytes block = seed_;
            for (int i = 7; i >= 0; --i)
                block.push_back(static_cast<std::uint8_t>(block_ >> (8 * i)));
            buf_ = sha256(block);
            pos_ = 0;
            ++block_;
        }
        out.push_back(buf_[pos_++]);
    }
    return out;
}

Bigint Drbg::uniform(const Bigint& q) {
    if (q <= 0) throw std::invalid_argument("Drbg::uniform: q must be positive");
    // 64 extra bits keep the mod-reduction bias negligible.
    const std::size_t width = bn::byte_width(q) + 8;
    return bn::mod(bn::from_bytes_be(bytes(width)), q);
}

Bigint Drbg::uniform_nonzero(const Bigint& q) {
    if (q <= 1) throw std::invalid_argument("Drbg::uniform_nonzero: q must exceed 1");
    const std::size_t width = bn::byte_width(q) + 8;
    Bigint r = bn::mod(bn::from_bytes_be(bytes(width)), q - 1);
    return r + 1;
}

Bigint FixedScalars::uniform_nonzero(const Bigint& q) {
    if (next_ >= values_.size()) throw std::runtime_error("FixedScalars: exhausted");
    Bigint v = bn::mod(values_[next_++], q);
    if (v == 0) throw std::runtime_error("FixedScalars: zero where nonzero required");
    return v;
}

Bigint FixedScalars::uniform(const Bigint& q) {
    if (next_ >= values_.size()) throw std::runtime_error("FixedScalars: exhausted");
    return bn::mod(values_[next_++], q);
}

}  // namespace sbdv

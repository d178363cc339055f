#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sbdv {

using Bigint = mpz_class;
using Bytes = std::vector<std::uint8_t>;

// Modular integer helpers on top of GMP. All results are canonical
// representatives in [0, m).
namespace bn {

Bigint mod(const Bigint& a, const Bigint& m);
Bigint addm(const Bigint& a, const Bigint& b, const Bigint& m);
Bigint subm(const Bigint& a, const Bigint& b, const Bigint& m);
Bigint mulm(const Bigint& a, const Bigint& b, const Bigint& m);
Bigint powm(const Bigint& base, const Bigint& exp, const Bigint& m);

/// Modular inverse; throws std::invalid_argument when gcd(a, m) != 1.
Bigint invmod(const Bigint& a, const Bigint& m);

bool is_prime(const Bigint& n);
Bigint next_prime(const Bigint& n);

std::size_t bit_length(const Bigint& n);
bool test_bit(const Bigint& n, std::size_t i);

/// Fixed-width big-endian encoding; throws if n < 0 or n needs more bytes.
Bytes to_bytes_be(const Bigint& n, std::size_t width);
Bigint from_bytes_be(const std::uint8_t* data, std::size_t len);
Bigint from_bytes_be(const Bytes& b);

/// Number of bytes needed to hold values in [0, n].
std::size_t byte_width(const Bigint& n);

std::string to_hex(const Bytes& b);
Bytes from_hex(std::string_view hex);

Bigint from_dec(const std::string& s);
std::string to_dec(const Bigint& n);

Bytes str_bytes(std::string_view s);

}  // namespace bn
}  // namespace sbdv

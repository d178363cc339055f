#include "sbdv/bn.hpp"

#include <gmp.h>

#include <stdexcept>

namespace sbdv::bn {

Bigint mod(const Bigint& a, const Bigint& m) {
    Bigint r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Bigint addm(const Bigint& a, const Bigint& b, const Bigint& m) { return mod(a + b, m); }
Bigint subm(const Bigint& a, const Bigint& b, const Bigint& m) { return mod(a - b, m); }
Bigint mulm(const Bigint& a, const Bigint& b, const Bigint& m) { return mod(a * b, m); }

Bigint powm(const Bigint& base, const Bigint& exp, const Bigint& m) {
    if (exp < 0) throw std::invalid_argument("powm: negative exponent");
    Bigint r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Bigint invmod(const Bigint& a, const Bigint& m) {
    Bigint r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("invmod: element not invertible");
    return r;
}

bool is_prime(const Bigint& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Bigint next_prime(const Bigint& n) {
    Bigint r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::size_t bit_length(const Bigint& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

bool test_bit(const Bigint& n, std::size_t i) {
    return mpz_tstbit(n.get_mpz_t(), i) != 0;
}

std::size_t byte_width(const Bigint& n) {
    return (bit_length(n) + 7) / 8;
}

Bytes to_bytes_be(const Bigint& n, std::size_t width) {
    if (n < 0) throw std::invalid_argument("to_bytes_be: negative value");
    const std::size_t need = (n == 0) ? 0 : (mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8;
    if (need > width) throw std::invalid_argument("to_bytes_be: value does not fit width");
    Bytes out(width, 0);
    if (n != 0) {
        std::size_t count = 0;
        mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, n.get_mpz_t());
    }
    return out;
}

Bigint from_bytes_be(const std::uint8_t* data, std::size_t len) {
    Bigint r;
    if (len > 0) mpz_import(r.get_mpz_t(), len, 1, 1, 1, 0, data);
    return r;
}

Bigint from_bytes_be(const Bytes& b) { return from_bytes_be(b.data(), b.size()); }

std::string to_hex(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(b.size() * 2);
    for (std::uint8_t c : b) {
        s.push_back(digits[c >> 4]);
        s.push_back(digits[c & 0xf]);
    }
    return s;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: invalid hex digit");
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((hex_nibble(hex[2 * i]) << 4) | hex_nibble(hex[2 * i + 1]));
    return out;
}

Bigint from_dec(const std::string& s) {
    Bigint r;
    if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("from_dec: not a decimal integer: " + s);
    return r;
}

std::string to_dec(const Bigint& n) { return n.get_str(10); }

Bytes str_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

}  // namespace sbdv::bn

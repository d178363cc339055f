#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "sbdv/bn.hpp"

namespace sbdv {

// Field-element scalars live in [0, q); contexts that need Z_q^* reject zero.
using Scalar = Bigint;

// Element of the additive group G1. Transparent backend: x carries the
// discrete log in [0, q), y unused. Curve backend: affine point on
// y^2 = x^3 + x over F_p, with `infinity` marking the identity.
struct G1Elem {
    Bigint x{0};
    Bigint y{0};
    bool infinity = false;

    friend bool operator==(const G1Elem& a, const G1Elem& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

// Element of the multiplicative group G2. Transparent backend: a holds a
// residue mod p, b unused. Curve backend: a + b*i in F_{p^2}, i^2 = -1.
struct G2Elem {
    Bigint a{1};
    Bigint b{0};

    friend bool operator==(const G2Elem& x, const G2Elem& y) {
        return x.a == y.a && x.b == y.b;
    }
};

struct TransparentSuiteParams {
    Bigint q;  // group order, prime
    Bigint p;  // field modulus, prime, q | p-1
    Bigint g;  // generator of the order-q subgroup of (Z/p)^*
};

struct CurveSuiteParams {
    Bigint p;  // field prime, p = 3 (mod 4)
    Bigint q;  // subgroup order, prime, q | p+1
};

enum class Backend { transparent, curve };

namespace detail {
class SuiteImpl;
}

// Symmetric (Type-1) pairing suite: G1 x G1 -> G2 with generator P of prime
// order q. Immutable after construction; all operations are const and safe
// to call concurrently.
class PairingSuite {
public:
    Backend backend() const;
    const Bigint& q() const;
    const G1Elem& generator() const;

    G1Elem g1_identity() const;
    G1Elem g1_add(const G1Elem& a, const G1Elem& b) const;
    G1Elem g1_neg(const G1Elem& a) const;
    G1Elem g1_mul(const Scalar& k, const G1Elem& a) const;
    bool g1_valid(const G1Elem& a) const;

    G2Elem g2_unit() const;
    G2Elem g2_mul(const G2Elem& a, const G2Elem& b) const;
    G2Elem g2_pow(const G2Elem& a, const Scalar& e) const;
    bool g2_valid(const G2Elem& a) const;

    /// e(A, B); bilinear and symmetric. Throws on elements outside the suite.
    G2Elem pair(const G1Elem& a, const G1Elem& b) const;

    /// Sum of c_i * X_i; the empty sequence yields the identity.
    G1Elem g1_lincomb(const std::vector<std::pair<Scalar, G1Elem>>& terms) const;
    /// Product of Z_i ^ c_i; the empty sequence yields the unit.
    G2Elem gt_prodpow(const std::vector<std::pair<G2Elem, Scalar>>& terms) const;

    // Canonical fixed-width big-endian encodings (inputs to H2/H3).
    std::size_t scalar_width() const;
    std::size_t g1_width() const;
    std::size_t g2_width() const;
    Bytes scalar_bytes(const Scalar& s) const;
    Bytes g1_bytes(const G1Elem& a) const;
    Bytes g2_bytes(const G2Elem& a) const;
    Scalar scalar_from_bytes(const Bytes& b) const;
    G1Elem g1_from_bytes(const Bytes& b) const;
    G2Elem g2_from_bytes(const Bytes& b) const;

    /// Transparent backend only: recover k from k*P exactly.
    bool has_dlog_oracle() const;
    Scalar dlog(const G1Elem& a) const;

    const TransparentSuiteParams* transparent_params() const;
    const CurveSuiteParams* curve_params() const;

private:
    friend PairingSuite make_transparent_suite(const Bigint& q, const Bigint& p, const Bigint& g);
    friend PairingSuite make_curve_suite(const CurveSuiteParams& params);
    explicit PairingSuite(std::shared_ptr<const detail::SuiteImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::SuiteImpl> impl_;
};

/// Discrete-log-transparent suite: G1 = (Z_q, +) with P = 1 and
/// e(a, b) = g^(a*b mod q) mod p. Used as the brute-force test oracle.
PairingSuite make_transparent_suite(const Bigint& q, const Bigint& p, const Bigint& g);
PairingSuite make_transparent_suite(const TransparentSuiteParams& params);

/// Supersingular-curve suite: reduced Tate pairing on y^2 = x^3 + x over F_p
/// composed with the distortion map (x, y) -> (-x, i*y).
PairingSuite make_curve_suite(const CurveSuiteParams& params);

/// Hand-auditable parameters q=11, p=23, g=2.
TransparentSuiteParams transparent_desk_params();

/// Smallest prime q >= 2^(qbits-1) with 2q+1 prime; g = 4 generates the
/// order-q subgroup of the safe-prime field.
TransparentSuiteParams find_transparent_params(unsigned qbits);

/// Smallest prime q >= 2^(qbits-1) together with the first c in 4, 8, 12, ...
/// making p = c*q - 1 prime (p = 3 mod 4 holds for every such c).
CurveSuiteParams find_curve_params(unsigned qbits);

}  // namespace sbdv

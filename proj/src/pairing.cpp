#include "sbdv/pairing.hpp"

#include <stdexcept>

namespace sbdv {

namespace detail {

class SuiteImpl {
public:
    virtual ~SuiteImpl() = default;

    virtual Backend backend() const = 0;
    virtual const Bigint& q() const = 0;
    virtual const G1Elem& generator() const = 0;

    virtual G1Elem g1_identity() const = 0;
    virtual G1Elem g1_add(const G1Elem& a, const G1Elem& b) const = 0;
    virtual G1Elem g1_neg(const G1Elem& a) const = 0;
    virtual G1Elem g1_mul(const Scalar& k, const G1Elem& a) const = 0;
    virtual bool g1_valid(const G1Elem& a) const = 0;

    virtual G2Elem g2_unit() const = 0;
    virtual G2Elem g2_mul(const G2Elem& a, const G2Elem& b) const = 0;
    virtual G2Elem g2_pow(const G2Elem& a, const Scalar& e) const = 0;
    virtual bool g2_valid(const G2Elem& a) const = 0;

    virtual G2Elem pair(const G1Elem& a, const G1Elem& b) const = 0;

    virtual std::size_t scalar_width() const = 0;
    virtual std::size_t g1_width() const = 0;
    virtual std::size_t g2_width() const = 0;
    virtual Bytes g1_bytes(const G1Elem& a) const = 0;
    virtual Bytes g2_bytes(const G2Elem& a) const = 0;
    virtual G1Elem g1_from_bytes(const Bytes& b) const = 0;
    virtual G2Elem g2_from_bytes(const Bytes& b) const = 0;

    virtual const TransparentSuiteParams* transparent_params() const { return nullptr; }
    virtual const CurveSuiteParams* curve_params() const { return nullptr; }
    virtual Scalar dlog(const G1Elem&) const {
        throw std::logic_error("dlog oracle: only the transparent backend exposes discrete logs");
    }
};

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// Transparent backend: G1 = (Z_q, +), G2 = order-q subgroup of (Z_p)^*,
// e(a, b) = g^(a*b). Every G1 element is its own discrete log.

class TransparentSuite final : public SuiteImpl {
public:
    explicit TransparentSuite(TransparentSuiteParams params) : params_(std::move(params)) {
        require(bn::is_prime(params_.q), "transparent suite: q is not prime");
        require(bn::is_prime(params_.p), "transparent suite: p is not prime");
        require(bn::mod(params_.p - 1, params_.q) == 0, "transparent suite: q does not divide p-1");
        require(params_.g > 1 && params_.g < params_.p && bn::powm(params_.g, params_.q, params_.p) == 1,
                "transparent suite: g does not have order q");
        gen_.x = 1;
    }

    Backend backend() const override { return Backend::transparent; }
    const Bigint& q() const override { return params_.q; }
    const G1Elem& generator() const override { return gen_; }
    const TransparentSuiteParams* transparent_params() const override { return &params_; }

    G1Elem g1_identity() const override { return G1Elem{}; }

    G1Elem g1_add(const G1Elem& a, const G1Elem& b) const override {
        check_g1(a);
        check_g1(b);
        return G1Elem{bn::addm(a.x, b.x, params_.q), 0, false};
    }

    G1Elem g1_neg(const G1Elem& a) const override {
        check_g1(a);
        return G1Elem{bn::mod(-a.x, params_.q), 0, false};
    }

    G1Elem g1_mul(const Scalar& k, const G1Elem& a) const override {
        check_g1(a);
        return G1Elem{bn::mulm(bn::mod(k, params_.q), a.x, params_.q), 0, false};
    }

    bool g1_valid(const G1Elem& a) const override {
        return !a.infinity && a.y == 0 && a.x >= 0 && a.x < params_.q;
    }

    G2Elem g2_unit() const override { return G2Elem{1, 0}; }

    G2Elem g2_mul(const G2Elem& a, const G2Elem& b) const override {
        check_g2(a);
        check_g2(b);
        return G2Elem{bn::mulm(a.a, b.a, params_.p), 0};
    }

    G2Elem g2_pow(const G2Elem& a, const Scalar& e) const override {
        check_g2(a);
        return G2Elem{bn::powm(a.a, bn::mod(e, params_.q), params_.p), 0};
    }

    bool g2_valid(const G2Elem& a) const override {
        return a.b == 0 && a.a > 0 && a.a < params_.p && bn::powm(a.a, params_.q, params_.p) == 1;
    }

    G2Elem pair(const G1Elem& a, const G1Elem& b) const override {
        check_g1(a);
        check_g1(b);
        return G2Elem{bn::powm(params_.g, bn::mulm(a.x, b.x, params_.q), params_.p), 0};
    }

    Scalar dlog(const G1Elem& a) const override {
        check_g1(a);
        return a.x;
    }

    std::size_t scalar_width() const override { return bn::byte_width(params_.q); }
    std::size_t g1_width() const override { return bn::byte_width(params_.q); }
    std::size_t g2_width() const override { return bn::byte_width(params_.p); }

    Bytes g1_bytes(const G1Elem& a) const override {
        check_g1(a);
        return bn::to_bytes_be(a.x, g1_width());
    }

    Bytes g2_bytes(const G2Elem& a) const override {
        check_g2(a);
        return bn::to_bytes_be(a.a, g2_width());
    }

    G1Elem g1_from_bytes(const Bytes& b) const override {
        require(b.size() == g1_width(), "g1_from_bytes: wrong length");
        G1Elem e{bn::from_bytes_be(b), 0, false};
        require(g1_valid(e), "g1_from_bytes: value out of range");
        return e;
    }

    G2Elem g2_from_bytes(const Bytes& b) const override {
        require(b.size() == g2_width(), "g2_from_bytes: wrong length");
        G2Elem e{bn::from_bytes_be(b), 0};
        require(g2_valid(e), "g2_from_bytes: not in the order-q subgroup");
        return e;
    }

private:
    void check_g1(const G1Elem& a) const {
        require(g1_valid(a), "transparent suite: element not in G1");
    }
    void check_g2(const G2Elem& a) const {
        require(g2_valid(a), "transparent suite: element not in G2");
    }

    TransparentSuiteParams params_;
    G1Elem gen_;
};

// ---------------------------------------------------------------------------
// Curve backend: E : y^2 = x^3 + x over F_p with p = 3 (mod 4), #E = p+1,
// G1 the order-q subgroup. e(A, B) is the reduced Tate pairing of A against
// the distorted point (-x_B, i*y_B) in E(F_{p^2}), computed with Miller's
// algorithm; vertical lines are omitted since their values lie in F_p and
// the final exponentiation (p^2-1)/q annihilates F_p^*.

struct Fp2 {
    Bigint a, b;  // a + b*i
};

class CurveSuite final : public SuiteImpl {
public:
    explicit CurveSuite(CurveSuiteParams params) : params_(std::move(params)) {
        require(bn::is_prime(params_.p), "curve suite: p is not prime");
        require(bn::is_prime(params_.q), "curve suite: q is not prime");
        require(bn::mod(params_.p, 4) == 3, "curve suite: p != 3 (mod 4)");
        require(bn::mod(params_.p + 1, params_.q) == 0, "curve suite: q does not divide p+1");
        cofactor_ = (params_.p + 1) / params_.q;
        gen_ = derive_base_point();
        base_pairing_ = pair(gen_, gen_);
        require(!(base_pairing_ == G2Elem{1, 0}), "curve suite: degenerate pairing at the base point");
    }

    Backend backend() const override { return Backend::curve; }
    const Bigint& q() const override { return params_.q; }
    const G1Elem& generator() const override { return gen_; }
    const CurveSuiteParams* curve_params() const override { return &params_; }

    G1Elem g1_identity() const override {
        G1Elem e;
        e.infinity = true;
        return e;
    }

    G1Elem g1_add(const G1Elem& a, const G1Elem& b) const override {
        check_g1(a);
        check_g1(b);
        return add_raw(a, b);
    }

    G1Elem g1_neg(const G1Elem& a) const override {
        check_g1(a);
        if (a.infinity) return a;
        return G1Elem{a.x, bn::mod(-a.y, params_.p), false};
    }

    G1Elem g1_mul(const Scalar& k, const G1Elem& a) const override {
        check_g1(a);
        return mul_raw(bn::mod(k, params_.q), a);
    }

    bool g1_valid(const G1Elem& a) const override {
        if (a.infinity) return true;
        if (a.x < 0 || a.x >= params_.p || a.y < 0 || a.y >= params_.p) return false;
        if (!on_curve(a)) return false;
        return mul_raw(params_.q, a).infinity;
    }

    G2Elem g2_unit() const override { return G2Elem{1, 0}; }

    G2Elem g2_mul(const G2Elem& x, const G2Elem& y) const override {
        check_g2(x);
        check_g2(y);
        Fp2 r = fp2_mul({x.a, x.b}, {y.a, y.b});
        return G2Elem{r.a, r.b};
    }

    G2Elem g2_pow(const G2Elem& x, const Scalar& e) const override {
        check_g2(x);
        Fp2 r = fp2_pow({x.a, x.b}, bn::mod(e, params_.q));
        return G2Elem{r.a, r.b};
    }

    bool g2_valid(const G2Elem& x) const override {
        if (x.a < 0 || x.a >= params_.p || x.b < 0 || x.b >= params_.p) return false;
        if (x.a == 0 && x.b == 0) return false;
        Fp2 r = fp2_pow({x.a, x.b}, params_.q);
        return r.a == 1 && r.b == 0;
    }

    G2Elem pair(const G1Elem& a, const G1Elem& b) const override {
        check_g1(a);
        check_g1(b);
        if (a.infinity || b.infinity) return g2_unit();
        // Distorted second argument: x in F_p, y purely imaginary.
        const Bigint xq = bn::mod(-b.x, params_.p);
        const Bigint yq_im = b.y;
        Fp2 f{1, 0};
        G1Elem t = a;
        const std::size_t bits = bn::bit_length(params_.q);
        for (std::size_t i = bits - 1; i-- > 0;) {
            f = fp2_mul(fp2_sqr(f), line(t, t, xq, yq_im));
            t = add_raw(t, t);
            if (bn::test_bit(params_.q, i)) {
                f = fp2_mul(f, line(t, a, xq, yq_im));
                t = add_raw(t, a);
            }
        }
        // t = q*A = O here; the last chord was the vertical through A.
        Fp2 r = final_exp(f);
        return G2Elem{r.a, r.b};
    }

    std::size_t scalar_width() const override { return bn::byte_width(params_.q); }
    std::size_t g1_width() const override { return 2 * bn::byte_width(params_.p); }
    std::size_t g2_width() const override { return 2 * bn::byte_width(params_.p); }

    Bytes g1_bytes(const G1Elem& a) const override {
        check_g1(a);
        const std::size_t w = bn::byte_width(params_.p);
        // (0, 0) has order 2 and never lies in G1, so all-zero bytes are free
        // to encode the identity.
        if (a.infinity) return Bytes(2 * w, 0);
        Bytes out = bn::to_bytes_be(a.x, w);
        Bytes ys = bn::to_bytes_be(a.y, w);
        out.insert(out.end(), ys.begin(), ys.end());
        return out;
    }

    Bytes g2_bytes(const G2Elem& x) const override {
        check_g2(x);
        const std::size_t w = bn::byte_width(params_.p);
        Bytes out = bn::to_bytes_be(x.a, w);
        Bytes bs = bn::to_bytes_be(x.b, w);
        out.insert(out.end(), bs.begin(), bs.end());
        return out;
    }

    G1Elem g1_from_bytes(const Bytes& b) const override {
        require(b.size() == g1_width(), "g1_from_bytes: wrong length");
        const std::size_t w = bn::byte_width(params_.p);
        G1Elem e{bn::from_bytes_be(b.data(), w), bn::from_bytes_be(b.data() + w, w), false};
        if (e.x == 0 && e.y == 0) return g1_identity();
        require(e.x < params_.p && e.y < params_.p && on_curve(e), "g1_from_bytes: point not on curve");
        require(mul_raw(params_.q, e).infinity, "g1_from_bytes: point not in the order-q subgroup");
        return e;
    }

    G2Elem g2_from_bytes(const Bytes& b) const override {
        require(b.size() == g2_width(), "g2_from_bytes: wrong length");
        const std::size_t w = bn::byte_width(params_.p);
        G2Elem e{bn::from_bytes_be(b.data(), w), bn::from_bytes_be(b.data() + w, w)};
        require(g2_valid(e), "g2_from_bytes: not in the order-q subgroup");
        return e;
    }

private:
    // --- F_p helpers -------------------------------------------------------
    Bigint fp_inv(const Bigint& a) const { return bn::invmod(a, params_.p); }

    bool on_curve(const G1Elem& a) const {
        Bigint lhs = bn::mulm(a.y, a.y, params_.p);
        Bigint rhs = bn::addm(bn::mulm(bn::mulm(a.x, a.x, params_.p), a.x, params_.p), a.x, params_.p);
        return lhs == rhs;
    }

    void check_g1(const G1Elem& a) const {
        if (a.infinity) return;
        require(a.x >= 0 && a.x < params_.p && a.y >= 0 && a.y < params_.p && on_curve(a),
                "curve suite: point not on curve");
        require(mul_raw(params_.q, a).infinity, "curve suite: point not in the order-q subgroup");
    }

    void check_g2(const G2Elem& x) const {
        require(g2_valid(x), "curve suite: element not in G2");
    }

    // --- group law (affine, no subgroup checks) ----------------------------
    G1Elem add_raw(const G1Elem& a, const G1Elem& b) const {
        if (a.infinity) return b;
        if (b.infinity) return a;
        const Bigint& p = params_.p;
        Bigint lambda;
        if (a.x == b.x) {
            if (bn::addm(a.y, b.y, p) == 0) return g1_identity();
            // tangent: (3x^2 + 1) / 2y
            Bigint num = bn::addm(bn::mulm(3, bn::mulm(a.x, a.x, p), p), 1, p);
            lambda = bn::mulm(num, fp_inv(bn::mulm(2, a.y, p)), p);
        } else {
            lambda = bn::mulm(bn::subm(b.y, a.y, p), fp_inv(bn::subm(b.x, a.x, p)), p);
        }
        Bigint x3 = bn::subm(bn::subm(bn::mulm(lambda, lambda, p), a.x, p), b.x, p);
        Bigint y3 = bn::subm(bn::mulm(lambda, bn::subm(a.x, x3, p), p), a.y, p);
        return G1Elem{x3, y3, false};
    }

    G1Elem mul_raw(const Bigint& k, const G1Elem& a) const {
        G1Elem acc = g1_identity();
        if (k == 0 || a.infinity) return acc;
        const std::size_t bits = bn::bit_length(k);
        for (std::size_t i = bits; i-- > 0;) {
            acc = add_raw(acc, acc);
            if (bn::test_bit(k, i)) acc = add_raw(acc, a);
        }
        return acc;
    }

    // --- F_{p^2} = F_p[i]/(i^2+1) ------------------------------------------
    Fp2 fp2_mul(const Fp2& x, const Fp2& y) const {
        const Bigint& p = params_.p;
        return Fp2{bn::subm(bn::mulm(x.a, y.a, p), bn::mulm(x.b, y.b, p), p),
                   bn::addm(bn::mulm(x.a, y.b, p), bn::mulm(x.b, y.a, p), p)};
    }

    Fp2 fp2_sqr(const Fp2& x) const { return fp2_mul(x, x); }

    Fp2 fp2_inv(const Fp2& x) const {
        const Bigint& p = params_.p;
        Bigint norm = bn::addm(bn::mulm(x.a, x.a, p), bn::mulm(x.b, x.b, p), p);
        Bigint ninv = fp_inv(norm);
        return Fp2{bn::mulm(x.a, ninv, p), bn::mulm(bn::mod(-x.b, p), ninv, p)};
    }

    Fp2 fp2_pow(const Fp2& x, const Bigint& e) const {
        Fp2 acc{1, 0};
        const std::size_t bits = bn::bit_length(e);
        for (std::size_t i = bits; i-- > 0;) {
            acc = fp2_sqr(acc);
            if (bn::test_bit(e, i)) acc = fp2_mul(acc, x);
        }
        return acc;
    }

    // Line through t and u (tangent when t == u), evaluated at the distorted
    // point (xq, yq_im * i). Vertical lines evaluate to an F_p value, which
    // the final exponentiation maps to 1.
    Fp2 line(const G1Elem& t, const G1Elem& u, const Bigint& xq, const Bigint& yq_im) const {
        const Bigint& p = params_.p;
        if (t.x == u.x && bn::addm(t.y, u.y, p) == 0) {
            return Fp2{bn::subm(xq, t.x, p), 0};
        }
        Bigint lambda;
        if (t.x == u.x) {
            Bigint num = bn::addm(bn::mulm(3, bn::mulm(t.x, t.x, p), p), 1, p);
            lambda = bn::mulm(num, fp_inv(bn::mulm(2, t.y, p)), p);
        } else {
            lambda = bn::mulm(bn::subm(u.y, t.y, p), fp_inv(bn::subm(u.x, t.x, p)), p);
        }
        Bigint re = bn::subm(bn::mod(-t.y, p), bn::mulm(lambda, bn::subm(xq, t.x, p), p), p);
        return Fp2{re, yq_im};
    }

    // z -> z^((p^2-1)/q) as (conj(z) * z^-1)^((p+1)/q).
    Fp2 final_exp(const Fp2& z) const {
        Fp2 conj{z.a, bn::mod(-z.b, params_.p)};
        Fp2 unipotent = fp2_mul(conj, fp2_inv(z));
        return fp2_pow(unipotent, cofactor_);
    }

    G1Elem derive_base_point() const {
        const Bigint& p = params_.p;
        const Bigint sqrt_exp = (p + 1) / 4;
        for (Bigint x = 1; x < p; ++x) {
            Bigint rhs = bn::addm(bn::mulm(bn::mulm(x, x, p), x, p), x, p);
            if (rhs == 0) continue;
            Bigint y = bn::powm(rhs, sqrt_exp, p);
            if (bn::mulm(y, y, p) != rhs) continue;  // non-residue
            G1Elem candidate = mul_raw(cofactor_, G1Elem{x, y, false});
            if (!candidate.infinity) return candidate;
        }
        throw std::invalid_argument("curve suite: no base point of order q found");
    }

    CurveSuiteParams params_;
    Bigint cofactor_;
    G1Elem gen_;
    G2Elem base_pairing_;
};

}  // namespace
}  // namespace detail

Backend PairingSuite::backend() const { return impl_->backend(); }
const Bigint& PairingSuite::q() const { return impl_->q(); }
const G1Elem& PairingSuite::generator() const { return impl_->generator(); }
G1Elem PairingSuite::g1_identity() const { return impl_->g1_identity(); }
G1Elem PairingSuite::g1_add(const G1Elem& a, const G1Elem& b) const { return impl_->g1_add(a, b); }
G1Elem PairingSuite::g1_neg(const G1Elem& a) const { return impl_->g1_neg(a); }
G1Elem PairingSuite::g1_mul(const Scalar& k, const G1Elem& a) const { return impl_->g1_mul(k, a); }
bool PairingSuite::g1_valid(const G1Elem& a) const { return impl_->g1_valid(a); }
G2Elem PairingSuite::g2_unit() const { return impl_->g2_unit(); }
G2Elem PairingSuite::g2_mul(const G2Elem& a, const G2Elem& b) const { return impl_->g2_mul(a, b); }
G2Elem PairingSuite::g2_pow(const G2Elem& a, const Scalar& e) const { return impl_->g2_pow(a, e); }
bool PairingSuite::g2_valid(const G2Elem& a) const { return impl_->g2_valid(a); }
G2Elem PairingSuite::pair(const G1Elem& a, const G1Elem& b) const { return impl_->pair(a, b); }

G1Elem PairingSuite::g1_lincomb(const std::vector<std::pair<Scalar, G1Elem>>& terms) const {
    G1Elem acc = impl_->g1_identity();
    for (const auto& [c, x] : terms) acc = impl_->g1_add(acc, impl_->g1_mul(c, x));
    return acc;
}

G2Elem PairingSuite::gt_prodpow(const std::vector<std::pair<G2Elem, Scalar>>& terms) const {
    G2Elem acc = impl_->g2_unit();
    for (const auto& [z, c] : terms) acc = impl_->g2_mul(acc, impl_->g2_pow(z, c));
    return acc;
}

std::size_t PairingSuite::scalar_width() const { return impl_->scalar_width(); }
std::size_t PairingSuite::g1_width() const { return impl_->g1_width(); }
std::size_t PairingSuite::g2_width() const { return impl_->g2_width(); }

Bytes PairingSuite::scalar_bytes(const Scalar& s) const {
    return bn::to_bytes_be(bn::mod(s, impl_->q()), impl_->scalar_width());
}

Bytes PairingSuite::g1_bytes(const G1Elem& a) const { return impl_->g1_bytes(a); }
Bytes PairingSuite::g2_bytes(const G2Elem& a) const { return impl_->g2_bytes(a); }

Scalar PairingSuite::scalar_from_bytes(const Bytes& b) const {
    if (b.size() != impl_->scalar_width()) throw std::invalid_argument("scalar_from_bytes: wrong length");
    Scalar s = bn::from_bytes_be(b);
    if (s >= impl_->q()) throw std::invalid_argument("scalar_from_bytes: value out of range");
    return s;
}

G1Elem PairingSuite::g1_from_bytes(const Bytes& b) const { return impl_->g1_from_bytes(b); }
G2Elem PairingSuite::g2_from_bytes(const Bytes& b) const { return impl_->g2_from_bytes(b); }

bool PairingSuite::has_dlog_oracle() const { return impl_->backend() == Backend::transparent; }
Scalar PairingSuite::dlog(const G1Elem& a) const { return impl_->dlog(a); }

const TransparentSuiteParams* PairingSuite::transparent_params() const { return impl_->transparent_params(); }
const CurveSuiteParams* PairingSuite::curve_params() const { return impl_->curve_params(); }

PairingSuite make_transparent_suite(const Bigint& q, const Bigint& p, const Bigint& g) {
    return PairingSuite(std::make_shared<detail::TransparentSuite>(TransparentSuiteParams{q, p, g}));
}

PairingSuite make_transparent_suite(const TransparentSuiteParams& params) {
    return make_transparent_suite(params.q, params.p, params.g);
}

PairingSuite make_curve_suite(const CurveSuiteParams& params) {
    return PairingSuite(std::make_shared<detail::CurveSuite>(params));
}

TransparentSuiteParams transparent_desk_params() {
    return TransparentSuiteParams{11, 23, 2};
}

TransparentSuiteParams find_transparent_params(unsigned qbits) {
    if (qbits < 3) throw std::invalid_argument("find_transparent_params: qbits too small");
    Bigint q = bn::next_prime(Bigint(1) << (qbits - 1));
    while (!bn::is_prime(2 * q + 1)) q = bn::next_prime(q);
    // 4 = 2^2 is a square, hence lands in the index-2 subgroup of order q.
    return TransparentSuiteParams{q, 2 * q + 1, 4};
}

CurveSuiteParams find_curve_params(unsigned qbits) {
    if (qbits < 4) throw std::invalid_argument("find_curve_params: qbits too small");
    Bigint q = bn::next_prime(Bigint(1) << (qbits - 1));
    for (Bigint c = 4;; c += 4) {
        Bigint p = c * q - 1;
        if (bn::is_prime(p)) return CurveSuiteParams{p, q};
    }
}

}  // namespace sbdv
